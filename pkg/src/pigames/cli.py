"""Command-line front end.

Exit codes: 0 when everything requested passes, 1 when a verdict fails,
2 for usage, validation or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import axioms as ax
from .allocation import essential_players, in_core, owen_point, pmas
from .constructions import NotAVetoGame, sum_situations, veto_game_to_situation
from .lp import lp_value
from .model import (
    SituationError,
    coalition_key,
    coalitions,
    format_fraction,
    game_to_dict,
    members,
    parse_coalition,
    read_game,
    read_situation,
    to_fraction,
    allocation,
    write_situation,
)
from .solver import (
    OracleTooLarge,
    aggregate,
    build_game,
    char_value,
    dual_solution,
    oracle_cost,
    primal_plan,
)

OK, FAILED, USAGE = 0, 1, 2

F = format_fraction


class UsageError(Exception):
    pass


def _fracs(values):
    return [F(v) for v in values]


def _names(players, S):
    return "{" + ",".join(str(players[i]) for i in members(S)) + "}"


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def cmd_solve(args):
    sit = read_situation(args.situation)
    S = parse_coalition(args.coalition, sit.n) if args.coalition else sit.grand
    params = aggregate(sit, S)
    plan = primal_plan(sit, S)
    value = char_value(sit, S)
    y = dual_solution(sit, S)
    data = {
        "coalition": coalition_key(S),
        "value": F(value),
        "dual": _fracs(y),
        "plan": {
            "production": list(plan.production),
            "inventory": list(plan.inventory),
            "backlog": list(plan.backlog),
            "cost": F(plan.cost(params)),
        },
    }
    text = "\n".join([
        f"coalition {_names(sit.players, S)}",
        f"c(S) = {F(value)}",
        f"y*(S) = ({', '.join(_fracs(y))})",
        f"production = {list(plan.production)}",
        f"inventory = {list(plan.inventory)}",
        f"backlog = {list(plan.backlog)}",
        f"plan cost = {F(plan.cost(params))}",
    ])
    _emit(args, data, text)
    return OK


def cmd_game(args):
    sit = read_situation(args.situation)
    game = build_game(sit)
    text = "\n".join(f"{_names(sit.players, S):<24} {F(game(S))}" for S in coalitions(sit.n))
    _emit(args, game_to_dict(game), text)
    return OK


def cmd_owen(args):
    sit = read_situation(args.situation)
    o = owen_point(sit)
    _emit(args, {"players": list(o.players), "owen": _fracs(o)}, str(o))
    return OK


def cmd_core(args):
    sit = read_situation(args.situation)
    try:
        amounts = [to_fraction(a) for a in args.alloc.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad allocation {args.alloc!r}") from None
    if len(amounts) != sit.n:
        raise UsageError(f"allocation has {len(amounts)} entries, situation has {sit.n} players")
    x = allocation(sit.players, amounts)
    verdict = in_core(build_game(sit), x)
    if verdict:
        text = "in core"
        data = {"in_core": True, "violation": None}
    else:
        text = f"not in core: coalition {_names(sit.players, verdict.violation)} is violated"
        data = {"in_core": False, "violation": coalition_key(verdict.violation)}
    _emit(args, data, text)
    return OK if verdict else FAILED


def cmd_pmas(args):
    sit = read_situation(args.situation)
    scheme = pmas(sit)
    game = build_game(sit)
    bad = scheme.violations(game, limit=None)
    lines = [
        f"{_names(sit.players, S):<24} " + ", ".join(f"{p}: {F(a)}" for p, a in zip(scheme.scheme[S].players, scheme.scheme[S]))
        for S in coalitions(sit.n)
    ]
    lines.append("monotone and efficient" if not bad else f"{len(bad)} violations, first: {bad[0]}")
    data = {
        "players": list(sit.players),
        "scheme": {coalition_key(S): _fracs(scheme.scheme[S]) for S in coalitions(sit.n)},
        "valid": not bad,
    }
    _emit(args, data, "\n".join(lines))
    return OK if not bad else FAILED


def cmd_essential(args):
    sit = read_situation(args.situation)
    report = essential_players(sit)
    ess = [p for p in sit.players if p in report.essential]
    data = {
        "essential": ess,
        "witness_periods": {str(p): report.witnesses[p] for p in ess},
        "core_is_owen_point": report.all_inessential,
    }
    if ess:
        text = "\n".join(f"{p}: essential (period {report.witnesses[p]})" for p in ess)
        text += "\ncore is larger than the Owen point"
    else:
        text = "no essential players; the core is the Owen point"
    _emit(args, data, text)
    return OK


def cmd_combine(args):
    first = read_situation(args.first)
    second = read_situation(args.second)
    try:
        combined = sum_situations(first, second)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_situation(combined, args.output)
    lhs = build_game(combined)
    ok = lhs == build_game(first) + build_game(second)
    _emit(args, {"output": args.output, "T": combined.horizon, "sum_matches": ok},
          f"wrote {args.output} (T = {combined.horizon}); game equals the sum: {'yes' if ok else 'NO'}")
    return OK if ok else FAILED


def cmd_from_veto(args):
    game = read_game(args.game)
    try:
        sit = veto_game_to_situation(game)
    except NotAVetoGame as exc:
        raise UsageError(str(exc)) from None
    write_situation(sit, args.output)
    ok = build_game(sit) == game
    _emit(args, {"output": args.output, "T": sit.horizon, "round_trip": ok},
          f"wrote {args.output} (T = {sit.horizon}); rebuilt game equals input: {'yes' if ok else 'NO'}")
    return OK if ok else FAILED


def cmd_axioms(args):
    sit = read_situation(args.situation)
    rules = None
    if args.rule:
        try:
            rules = [ax.get_rule(args.rule)]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    report = ax.characterization_suite(sit, rules, seed=args.seed)
    _emit(args, report.to_dict(), report.to_text())
    return OK if report.passed else FAILED


def cmd_verify(args):
    sit = read_situation(args.situation)
    total = 0
    agree = 0
    beyond = []
    mismatches = []
    rows = []
    for S in coalitions(sit.n):
        total += 1
        closed = char_value(sit, S)
        lp = lp_value(sit, S)
        try:
            brute = oracle_cost(sit, S, max_units=args.max_oracle_units)
        except OracleTooLarge:
            brute = None
        rows.append({"coalition": coalition_key(S), "closed_form": F(closed), "lp": F(lp),
                     "oracle": None if brute is None else F(brute)})
        if closed != lp or (brute is not None and brute != closed):
            mismatches.append(S)
        elif brute is None:
            beyond.append(S)
        else:
            agree += 1
    lines = [f"{agree}/{total} coalitions: closed-form = oracle = LP"]
    if beyond:
        lines.append(f"{len(beyond)} beyond the oracle guard: closed-form = LP")
    for S in mismatches:
        lines.append(f"MISMATCH at {_names(sit.players, S)}")
    ok = not mismatches
    _emit(args, {"coalitions": rows, "agree": agree, "beyond_guard": len(beyond),
                 "mismatches": [coalition_key(S) for S in mismatches], "passed": ok},
          "\n".join(lines))
    return OK if ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--max-oracle-units", type=int, default=12,
                        help="largest total demand the brute-force oracle enumerates")

    parser = argparse.ArgumentParser(prog="pigames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("solve", cmd_solve, "coalition cost, dual prices and a production plan")
    p.add_argument("situation")
    p.add_argument("--coalition", help="1-based player indices, e.g. 1,3 (default: all)")
    add("game", cmd_game, "full characteristic function").add_argument("situation")
    add("owen", cmd_owen, "Owen point").add_argument("situation")
    p = add("core", cmd_core, "test an allocation for core membership")
    p.add_argument("situation")
    p.add_argument("--alloc", required=True, help="comma-separated shares, e.g. 1,2 or 1/2,5/2")
    add("pmas", cmd_pmas, "dual-price allocation scheme and its validity").add_argument("situation")
    add("essential", cmd_essential, "essential players").add_argument("situation")
    p = add("combine", cmd_combine, "situation whose game is the sum of two games")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", required=True)
    p = add("from-veto", cmd_from_veto, "situation realising a 0-monotone simple veto game")
    p.add_argument("game")
    p.add_argument("-o", "--output", required=True)
    p = add("axioms", cmd_axioms, "axiom verdicts for the built-in rules")
    p.add_argument("situation")
    p.add_argument("--rule", help="restrict to one rule: " + ", ".join(r.name for r in ax.builtin_rules()))
    add("verify", cmd_verify, "closed form vs brute force vs LP on every coalition").add_argument("situation")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            return args.func(args)
    except (SituationError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
