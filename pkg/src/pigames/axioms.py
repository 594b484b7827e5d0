"""Solution rules on situations and checkers for the eight allocation axioms.

A rule maps a situation to a finite tuple of allocations (possibly empty).
Each ``check_*`` returns an :class:`AxiomVerdict`; a failing verdict carries a
witness that can be re-checked by hand.

Axioms: EF efficiency, NE nonemptiness, PO positivity, IR individual
rationality, IE inessentiality, AP additivity of players' demands, PM
population monotonicity, AN anonymity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Any, Callable, Mapping, Sequence

from . import instances
from .allocation import essential_players, owen_point
from .constructions import shapley
from .lp import EQ, LE, make_lp, solve_lp
from .model import (
    Allocation,
    PISituation,
    coalitions,
    format_fraction,
    members,
    restrict,
)
from .solver import build_game, char_value

AXIOMS = ("EF", "NE", "PO", "IR", "IE", "AP", "PM", "AN")
CORE_SIX = AXIOMS[:6]


@dataclass(frozen=True)
class SolutionRule:
    name: str
    evaluate: Callable[[PISituation], tuple[Allocation, ...]]
    description: str = ""

    def __call__(self, sit: PISituation) -> tuple[Allocation, ...]:
        out = []
        for a in self.evaluate(sit):
            if a.players != sit.players:
                raise ValueError(f"rule {self.name} returned an allocation over the wrong players")
            if a not in out:
                out.append(a)
        return tuple(out)


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    witness: str | None = None

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "passed": self.passed, "witness": self.witness}


def _fmt(y: Allocation) -> str:
    return "(" + ", ".join(format_fraction(a) for a in y) + ")"


def _set_name(sit: PISituation, S: int) -> str:
    return "{" + ",".join(str(sit.players[i]) for i in members(S)) + "}"


# --------------------------------------------------------------------------
# rules


def _owen(sit):
    return (owen_point(sit),)


def _equal_split(sit):
    owen = owen_point(sit)
    if sit.n == 2 and sit.horizon == 2:
        grand = char_value(sit, sit.grand)
        if all(grand <= char_value(sit, 1 << i) for i in range(2)):
            return (Allocation(sit.players, (grand / 2, grand / 2)), owen)
    return (owen,)


def _dump(sit):
    rest = (Fraction(0),) * (sit.n - 1)
    return (Allocation(sit.players, (char_value(sit, sit.grand), *rest)),)


def _rebate(sit):
    if sit.n == 2 and sit.horizon == 1:
        (p1,), (p2,) = sit.production
        (d1,), (d2,) = sit.demand
        if p1 < p2:
            return (Allocation(sit.players, (p1 * d1 + (p1 - p2) * d2, p2 * d2)),)
    return (owen_point(sit),)


def _zero(sit):
    return (Allocation(sit.players, (Fraction(0),) * sit.n),)


def _empty(sit):
    return ()


def _shapley(sit):
    return (shapley(build_game(sit)),)


OWEN = SolutionRule("owen", _owen, "Owen point")
EQUAL_SPLIT = SolutionRule(
    "equal-split",
    _equal_split,
    "adds (c(N)/2, c(N)/2) when |N| = T = 2 and c(N) <= c({i}) for all i; else Owen",
)
DUMP = SolutionRule("dump", _dump, "(c(N), 0, ..., 0)")
REBATE = SolutionRule(
    "rebate",
    _rebate,
    "(p1 d1 + (p1 - p2) d2, p2 d2) when |N| = 2, T = 1, p1 < p2; else Owen",
)
ZERO = SolutionRule("zero", _zero, "(0, ..., 0)")
EMPTY = SolutionRule("empty", _empty, "no allocation")
SHAPLEY = SolutionRule("shapley", _shapley, "Shapley value of the situation's game")

# axioms each counterexample rule is known to violate, and where it does
ADVERTISED_FAILURES: Mapping[str, frozenset] = {
    "owen": frozenset(),
    "equal-split": frozenset({"AP"}),
    "dump": frozenset({"IR", "IE"}),
    "rebate": frozenset({"PO"}),
    "zero": frozenset({"EF"}),
    "empty": frozenset({"NE"}),
}
WITNESS_SITUATIONS: Mapping[str, PISituation] = {
    "owen": instances.EX1,
    "equal-split": instances.EQUAL_SPLIT_WITNESS,
    "dump": instances.DUMP_WITNESS,
    "rebate": instances.REBATE_WITNESS,
    "zero": instances.EX1,
    "empty": instances.EX1,
}


def builtin_rules() -> list[SolutionRule]:
    return [OWEN, EQUAL_SPLIT, DUMP, REBATE, ZERO, EMPTY, SHAPLEY]


def get_rule(name: str) -> SolutionRule:
    for rule in builtin_rules():
        if rule.name == name:
            return rule
    raise KeyError(f"unknown rule {name!r}; choose from {[r.name for r in builtin_rules()]}")


# --------------------------------------------------------------------------
# checkers


def check_EF(rule: SolutionRule, sit: PISituation) -> AxiomVerdict:
    grand = char_value(sit, sit.grand)
    for y in rule(sit):
        if y.total != grand:
            return AxiomVerdict("EF", False, f"{_fmt(y)} sums to {format_fraction(y.total)} != c(N) = {format_fraction(grand)}")
    return AxiomVerdict("EF", True)


def check_NE(rule: SolutionRule, sit: PISituation) -> AxiomVerdict:
    if not rule(sit):
        return AxiomVerdict("NE", False, "rule returned no allocation")
    return AxiomVerdict("NE", True)


def check_PO(rule: SolutionRule, sit: PISituation) -> AxiomVerdict:
    for y in rule(sit):
        for p, a in zip(sit.players, y):
            if a < 0:
                return AxiomVerdict("PO", False, f"{_fmt(y)}: player {p} gets {format_fraction(a)} < 0")
    return AxiomVerdict("PO", True)


def check_IR(rule: SolutionRule, sit: PISituation) -> AxiomVerdict:
    alone = [char_value(sit, 1 << i) for i in range(sit.n)]
    for y in rule(sit):
        for i, a in enumerate(y):
            if a > alone[i]:
                return AxiomVerdict(
                    "IR", False,
                    f"{_fmt(y)}: player {sit.players[i]} pays {format_fraction(a)} > c({{{sit.players[i]}}}) = {format_fraction(alone[i])}",
                )
    return AxiomVerdict("IR", True)


def check_IE(rule: SolutionRule, sit: PISituation) -> AxiomVerdict:
    report = essential_players(sit)
    outs = rule(sit)
    for i, player in enumerate(sit.players):
        if player in report.essential or sit.n == 1:
            continue
        rest = sit.grand & ~(1 << i)
        bound = char_value(sit, rest)
        for y in outs:
            if y.coalition_sum(rest) > bound:
                return AxiomVerdict(
                    "IE", False,
                    f"{_fmt(y)}: inessential {player}, y(N\\{{{player}}}) = {format_fraction(y.coalition_sum(rest))} > {format_fraction(bound)}",
                )
    return AxiomVerdict("IE", True)


def single_demand_situation(sit: PISituation, k: int) -> PISituation:
    """Same costs, but only player ``k`` keeps its demand."""
    zero = (0,) * sit.horizon
    demand = tuple(row if i == k else zero for i, row in enumerate(sit.demand))
    return PISituation(sit.players, sit.horizon, demand, sit.production, sit.holding, sit.backlogging)


def check_AP(rule: SolutionRule, sit: PISituation) -> AxiomVerdict:
    outs = rule(sit)
    if not outs:
        return AxiomVerdict("AP", True)
    parts = [rule(single_demand_situation(sit, k)) for k in range(sit.n)]
    sums = set()
    for combo in product(*parts):
        sums.add(tuple(sum(col, Fraction(0)) for col in zip(*combo)))
    for y in outs:
        if tuple(y.amounts) not in sums:
            return AxiomVerdict("AP", False, f"{_fmt(y)} is not a sum of the rule's single-demand outputs")
    return AxiomVerdict("AP", True)


def check_PM(rule: SolutionRule, sit: PISituation) -> AxiomVerdict:
    outs = rule(sit)
    for S in coalitions(sit.n):
        sub_outs = rule(restrict(sit, S))
        for y in outs:
            for z in sub_outs:
                for p in z.players:
                    if y[p] > z[p]:
                        return AxiomVerdict(
                            "PM", False,
                            f"player {p} pays {format_fraction(y[p])} in N but {format_fraction(z[p])} in {_set_name(sit, S)}",
                        )
    return AxiomVerdict("PM", True)


def relabel(sit: PISituation, sigma: Mapping[Any, Any]) -> PISituation:
    """Move every player's data to its new label.

    When ``sigma`` permutes the existing labels, rows stay in the original
    label order (so a swap really reorders the matrices); fresh labels keep
    the image order.
    """
    new_labels = [sigma[p] for p in sit.players]
    if len(set(new_labels)) != sit.n:
        raise ValueError("sigma is not injective")
    if set(new_labels) == set(sit.players):
        order = list(sit.players)
    else:
        order = new_labels
    src = [new_labels.index(label) for label in order]
    pick = lambda m: tuple(m[i] for i in src)  # noqa: E731
    return PISituation(
        tuple(order), sit.horizon, pick(sit.demand), pick(sit.production),
        pick(sit.holding), pick(sit.backlogging),
    )


def _as_map(y: Allocation) -> frozenset:
    return frozenset(y.as_dict().items())


def check_AN(rule: SolutionRule, sit: PISituation, sigma: Mapping[Any, Any]) -> AxiomVerdict:
    moved = relabel(sit, sigma)
    expected = {frozenset((sigma[p], a) for p, a in zip(y.players, y)) for y in rule(sit)}
    got = {_as_map(z) for z in rule(moved)}
    if expected != got:
        return AxiomVerdict("AN", False, f"relabelling {dict(sigma)} does not carry the outputs along")
    return AxiomVerdict("AN", True)


def bijections(sit: PISituation, seed: int = 0, samples: int = 3) -> list[dict]:
    """All permutations of the labels for n <= 5 (a seeded sample otherwise),
    plus relabellings onto fresh labels."""
    rng = random.Random(seed)
    players = list(sit.players)
    if sit.n <= 5:
        perms = [dict(zip(players, perm)) for perm in permutations(players)]
    else:
        perms = [dict(zip(players, players))]
        for _ in range(samples):
            perm = players[:]
            rng.shuffle(perm)
            perms.append(dict(zip(players, perm)))
    for k in range(samples):
        fresh = [f"~{k}:{p}" for p in players]
        rng.shuffle(fresh)
        perms.append(dict(zip(players, fresh)))
    return perms


def check_AN_all(rule: SolutionRule, sit: PISituation, seed: int = 0) -> AxiomVerdict:
    for sigma in bijections(sit, seed):
        verdict = check_AN(rule, sit, sigma)
        if not verdict:
            return verdict
    return AxiomVerdict("AN", True)


def check_all(rule: SolutionRule, sit: PISituation, seed: int = 0,
              axioms: Sequence[str] = AXIOMS) -> dict[str, AxiomVerdict]:
    checks = {
        "EF": check_EF, "NE": check_NE, "PO": check_PO, "IR": check_IR,
        "IE": check_IE, "AP": check_AP, "PM": check_PM,
        "AN": lambda r, s: check_AN_all(r, s, seed),
    }
    return {ax: checks[ax](rule, sit) for ax in axioms}


# --------------------------------------------------------------------------
# characterization suite


def ap_identity_holds(sit: PISituation) -> bool:
    """Every coalition's cost splits into the costs of the single-demand situations."""
    game = build_game(sit)
    pieces = [build_game(single_demand_situation(sit, k)) for k in range(sit.n)]
    return all(game(S) == sum((g(S) for g in pieces), Fraction(0)) for S in coalitions(sit.n))


def inessential_range(sit: PISituation) -> list[tuple[Fraction, Fraction]] | None:
    """Per-player (min, max) share over allocations meeting EF and the IE bounds.

    Solved by LP; returns None when some player is essential.  When every
    player is inessential each range collapses to the Owen share.
    """
    report = essential_players(sit)
    if report.essential:
        return None
    n = sit.n
    rows = [([1] * n, EQ, char_value(sit, sit.grand))]
    if n > 1:
        for i in range(n):
            rest = sit.grand & ~(1 << i)
            coeffs = [0 if j == i else 1 for j in range(n)]
            rows.append((coeffs, LE, char_value(sit, rest)))
    out = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        lo = solve_lp(make_lp("min", e, rows, free=[True] * n))
        hi = solve_lp(make_lp("max", e, rows, free=[True] * n))
        out.append((lo.value if lo.optimal else None, hi.value if hi.optimal else None))
    return out


@dataclass
class SuiteReport:
    situation_verdicts: dict[str, dict[str, AxiomVerdict]]
    witness_verdicts: dict[str, dict[str, AxiomVerdict]] = field(default_factory=dict)
    witness_match: dict[str, bool] = field(default_factory=dict)
    owen_collapse: bool | None = None
    ap_identity: bool = True

    @property
    def owen_passes_all(self) -> bool:
        verdicts = self.situation_verdicts.get("owen")
        return verdicts is None or all(verdicts.values())

    @property
    def passed(self) -> bool:
        return (
            self.owen_passes_all
            and all(self.witness_match.values())
            and self.owen_collapse is not False
            and self.ap_identity
        )

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "owen_passes_all": self.owen_passes_all,
            "ap_identity": self.ap_identity,
            "owen_collapse": self.owen_collapse,
            "situation": {
                rule: {ax: v.to_dict() for ax, v in verdicts.items()}
                for rule, verdicts in self.situation_verdicts.items()
            },
            "witness_domains": {
                rule: {
                    "advertised_failures": sorted(ADVERTISED_FAILURES[rule]),
                    "matches": self.witness_match[rule],
                    "verdicts": {ax: v.to_dict() for ax, v in verdicts.items()},
                }
                for rule, verdicts in self.witness_verdicts.items()
            },
        }

    def to_text(self) -> str:
        lines = []
        head = f"{'rule':<12}" + "".join(f"{ax:>5}" for ax in AXIOMS)
        lines.append("axioms on the given situation")
        lines.append(head)
        for rule, verdicts in self.situation_verdicts.items():
            marks = "".join(f"{('ok' if verdicts[ax] else 'FAIL') if ax in verdicts else '-':>5}" for ax in AXIOMS)
            lines.append(f"{rule:<12}{marks}")
        for rule, verdicts in self.situation_verdicts.items():
            for ax, v in verdicts.items():
                if not v:
                    lines.append(f"  {rule} {ax}: {v.witness}")
        if self.witness_verdicts:
            lines.append("")
            lines.append("counterexample rules on their witness situations")
            for rule, verdicts in self.witness_verdicts.items():
                failed = sorted(ax for ax, v in verdicts.items() if not v)
                want = sorted(ADVERTISED_FAILURES[rule])
                status = "ok" if self.witness_match[rule] else "MISMATCH"
                lines.append(f"  {rule:<12} fails {failed or '-'} expected {want or '-'}  {status}")
        if self.owen_collapse is not None:
            lines.append("")
            state = "ok" if self.owen_collapse else "FAIL"
            lines.append(f"all players inessential: EF+IE allocations reduce to Owen  {state}")
        lines.append(f"cost additivity over single-demand situations  {'ok' if self.ap_identity else 'FAIL'}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def characterization_suite(
    sit: PISituation,
    rules: Sequence[SolutionRule] | None = None,
    seed: int = 0,
) -> SuiteReport:
    """Owen on ``sit`` against all axioms, counterexample rules on their witness
    situations, and the all-inessential collapse when it applies."""
    if rules is None:
        rules = [r for r in builtin_rules() if r.name in ADVERTISED_FAILURES]
    report = SuiteReport({r.name: check_all(r, sit, seed) for r in rules})
    for rule in rules:
        if rule.name not in WITNESS_SITUATIONS:
            continue
        verdicts = check_all(rule, WITNESS_SITUATIONS[rule.name], seed, CORE_SIX)
        report.witness_verdicts[rule.name] = verdicts
        failed = {ax for ax, v in verdicts.items() if not v}
        report.witness_match[rule.name] = failed == ADVERTISED_FAILURES[rule.name]
    ranges = inessential_range(sit)
    if ranges is not None:
        owen = owen_point(sit)
        report.owen_collapse = all(lo == hi == o for (lo, hi), o in zip(ranges, owen))
    report.ap_identity = ap_identity_holds(sit)
    return report


def clone_player(sit: PISituation, j: int, label: Any) -> PISituation:
    """Append a copy of player ``j`` under a new label."""
    grow = lambda m: (*m, m[j])  # noqa: E731
    return PISituation(
        (*sit.players, label), sit.horizon, grow(sit.demand), grow(sit.production),
        grow(sit.holding), grow(sit.backlogging),
    )
