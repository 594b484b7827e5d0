"""Production-inventory situations, TU cost games, coalitions and allocations.

Coalitions are plain ``int`` bitmasks over player positions: bit ``i`` is set
when the ``i``-th player of the situation (or game) is a member.  The empty
coalition ``0`` is never stored; its value is fixed at zero.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping, Sequence

MAX_PLAYERS = 24

Coalition = int
Matrix = tuple[tuple[Fraction, ...], ...]


class SituationError(ValueError):
    """Raised when raw input does not describe a valid situation or game.

    ``problems`` lists every violation that was found, not just the first.
    """

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


# --------------------------------------------------------------------------
# rationals


def to_fraction(value: Any) -> Fraction:
    """Parse an int, finite decimal, or ``"num/den"`` string exactly.

    Floats are converted through their shortest ``repr`` so that a JSON
    literal such as ``0.1`` becomes ``1/10`` rather than its binary expansion.
    """
    if isinstance(value, bool):
        raise TypeError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"not a finite rational: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a rational: {value!r}")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _to_json_number(value: Fraction) -> int | str:
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else format_fraction(value)


# --------------------------------------------------------------------------
# coalitions


def members(mask: Coalition) -> list[int]:
    """0-based player positions in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> Coalition:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def coalitions(n: int) -> Iterator[Coalition]:
    """All nonempty coalitions of ``n`` players, by size then lexicographically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            yield mask_of(combo)


def subsets(mask: Coalition) -> Iterator[Coalition]:
    """Nonempty subsets of ``mask`` (including ``mask`` itself)."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def coalition_key(mask: Coalition) -> str:
    """Comma-joined 1-based indices, the key format of game files."""
    return ",".join(str(i + 1) for i in members(mask))


def parse_coalition(text: str, n: int) -> Coalition:
    """Inverse of :func:`coalition_key`, with range and duplicate checks."""
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    if not parts:
        raise SituationError(["empty coalition"])
    idx = []
    for p in parts:
        try:
            k = int(p)
        except ValueError:
            raise SituationError([f"bad player index {p!r}"]) from None
        if not 1 <= k <= n:
            raise SituationError([f"player index {k} out of range 1..{n}"])
        idx.append(k - 1)
    if len(set(idx)) != len(idx):
        raise SituationError([f"duplicate index in coalition {text!r}"])
    return mask_of(idx)


# --------------------------------------------------------------------------
# situations


@dataclass(frozen=True)
class PISituation:
    """Players, horizon, integer demand and rational per-period unit costs.

    ``holding`` and ``backlogging`` carry ``horizon - 1`` columns: column ``t``
    prices a unit carried between periods ``t`` and ``t + 1``.
    """

    players: tuple[Any, ...]
    horizon: int
    demand: tuple[tuple[int, ...], ...]
    production: Matrix
    holding: Matrix
    backlogging: Matrix

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def grand(self) -> Coalition:
        return (1 << self.n) - 1

    def index(self, player: Any) -> int:
        return self.players.index(player)

    def rows(self, i: int):
        """(demand, production, holding, backlogging) rows of player ``i``."""
        return self.demand[i], self.production[i], self.holding[i], self.backlogging[i]


def validate(raw: Mapping[str, Any]) -> PISituation:
    """Build a :class:`PISituation` from parsed input, checking everything.

    Accepts the JSON situation schema (key ``"T"`` or ``"horizon"``).  All
    violations are collected and raised together as :class:`SituationError`.
    Holding/backlogging rows of length ``T`` are accepted; their last entry can
    never be charged and is dropped with a warning.
    """
    problems: list[str] = []
    players = list(raw.get("players", []))
    n = len(players)
    if n < 1:
        problems.append("need at least one player")
    if n > MAX_PLAYERS:
        problems.append(f"{n} players exceeds the cap of {MAX_PLAYERS}")
    if len(set(map(_hashable, players))) != n:
        problems.append("duplicate player id")

    T = raw.get("T", raw.get("horizon"))
    if isinstance(T, bool) or not isinstance(T, int):
        problems.append(f"horizon T must be an integer, got {T!r}")
        raise SituationError(problems)
    if T < 1:
        problems.append(f"horizon T must be >= 1, got {T}")
        raise SituationError(problems)

    def matrix(name: str, width: int, allow_full: bool, integer: bool):
        rows = raw.get(name)
        if rows is None:
            if width == 0:
                return tuple(() for _ in range(n))
            problems.append(f"missing {name}")
            return None
        if len(rows) != n:
            problems.append(f"{name}: expected {n} rows, got {len(rows)}")
            return None
        out = []
        dropped = False
        for r, row in enumerate(rows):
            row = list(row)
            if allow_full and len(row) == width + 1:
                row = row[:width]
                dropped = True
            if len(row) != width:
                problems.append(
                    f"{name}: row {r + 1} has {len(row)} entries, expected {width}"
                )
                continue
            vals = []
            for t, v in enumerate(row):
                where = f"{name}[{r + 1}][{t + 1}]"
                try:
                    x = to_fraction(v)
                except (TypeError, ValueError, ZeroDivisionError):
                    problems.append(f"{where}: not a rational: {v!r}")
                    continue
                if integer and x.denominator != 1:
                    problems.append(f"{where}: non-integer demand {v!r}")
                    continue
                if x < 0:
                    kind = "demand" if integer else "cost"
                    problems.append(f"{where}: negative {kind} {v!r}")
                    continue
                vals.append(int(x) if integer else x)
            out.append(tuple(vals))
        if dropped:
            warnings.warn(
                f"{name}: final period column ignored (no carrying after period T)",
                stacklevel=3,
            )
        return tuple(out)

    demand = matrix("demand", T, False, True)
    production = matrix("production", T, False, False)
    holding = matrix("holding", T - 1, True, False)
    backlogging = matrix("backlogging", T - 1, True, False)
    if problems:
        raise SituationError(problems)
    return PISituation(tuple(players), T, demand, production, holding, backlogging)


def _hashable(x: Any) -> Any:
    return json.dumps(x, sort_keys=True) if isinstance(x, (list, dict)) else x


def restrict(sit: PISituation, S: Coalition) -> PISituation:
    """Sub-situation keeping only the rows of the members of ``S``."""
    if S == 0:
        raise ValueError("cannot restrict to the empty coalition")
    if S >> sit.n:
        raise ValueError("coalition contains players outside the situation")
    idx = members(S)
    pick = lambda m: tuple(m[i] for i in idx)  # noqa: E731
    return PISituation(
        tuple(sit.players[i] for i in idx),
        sit.horizon,
        pick(sit.demand),
        pick(sit.production),
        pick(sit.holding),
        pick(sit.backlogging),
    )


def situation_to_dict(sit: PISituation) -> dict:
    rat = lambda m: [[_to_json_number(v) for v in row] for row in m]  # noqa: E731
    return {
        "players": list(sit.players),
        "T": sit.horizon,
        "demand": [list(row) for row in sit.demand],
        "production": rat(sit.production),
        "holding": rat(sit.holding),
        "backlogging": rat(sit.backlogging),
    }


def read_situation(path: str | Path) -> PISituation:
    with open(path) as fh:
        return validate(json.load(fh))


def write_situation(sit: PISituation, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(situation_to_dict(sit), fh, indent=2)
        fh.write("\n")


# --------------------------------------------------------------------------
# games and allocations


@dataclass(frozen=True)
class TUGame:
    """A cost game: the full table of values over nonempty coalitions."""

    players: tuple[Any, ...]
    values: Mapping[Coalition, Fraction]

    def __post_init__(self):
        n = len(self.players)
        if n < 1:
            raise SituationError(["game needs at least one player"])
        if n > MAX_PLAYERS:
            raise SituationError([f"{n} players exceeds the cap of {MAX_PLAYERS}"])
        missing = sum(1 for S in range(1, 1 << n) if S not in self.values)
        if missing or len(self.values) != (1 << n) - 1:
            raise SituationError([f"incomplete game table ({missing} coalitions missing)"])

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def grand(self) -> Coalition:
        return (1 << self.n) - 1

    def __call__(self, S: Coalition) -> Fraction:
        return Fraction(0) if S == 0 else self.values[S]

    def subgame(self, S: Coalition) -> "TUGame":
        idx = members(S)
        table = {}
        for sub in subsets(S):
            local = mask_of(k for k, i in enumerate(idx) if sub >> i & 1)
            table[local] = self.values[sub]
        return TUGame(tuple(self.players[i] for i in idx), table)

    def __add__(self, other: "TUGame") -> "TUGame":
        if self.players != other.players:
            raise ValueError("games are defined on different player lists")
        return TUGame(self.players, {S: v + other.values[S] for S, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, TUGame):
            return NotImplemented
        return self.players == other.players and dict(self.values) == dict(other.values)

    def __hash__(self):
        return hash((self.players, tuple(sorted(self.values.items()))))


def game_from_function(players: Sequence[Any], fn) -> TUGame:
    n = len(players)
    return TUGame(tuple(players), {S: Fraction(fn(S)) for S in coalitions(n)})


def game_to_dict(game: TUGame) -> dict:
    return {
        "players": list(game.players),
        "values": {coalition_key(S): _to_json_number(game.values[S]) for S in coalitions(game.n)},
    }


def game_from_dict(raw: Mapping[str, Any]) -> TUGame:
    players = list(raw.get("players", []))
    n = len(players)
    problems = []
    if n < 1:
        raise SituationError(["need at least one player"])
    if n > MAX_PLAYERS:
        raise SituationError([f"{n} players exceeds the cap of {MAX_PLAYERS}"])
    values = {}
    for key, v in dict(raw.get("values", {})).items():
        try:
            S = parse_coalition(key, n)
        except SituationError as exc:
            problems.extend(exc.problems)
            continue
        if S in values:
            problems.append(f"coalition {key!r} listed twice")
        try:
            values[S] = to_fraction(v)
        except (TypeError, ValueError, ZeroDivisionError):
            problems.append(f"value of {key!r} is not a rational: {v!r}")
    missing = [coalition_key(S) for S in coalitions(n) if S not in values]
    if missing:
        problems.append(f"missing values for coalitions: {' '.join(missing)}")
    if problems:
        raise SituationError(problems)
    return TUGame(tuple(players), values)


def read_game(path: str | Path) -> TUGame:
    with open(path) as fh:
        return game_from_dict(json.load(fh))


def write_game(game: TUGame, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(game_to_dict(game), fh, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class Allocation:
    """Exact cost shares, indexed by an ordered player list."""

    players: tuple[Any, ...]
    amounts: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.players) != len(self.amounts):
            raise ValueError("players and amounts differ in length")

    def __getitem__(self, player: Any) -> Fraction:
        return self.amounts[self.players.index(player)]

    def __iter__(self):
        return iter(self.amounts)

    def __len__(self):
        return len(self.amounts)

    @property
    def total(self) -> Fraction:
        return sum(self.amounts, Fraction(0))

    def coalition_sum(self, S: Coalition) -> Fraction:
        return sum((self.amounts[i] for i in members(S)), Fraction(0))

    def as_dict(self) -> dict:
        return dict(zip(self.players, self.amounts))

    def __str__(self):
        return ", ".join(f"{p}: {format_fraction(a)}" for p, a in zip(self.players, self.amounts))


def allocation(players: Sequence[Any], amounts: Iterable[Any]) -> Allocation:
    return Allocation(tuple(players), tuple(to_fraction(a) for a in amounts))


@dataclass(frozen=True)
class Pmas:
    """One allocation per nonempty coalition, over that coalition's members."""

    players: tuple[Any, ...]
    scheme: Mapping[Coalition, Allocation]

    def share(self, S: Coalition, i: int) -> Fraction:
        """Amount player position ``i`` pays inside coalition ``S``."""
        return self.scheme[S][self.players[i]]

    def violations(self, game: TUGame, limit: int | None = 1) -> list[tuple]:
        """Efficiency and monotonicity violations, in enumeration order.

        Entries are ``("efficiency", S)`` or ``("monotonicity", S, R, i)`` with
        ``S ⊆ R`` and ``i`` a position in ``S`` paying less in ``S`` than in ``R``.
        """
        out: list[tuple] = []
        n = len(self.players)
        for S in coalitions(n):
            if self.scheme[S].total != game(S):
                out.append(("efficiency", S))
                if limit and len(out) >= limit:
                    return out
        for R in coalitions(n):
            for S in subsets(R):
                if S == R:
                    continue
                for i in members(S):
                    if self.share(S, i) < self.share(R, i):
                        out.append(("monotonicity", S, R, i))
                        if limit and len(out) >= limit:
                            return out
        return out

    def is_valid(self, game: TUGame) -> bool:
        return not self.violations(game, limit=1)
