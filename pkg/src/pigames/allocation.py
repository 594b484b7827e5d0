"""Owen point, core checks, the dual-price PMAS and essential players."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .model import Allocation, Coalition, Pmas, PISituation, TUGame, coalitions, members
from .solver import CoalitionParams, aggregate, dual_prices, dual_solution


def _priced_shares(sit: PISituation, S: Coalition, prices) -> Allocation:
    idx = members(S)
    return Allocation(
        tuple(sit.players[i] for i in idx),
        tuple(
            sum((d * y for d, y in zip(sit.demand[i], prices)), Fraction(0)) for i in idx
        ),
    )


def owen_point(sit: PISituation) -> Allocation:
    """Each player's demand priced at the grand coalition's dual prices."""
    return _priced_shares(sit, sit.grand, dual_solution(sit, sit.grand))


@dataclass(frozen=True)
class CoreVerdict:
    violation: Coalition | None = None

    def __bool__(self) -> bool:
        return self.violation is None


def in_core(game: TUGame, x: Allocation) -> CoreVerdict:
    """Exact core test; reports the grand coalition first if ``x`` is inefficient,
    otherwise the first blocking coalition in enumeration order."""
    if len(x) != game.n:
        raise ValueError("allocation does not match the game's players")
    if x.total != game(game.grand):
        return CoreVerdict(game.grand)
    for S in coalitions(game.n):
        if x.coalition_sum(S) > game(S):
            return CoreVerdict(S)
    return CoreVerdict()


def pmas(sit: PISituation) -> Pmas:
    """Every coalition's members pay their demand at that coalition's dual prices."""
    scheme = {}
    params: dict[Coalition, CoalitionParams] = {}
    for S in coalitions(sit.n):
        low = S & -S
        rest = S ^ low
        own = CoalitionParams(*sit.rows(low.bit_length() - 1))
        params[S] = own if rest == 0 else params[rest].merge(own)
        scheme[S] = _priced_shares(sit, S, dual_prices(params[S]))
    return Pmas(sit.players, scheme)


@dataclass(frozen=True)
class EssentialReport:
    essential: frozenset
    witnesses: dict[Any, int] = field(default_factory=dict)  # player -> 1-based period

    @property
    def all_inessential(self) -> bool:
        return not self.essential


def essential_players(sit: PISituation) -> EssentialReport:
    """Players whose departure raises some dual price where others still have demand.

    A lone player is reported inessential.
    """
    if sit.n == 1:
        return EssentialReport(frozenset())
    y_grand = dual_solution(sit, sit.grand)
    witnesses = {}
    for i, player in enumerate(sit.players):
        rest = sit.grand & ~(1 << i)
        params = aggregate(sit, rest)
        y_rest = dual_prices(params)
        for t in range(sit.horizon):
            if params.demand[t] > 0 and y_rest[t] > y_grand[t]:
                witnesses[player] = t + 1
                break
    return EssentialReport(frozenset(witnesses), witnesses)


def core_is_owen_singleton(sit: PISituation) -> bool:
    return essential_players(sit).all_inessential
