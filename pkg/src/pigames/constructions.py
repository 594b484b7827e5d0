"""Game constructions: summing situations, veto games as situations, and the
Shapley scheme for concave games."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .model import (
    Allocation,
    Coalition,
    Pmas,
    PISituation,
    TUGame,
    coalitions,
    members,
)


def separator_cost(*sits: PISituation) -> Fraction:
    """A unit cost no optimal plan will pay: above every production cost plus
    every possible carrying charge in either direction."""
    top = Fraction(0)
    carry = Fraction(0)
    for sit in sits:
        top = max([top, *(v for row in sit.production for v in row)])
        carry += sum((v for row in sit.holding for v in row), Fraction(0))
        carry += sum((v for row in sit.backlogging for v in row), Fraction(0))
    return 1 + top + carry


def sum_situations(first: PISituation, second: PISituation) -> PISituation:
    """Concatenate two horizons around a zero-demand, prohibitively costly period.

    The game of the result is the value-wise sum of the two input games.
    """
    if first.players != second.players:
        raise ValueError("situations must share the same ordered player list")
    w = separator_cost(first, second)
    demand, prod, hold, back = [], [], [], []
    for i in range(first.n):
        demand.append((*first.demand[i], 0, *second.demand[i]))
        prod.append((*first.production[i], w, *second.production[i]))
        # carrying into and out of the separator both cost w
        hold.append((*first.holding[i], w, w, *second.holding[i]))
        back.append((*first.backlogging[i], w, w, *second.backlogging[i]))
    return PISituation(
        first.players,
        first.horizon + second.horizon + 1,
        tuple(demand),
        tuple(prod),
        tuple(hold),
        tuple(back),
    )


# --------------------------------------------------------------------------
# predicates on games


def is_simple(game: TUGame) -> bool:
    return all(v in (0, 1) for v in game.values.values())


def veto_players(game: TUGame) -> list[int]:
    """Positions ``i`` such that every coalition without ``i`` costs 0."""
    zero_without = [True] * game.n
    for S in coalitions(game.n):
        if game(S) != 0:
            for i in range(game.n):
                if not S >> i & 1:
                    zero_without[i] = False
    return [i for i in range(game.n) if zero_without[i]]


def is_veto(game: TUGame) -> bool:
    return bool(veto_players(game))


def is_zero_monotone(game: TUGame) -> bool:
    """Whether ``c(S) - sum of singletons`` never increases along ``S ⊊ S'``.

    The empty coalition (normalized value 0) takes part in the comparison.
    """
    single = [game(1 << i) for i in range(game.n)]
    norm = [Fraction(0)] * (1 << game.n)
    for S in coalitions(game.n):
        norm[S] = game(S) - sum(single[i] for i in members(S))
    # a violation on some pair implies one on a pair differing by one player
    for S in range(1 << game.n):
        for i in range(game.n):
            if not S >> i & 1 and norm[S] < norm[S | 1 << i]:
                return False
    return True


@dataclass(frozen=True)
class ConcavityWitness:
    smaller: Coalition
    larger: Coalition
    player: int

    def __str__(self):
        fmt = lambda S: "{" + ",".join(str(i + 1) for i in members(S)) + "}"  # noqa: E731
        return f"i={self.player + 1}, S={fmt(self.smaller)}, T={fmt(self.larger)}"


def concavity_violation(game: TUGame) -> ConcavityWitness | None:
    """First ``(S, T, i)`` with ``S ⊆ T ⊆ N∖{i}`` and a larger marginal at ``T``.

    Scans ``S`` (empty first, then enumeration order), then ``T ⊇ S`` in
    enumeration order, then ``i``.
    """
    n = game.n
    order = [0, *coalitions(n)]
    for S in order:
        for T in order:
            if T & S != S:
                continue
            for i in range(n):
                bit = 1 << i
                if T & bit:
                    continue
                if game(S | bit) - game(S) < game(T | bit) - game(T):
                    return ConcavityWitness(S, T, i)
    return None


def is_concave(game: TUGame) -> bool:
    return concavity_violation(game) is None


# --------------------------------------------------------------------------
# Shapley


def shapley(game: TUGame) -> Allocation:
    """Exact Shapley value by coalition-weighted marginal contributions."""
    n = game.n
    fact = [factorial(k) for k in range(n + 1)]
    weights = [Fraction(fact[s] * fact[n - s - 1], fact[n]) for s in range(n)]
    phi = [Fraction(0)] * n
    for S in [0, *coalitions(n)]:
        s = S.bit_count()
        if s == n:
            continue
        w = weights[s]
        base = game(S)
        for i in range(n):
            if not S >> i & 1:
                phi[i] += w * (game(S | 1 << i) - base)
    return Allocation(game.players, tuple(phi))


def shapley_pmas(game: TUGame) -> Pmas:
    """Assign every subgame its Shapley value; requires a non-negative concave game."""
    bad = concavity_violation(game)
    if bad is not None:
        raise ValueError(f"game is not concave (witness {bad})")
    neg = [S for S in coalitions(game.n) if game(S) < 0]
    if neg:
        raise ValueError(f"game has a negative value at coalition {members(neg[0])}")
    return Pmas(game.players, {S: shapley(game.subgame(S)) for S in coalitions(game.n)})


# --------------------------------------------------------------------------
# veto games


class NotAVetoGame(ValueError):
    pass


def maximal_unit_coalitions(game: TUGame) -> list[Coalition]:
    """Coalitions of value 1 all of whose strict supersets have value 0,
    largest first, then in enumeration order."""
    n = game.n
    found = []
    for S in coalitions(n):
        if game(S) != 1:
            continue
        free = game.grand & ~S
        sup = free
        maximal = True
        while sup:
            if game(S | sup) != 0:
                maximal = False
                break
            sup = (sup - 1) & free
        if maximal:
            found.append(S)
    rank = {S: k for k, S in enumerate(coalitions(n))}
    return sorted(found, key=lambda S: (-S.bit_count(), rank[S]))


def veto_game_to_situation(game: TUGame) -> PISituation:
    """A situation whose game is ``game``, for 0-monotone simple veto games.

    One period per maximal value-1 coalition ``S_t`` (members hold stock at
    cost 1 there, everyone else holds for free) plus a final period where
    the lowest-indexed veto player demands one unit.  Production is free
    only in the first period and backlogging always costs 1.
    """
    problems = []
    if not is_simple(game):
        problems.append("game is not simple (values outside {0, 1})")
    vetoes = veto_players(game)
    if not vetoes:
        problems.append("game has no veto player")
    if not is_zero_monotone(game):
        problems.append("game is not 0-monotone")
    if problems:
        raise NotAVetoGame("; ".join(problems))

    veto = vetoes[0]
    M = maximal_unit_coalitions(game)
    T = len(M) + 1
    one, zero = Fraction(1), Fraction(0)
    demand, prod, hold, back = [], [], [], []
    for i in range(game.n):
        demand.append(tuple(1 if (i == veto and t == T - 1) else 0 for t in range(T)))
        prod.append(tuple(zero if t == 0 else one for t in range(T)))
        hold.append(tuple(one if M[t] >> i & 1 else zero for t in range(T - 1)))
        back.append((one,) * (T - 1))
    return PISituation(game.players, T, tuple(demand), tuple(prod), tuple(hold), tuple(back))
