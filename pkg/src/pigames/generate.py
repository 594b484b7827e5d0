"""Seeded generators for situations and games used by tests and scripts."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Iterator

from .constructions import is_concave, is_simple, is_veto, is_zero_monotone
from .model import PISituation, TUGame, coalitions, members


def random_rational(rng: random.Random, high: int = 10, dens=(1, 2, 3, 4)) -> Fraction:
    den = rng.choice(dens)
    return Fraction(rng.randint(0, high * den), den)


def random_situation(
    rng: random.Random,
    max_players: int = 4,
    max_periods: int = 4,
    max_demand: int = 3,
    max_cost: int = 10,
    n: int | None = None,
    T: int | None = None,
) -> PISituation:
    n = n or rng.randint(1, max_players)
    T = T or rng.randint(1, max_periods)
    cost = lambda: random_rational(rng, max_cost)  # noqa: E731
    return PISituation(
        tuple(f"P{i + 1}" for i in range(n)),
        T,
        tuple(tuple(rng.randint(0, max_demand) for _ in range(T)) for _ in range(n)),
        tuple(tuple(cost() for _ in range(T)) for _ in range(n)),
        tuple(tuple(cost() for _ in range(T - 1)) for _ in range(n)),
        tuple(tuple(cost() for _ in range(T - 1)) for _ in range(n)),
    )


def corpus(count: int, seed: int = 0, **kwargs) -> list[PISituation]:
    rng = random.Random(seed)
    return [random_situation(rng, **kwargs) for _ in range(count)]


def identical_rows_situation(rng: random.Random, n: int, T: int, max_demand: int = 3) -> PISituation:
    """Every player shares one cost row; demands differ.  No player is essential."""
    base = random_situation(rng, n=1, T=T, max_demand=max_demand)
    return PISituation(
        tuple(f"P{i + 1}" for i in range(n)),
        T,
        tuple(tuple(rng.randint(0, max_demand) for _ in range(T)) for _ in range(n)),
        base.production * n,
        base.holding * n,
        base.backlogging * n,
    )


def random_concave_game(rng: random.Random, n: int) -> TUGame:
    """Non-negative submodular cost game: weighted coverage plus capped additive parts."""
    areas = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 4))]
    area_w = [random_rational(rng, 5) for _ in areas]
    add = [random_rational(rng, 5) for _ in range(n)]
    cap = random_rational(rng, 10) if rng.random() < 0.5 else None
    cap_w = [random_rational(rng, 5) for _ in range(n)]

    def value(S):
        v = sum((w for A, w in zip(areas, area_w) if A & S), Fraction(0))
        v += sum((add[i] for i in members(S)), Fraction(0))
        if cap is not None:
            v += min(cap, sum((cap_w[i] for i in members(S)), Fraction(0)))
        return v

    game = TUGame(tuple(f"P{i + 1}" for i in range(n)), {S: value(S) for S in coalitions(n)})
    assert is_concave(game)
    return game


def simple_games(n: int) -> Iterator[TUGame]:
    """Every {0,1}-valued game on ``n`` players."""
    players = tuple(f"P{i + 1}" for i in range(n))
    masks = list(coalitions(n))
    one, zero = Fraction(1), Fraction(0)
    for bits in product((zero, one), repeat=len(masks)):
        yield TUGame(players, dict(zip(masks, bits)))


def zero_monotone_simple_veto_games(n: int) -> Iterator[TUGame]:
    for game in simple_games(n):
        if is_veto(game) and is_zero_monotone(game):
            assert is_simple(game)
            yield game
