"""Coalition costs of a PI-situation: aggregation, dual prices, game, plans.

Periods are 0-based internally.  ``y*(S)[t]`` is the cheapest unit cost at
which coalition ``S`` can serve period ``t``: produce in some period ``k`` and
carry forward (holding) or backward (backlogging) to ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate

import numpy as np

from .model import Coalition, PISituation, TUGame, coalitions, members

ORACLE_MAX_UNITS = 12
ORACLE_MAX_PERIODS = 6


@dataclass(frozen=True)
class CoalitionParams:
    demand: tuple[int, ...]
    production: tuple[Fraction, ...]
    holding: tuple[Fraction, ...]
    backlogging: tuple[Fraction, ...]

    @property
    def horizon(self) -> int:
        return len(self.demand)

    def merge(self, other: "CoalitionParams") -> "CoalitionParams":
        return CoalitionParams(
            tuple(a + b for a, b in zip(self.demand, other.demand)),
            tuple(map(min, self.production, other.production)),
            tuple(map(min, self.holding, other.holding)),
            tuple(map(min, self.backlogging, other.backlogging)),
        )


@dataclass(frozen=True)
class PrimalPlan:
    """Integer production plan; ``inventory``/``backlog`` are the T-1 interior periods."""

    production: tuple[int, ...]
    inventory: tuple[int, ...]
    backlog: tuple[int, ...]

    def cost(self, params: CoalitionParams) -> Fraction:
        return (
            sum((p * q for p, q in zip(params.production, self.production)), Fraction(0))
            + sum((h * i for h, i in zip(params.holding, self.inventory)), Fraction(0))
            + sum((b * e for b, e in zip(params.backlogging, self.backlog)), Fraction(0))
        )

    def is_feasible(self, params: CoalitionParams) -> bool:
        """Balance equations with zero stock and backlog at both ends."""
        T = params.horizon
        inv = list(self.inventory) + [0]
        back = list(self.backlog) + [0]
        prev = 0
        for t in range(T):
            if self.production[t] < 0 or inv[t] < 0 or back[t] < 0:
                return False
            net = prev + self.production[t] - params.demand[t]
            if inv[t] - back[t] != net:
                return False
            prev = net
        return True


def _row_params(sit: PISituation, i: int) -> CoalitionParams:
    return CoalitionParams(*sit.rows(i))


def aggregate(sit: PISituation, S: Coalition) -> CoalitionParams:
    """Summed demand and member-wise minimum costs of coalition ``S``."""
    idx = members(S)
    if not idx:
        raise ValueError("empty coalition")
    params = _row_params(sit, idx[0])
    for i in idx[1:]:
        params = params.merge(_row_params(sit, i))
    return params


def serving_costs(params: CoalitionParams) -> list[list[Fraction]]:
    """``cost[t][k]``: unit cost of meeting period-``t`` demand from period ``k``."""
    T = params.horizon
    hcum = [Fraction(0), *accumulate(params.holding)]
    bcum = [Fraction(0), *accumulate(params.backlogging)]
    table = []
    for t in range(T):
        row = []
        for k in range(T):
            if k <= t:
                row.append(params.production[k] + hcum[t] - hcum[k])
            else:
                row.append(params.production[k] + bcum[k] - bcum[t])
        table.append(row)
    return table


def dual_prices(params: CoalitionParams) -> tuple[Fraction, ...]:
    return tuple(min(row) for row in serving_costs(params))


def dual_solution(sit: PISituation, S: Coalition) -> tuple[Fraction, ...]:
    """Optimal dual prices ``y*(S)``, one per period."""
    return dual_prices(aggregate(sit, S))


def params_value(params: CoalitionParams) -> Fraction:
    return sum((d * y for d, y in zip(params.demand, dual_prices(params))), Fraction(0))


def char_value(sit: PISituation, S: Coalition) -> Fraction:
    """Optimal cost ``c(S)`` of the coalition's joint lot-sizing problem."""
    return params_value(aggregate(sit, S))


def build_game(sit: PISituation) -> TUGame:
    """Characteristic-function table over every nonempty coalition."""
    params: dict[Coalition, CoalitionParams] = {}
    values = {}
    for S in coalitions(sit.n):
        low = S & -S
        rest = S ^ low
        own = _row_params(sit, low.bit_length() - 1)
        params[S] = own if rest == 0 else params[rest].merge(own)
        values[S] = params_value(params[S])
    return TUGame(sit.players, values)


def plan_from_params(params: CoalitionParams) -> PrimalPlan:
    T = params.horizon
    costs = serving_costs(params)
    q = [0] * T
    for t in range(T):
        best = min(costs[t])
        k = costs[t].index(best)  # smallest period attaining the minimum
        q[k] += params.demand[t]
    inv, back = [], []
    cum = 0
    for t in range(T - 1):
        cum += q[t] - params.demand[t]
        inv.append(max(cum, 0))
        back.append(max(-cum, 0))
    return PrimalPlan(tuple(q), tuple(inv), tuple(back))


def primal_plan(sit: PISituation, S: Coalition) -> PrimalPlan:
    """A feasible integer plan whose cost equals ``char_value(sit, S)``.

    Each period's demand is produced in the earliest period whose serving
    cost equals the dual price.
    """
    return plan_from_params(aggregate(sit, S))


# --------------------------------------------------------------------------
# brute-force oracle


class OracleTooLarge(ValueError):
    pass


@lru_cache(maxsize=256)
def _compositions(units: int, parts: int) -> np.ndarray:
    """Every way to write ``units`` as an ordered sum of ``parts`` non-negative ints."""
    if parts == 1:
        return np.array([[units]], dtype=np.int64)
    rows = []
    for first in range(units + 1):
        tail = _compositions(units - first, parts - 1)
        rows.append(np.hstack([np.full((len(tail), 1), first, dtype=np.int64), tail]))
    out = np.vstack(rows)
    out.flags.writeable = False
    return out


def _common_scale(values) -> int:
    scale = 1
    for v in values:
        scale = np.lcm(scale, Fraction(v).denominator)
    return int(scale)


def oracle_cost(
    sit: PISituation,
    S: Coalition,
    max_units: int = ORACLE_MAX_UNITS,
    max_periods: int = ORACLE_MAX_PERIODS,
) -> Fraction:
    """Minimum plan cost by enumerating every integer production vector.

    Independent of the dual prices: each production vector with the right
    total fixes the end-of-period net stock, hence inventory and backlog.
    Costs are scaled to a common integer denominator so the sweep runs in
    exact int64 arithmetic.
    """
    params = aggregate(sit, S)
    T = params.horizon
    units = sum(params.demand)
    if units > max_units or T > max_periods:
        raise OracleTooLarge(
            f"enumeration guard exceeded: {units} units (max {max_units}), "
            f"T={T} (max {max_periods})"
        )
    costs = (*params.production, *params.holding, *params.backlogging)
    scale = _common_scale(costs)
    p = np.array([int(c * scale) for c in params.production], dtype=np.int64)
    h = np.array([int(c * scale) for c in params.holding], dtype=np.int64)
    b = np.array([int(c * scale) for c in params.backlogging], dtype=np.int64)
    d = np.array(params.demand, dtype=np.int64)

    q = _compositions(units, T)
    cum = np.cumsum(q - d, axis=1)[:, : T - 1]
    total = q @ p + np.maximum(cum, 0) @ h + np.maximum(-cum, 0) @ b
    return Fraction(int(total.min()), scale)
