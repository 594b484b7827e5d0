"""A small exact linear-programming solver (two-phase simplex, Bland's rule).

Everything is :class:`fractions.Fraction`; the instances this package feeds it
have at most a few dozen rows, so a dense tableau is fine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .model import Coalition, PISituation
from .solver import aggregate

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    sense: str  # "max" or "min"
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    free: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        n = len(self.objective)
        if self.sense not in ("max", "min"):
            raise ValueError(f"unknown sense {self.sense!r}")
        if not self.free:
            object.__setattr__(self, "free", (False,) * n)
        if len(self.free) != n:
            raise ValueError("sign restrictions do not match the number of variables")
        for con in self.constraints:
            if len(con.coeffs) != n:
                raise ValueError("constraint width does not match the objective")
            if con.relation not in (LE, GE, EQ):
                raise ValueError(f"unknown relation {con.relation!r}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def is_feasible(self, point: Sequence[Fraction]) -> bool:
        for x, free in zip(point, self.free):
            if not free and x < 0:
                return False
        for con in self.constraints:
            lhs = sum((a * x for a, x in zip(con.coeffs, point)), Fraction(0))
            if con.relation == LE and lhs > con.rhs:
                return False
            if con.relation == GE and lhs < con.rhs:
                return False
            if con.relation == EQ and lhs != con.rhs:
                return False
        return True

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.objective, point)), Fraction(0))


def make_lp(sense, objective, rows, free=None) -> LinearProgram:
    """Convenience constructor; ``rows`` are ``(coeffs, relation, rhs)`` triples."""
    F = Fraction
    return LinearProgram(
        sense,
        tuple(F(c) for c in objective),
        tuple(Constraint(tuple(F(a) for a in co), rel, F(r)) for co, rel, r in rows),
        tuple(free) if free is not None else (),
    )


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    def __init__(self, A, b, basis):
        self.A = A
        self.b = b
        self.basis = basis
        self.iterations = 0

    def pivot(self, r: int, j: int) -> None:
        A, b = self.A, self.b
        piv = A[r][j]
        A[r] = [a / piv for a in A[r]]
        b[r] = b[r] / piv
        for i in range(len(A)):
            if i != r and A[i][j] != 0:
                f = A[i][j]
                Ar = A[r]
                A[i] = [a - f * ar for a, ar in zip(A[i], Ar)]
                b[i] -= f * b[r]
        self.basis[r] = j
        self.iterations += 1

    def maximize(self, c: Sequence[Fraction], allowed: int) -> str:
        """Run Bland-rule simplex on columns ``< allowed``; returns a status."""
        A, b, basis = self.A, self.b, self.basis
        while True:
            cb = [c[k] for k in basis]
            entering = None
            for j in range(allowed):
                if j in basis:
                    continue
                reduced = c[j] - sum((cb[i] * A[i][j] for i in range(len(A))), Fraction(0))
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            leave = None
            best = None
            for i in range(len(A)):
                a = A[i][entering]
                if a > 0:
                    ratio = b[i] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return "unbounded"
            self.pivot(leave, entering)


def solve_lp(lp: LinearProgram) -> LPResult:
    """Exact optimum of ``lp`` by two-phase simplex with Bland's rule."""
    # column map: original var -> (plus column, minus column or None)
    cols: list[tuple[int, int | None]] = []
    width = 0
    for free in lp.free:
        if free:
            cols.append((width, width + 1))
            width += 2
        else:
            cols.append((width, None))
            width += 1
    struct = width

    rows, rhs, kinds = [], [], []
    for con in lp.constraints:
        row = [Fraction(0)] * struct
        for v, a in enumerate(con.coeffs):
            plus, minus = cols[v]
            row[plus] += a
            if minus is not None:
                row[minus] -= a
        rel, r = con.relation, con.rhs
        if r < 0:
            row = [-a for a in row]
            r = -r
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        rows.append(row)
        rhs.append(r)
        kinds.append(rel)

    m = len(rows)
    n_slack = sum(1 for k in kinds if k != EQ)
    n_art = sum(1 for k in kinds if k != LE)
    total = struct + n_slack + n_art
    A = []
    basis = []
    s_col, a_col = struct, struct + n_slack
    for row, kind in zip(rows, kinds):
        full = row + [Fraction(0)] * (n_slack + n_art)
        if kind == LE:
            full[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if kind == GE:
                full[s_col] = Fraction(-1)
                s_col += 1
            full[a_col] = Fraction(1)
            basis.append(a_col)
            a_col += 1
        A.append(full)

    tab = _Tableau(A, list(rhs), basis)
    first_art = struct + n_slack
    if n_art:
        phase1 = [Fraction(0)] * first_art + [Fraction(-1)] * n_art
        tab.maximize(phase1, total)
        infeas = sum((tab.b[i] for i in range(m) if tab.basis[i] >= first_art), Fraction(0))
        if infeas > 0:
            return LPResult("infeasible", iterations=tab.iterations)
        # drive zero-valued artificials out of the basis, drop redundant rows
        keep = []
        for i in range(m):
            if tab.basis[i] >= first_art:
                j = next((j for j in range(first_art) if tab.A[i][j] != 0), None)
                if j is None:
                    continue
                tab.pivot(i, j)
            keep.append(i)
        tab.A = [tab.A[i][:first_art] for i in keep]
        tab.b = [tab.b[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    sign = 1 if lp.sense == "max" else -1
    c = [Fraction(0)] * first_art
    for v, coef in enumerate(lp.objective):
        plus, minus = cols[v]
        c[plus] += sign * coef
        if minus is not None:
            c[minus] -= sign * coef
    status = tab.maximize(c, first_art)
    if status == "unbounded":
        return LPResult("unbounded", iterations=tab.iterations)

    x = [Fraction(0)] * first_art
    for i, j in enumerate(tab.basis):
        x[j] = tab.b[i]
    point = tuple(x[p] - (x[mi] if mi is not None else 0) for p, mi in cols)
    return LPResult("optimal", lp.evaluate(point), point, tab.iterations)


def build_dlpi(sit: PISituation, S: Coalition) -> LinearProgram:
    """Dual of the coalition's lot-sizing relaxation: price each period's demand.

    Variables are the free per-period prices; rows are the production caps
    followed by the holding and backlogging difference bounds.
    """
    params = aggregate(sit, S)
    T = params.horizon
    rows = []
    for t in range(T):
        e = [0] * T
        e[t] = 1
        rows.append((e, LE, params.production[t]))
    for t in range(T - 1):
        e = [0] * T
        e[t + 1], e[t] = 1, -1
        rows.append((e, LE, params.holding[t]))
    for t in range(T - 1):
        e = [0] * T
        e[t], e[t + 1] = 1, -1
        rows.append((e, LE, params.backlogging[t]))
    return make_lp("max", params.demand, rows, free=[True] * T)


def lp_value(sit: PISituation, S: Coalition) -> Fraction:
    res = solve_lp(build_dlpi(sit, S))
    if not res.optimal:
        raise RuntimeError(f"dual LP not optimal: {res.status}")
    return res.value
