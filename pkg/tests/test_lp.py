from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from pigames.instances import EX1
from pigames.lp import EQ, GE, LE, build_dlpi, lp_value, make_lp, solve_lp
from pigames.solver import char_value, dual_solution

from strategies import situation_and_coalition

F = Fraction


def test_trivial_max():
    res = solve_lp(make_lp("max", [1], [([1], LE, 5)]))
    assert res.optimal and res.value == 5 and res.point == (5,)


def test_free_variable_min():
    # min y s.t. y >= -3, y free
    res = solve_lp(make_lp("min", [1], [([1], GE, -3)], free=[True]))
    assert res.value == -3 and res.point == (-3,)


def test_infeasible_and_unbounded():
    assert solve_lp(make_lp("max", [1], [([1], LE, 1), ([1], GE, 2)])).status == "infeasible"
    assert solve_lp(make_lp("max", [1, 1], [([1, -1], LE, 1)])).status == "unbounded"


def test_equality_and_redundant_rows():
    lp = make_lp("max", [1, 2], [([1, 1], EQ, 4), ([2, 2], EQ, 8), ([0, 1], LE, F(5, 2))])
    res = solve_lp(lp)
    assert res.value == F(13, 2) and res.point == (F(3, 2), F(5, 2))


def test_degenerate_problem_terminates():
    # Beale's classic cycling example; Bland's rule must terminate
    lp = make_lp(
        "max",
        [F(3, 4), -150, F(1, 50), -6],
        [
            ([F(1, 4), -60, F(-1, 25), 9], LE, 0),
            ([F(1, 2), -90, F(-1, 50), 3], LE, 0),
            ([0, 0, 1, 0], LE, 1),
        ],
    )
    res = solve_lp(lp)
    assert res.optimal and res.value == F(1, 20)
    assert res.iterations < 50


def test_dlpi_shape_two_periods():
    lp = build_dlpi(EX1, 0b11)
    assert lp.sense == "max" and lp.objective == (1, 2)
    rows = [(c.coeffs, c.relation, c.rhs) for c in lp.constraints]
    assert rows == [
        ((1, 0), LE, 1),
        ((0, 1), LE, 1),
        ((-1, 1), LE, 1),
        ((1, -1), LE, 1),
    ]
    assert all(lp.free)


def test_dlpi_single_period():
    lp = build_dlpi(EX1.__class__(("a",), 1, ((2,),), ((F(5),),), ((),), ((),)), 1)
    assert len(lp.constraints) == 1
    assert solve_lp(lp).value == 10


def test_dlpi_values_on_example():
    assert lp_value(EX1, 0b11) == 3
    assert lp_value(EX1, 0b10) == 2
    res = solve_lp(build_dlpi(EX1, 0b01))
    assert res.value == 2
    assert res.point[0] == 2  # demand only in period 1 pins y_1


@given(situation_and_coalition(max_periods=5))
def test_lp_matches_closed_form(case):
    sit, S = case
    lp = build_dlpi(sit, S)
    res = solve_lp(lp)
    assert res.optimal
    assert res.value == char_value(sit, S)
    assert lp.is_feasible(res.point)
    assert lp.is_feasible(dual_solution(sit, S))
    assert res.iterations <= 200


@given(
    st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                       st.sampled_from([LE, GE, EQ]), st.integers(-5, 5)),
             min_size=1, max_size=4),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
)
def test_random_lps_are_consistent(rows, obj):
    lp = make_lp("max", obj, rows + [([1, 0, 0], LE, 4), ([0, 1, 0], LE, 4), ([0, 0, 1], LE, 4)])
    res = solve_lp(lp)
    # bounded box with non-negative vars: never unbounded
    assert res.status in ("optimal", "infeasible")
    if res.optimal:
        assert lp.is_feasible(res.point)
        # brute force over the integer grid cannot beat it
        for x in range(5):
            for y in range(5):
                for z in range(5):
                    if lp.is_feasible((x, y, z)):
                        assert lp.evaluate((x, y, z)) <= res.value
    else:
        for x in range(5):
            for y in range(5):
                for z in range(5):
                    assert not lp.is_feasible((x, y, z))
