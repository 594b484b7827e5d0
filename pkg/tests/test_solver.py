from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pigames.instances import EX1, EX1_PRIME
from pigames.model import PISituation, coalitions, subsets
from pigames.solver import (
    OracleTooLarge,
    aggregate,
    build_game,
    char_value,
    dual_solution,
    oracle_cost,
    primal_plan,
)

from strategies import situation_and_coalition, situations

F = Fraction


def zero_demand(sit):
    return PISituation(sit.players, sit.horizon, tuple((0,) * sit.horizon for _ in sit.players),
                       sit.production, sit.holding, sit.backlogging)


def test_aggregate_ex1():
    both = aggregate(EX1, 0b11)
    assert both.demand == (1, 2)
    assert both.production == (1, 1)
    assert both.holding == (1,) and both.backlogging == (1,)
    one = aggregate(EX1, 0b01)
    assert one.production == (2, 1) and one.demand == (1, 0)


@given(situations())
def test_aggregate_singleton_is_the_row(sit):
    for i in range(sit.n):
        p = aggregate(sit, 1 << i)
        assert (p.demand, p.production, p.holding, p.backlogging) == sit.rows(i)


def test_dual_solution_ex1():
    # period 1: min{2, 1 + 1} = 2; period 2: min{1, 2 + 1} = 1
    assert dual_solution(EX1, 0b01) == (2, 1)
    assert dual_solution(EX1, 0b11) == (1, 1)


def test_single_period_dual_is_production_cost():
    sit = PISituation(("a",), 1, ((3,),), ((F(7, 2),),), ((),), ((),))
    assert dual_solution(sit, 1) == (F(7, 2),)
    assert char_value(sit, 1) == F(21, 2)


@pytest.mark.parametrize("sit", [EX1, EX1_PRIME], ids=["EX1", "EX1'"])
def test_char_values_of_the_example(sit):
    game = build_game(sit)
    assert [game(S) for S in coalitions(2)] == [2, 2, 3]


@given(situations())
def test_zero_demand_costs_nothing(sit):
    game = build_game(zero_demand(sit))
    assert all(v == 0 for v in game.values.values())


def test_one_player_game():
    sit = PISituation(("a",), 2, ((1, 1),), ((1, 5),), ((1,),), ((1,),))
    assert dict(build_game(sit).values) == {1: F(3)}


def test_primal_plan_examples():
    plan = primal_plan(EX1, 0b11)
    assert plan.production == (1, 2) and plan.inventory == (0,) and plan.backlog == (0,)
    # both serving periods cost 2 for period 1; the earlier one wins
    plan = primal_plan(EX1, 0b01)
    assert plan.production == (1, 0)
    assert plan.cost(aggregate(EX1, 0b01)) == 2
    zplan = primal_plan(zero_demand(EX1), 0b11)
    assert zplan.production == (0, 0) and zplan.cost(aggregate(EX1, 0b11)) == 0


def test_oracle_examples():
    assert oracle_cost(EX1, 0b11) == 3
    assert oracle_cost(EX1, 0b10) == 2
    assert oracle_cost(zero_demand(EX1), 0b11) == 0


def test_oracle_guard():
    sit = PISituation(("a",), 2, ((7, 7),), ((1, 1),), ((1,),), ((1,),))
    with pytest.raises(OracleTooLarge):
        oracle_cost(sit, 1)
    assert oracle_cost(sit, 1, max_units=14) == 14
    long = PISituation(("a",), 7, ((0,) * 7,), ((1,) * 7,), ((1,) * 6,), ((1,) * 6,))
    with pytest.raises(OracleTooLarge):
        oracle_cost(long, 1)


@given(situation_and_coalition(max_demand=2, max_players=3))
def test_closed_form_matches_brute_force(case):
    sit, S = case
    assert char_value(sit, S) == oracle_cost(sit, S, max_units=48)


@given(situation_and_coalition())
def test_dual_is_feasible(case):
    sit, S = case
    p = aggregate(sit, S)
    y = dual_solution(sit, S)
    for t in range(sit.horizon):
        assert y[t] <= p.production[t]
    for t in range(sit.horizon - 1):
        assert y[t + 1] - y[t] <= p.holding[t]
        assert y[t] - y[t + 1] <= p.backlogging[t]


@given(situations(max_players=4), st.data())
def test_dual_prices_fall_as_coalitions_grow(sit, data):
    R = data.draw(st.integers(1, sit.grand))
    S = data.draw(st.sampled_from(list(subsets(R))))
    yS, yR = dual_solution(sit, S), dual_solution(sit, R)
    assert all(a >= b for a, b in zip(yS, yR))


@given(situation_and_coalition())
def test_primal_plan_is_feasible_and_optimal(case):
    sit, S = case
    params = aggregate(sit, S)
    plan = primal_plan(sit, S)
    assert plan.is_feasible(params)
    assert all(isinstance(v, int) and v >= 0 for v in plan.production + plan.inventory + plan.backlog)
    assert plan.cost(params) == char_value(sit, S)


@given(situations(min_players=2), st.data())
def test_adding_a_player_only_cheapens_costs(sit, data):
    S = data.draw(st.integers(1, sit.grand - 1))
    extra = data.draw(st.sampled_from([i for i in range(sit.n) if not S >> i & 1]))
    small, big = aggregate(sit, S), aggregate(sit, S | 1 << extra)
    assert all(a <= b for a, b in zip(small.demand, big.demand))
    for field in ("production", "holding", "backlogging"):
        assert all(a >= b for a, b in zip(getattr(small, field), getattr(big, field)))


@given(situations())
def test_build_game_agrees_with_char_value(sit):
    game = build_game(sit)
    assert all(game(S) == char_value(sit, S) for S in coalitions(sit.n))
