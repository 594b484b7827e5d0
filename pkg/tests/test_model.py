import json
from fractions import Fraction

import pytest
from hypothesis import given

from pigames.instances import EX1
from pigames.model import (
    SituationError,
    TUGame,
    coalition_key,
    coalitions,
    game_from_dict,
    game_to_dict,
    mask_of,
    members,
    parse_coalition,
    read_game,
    read_situation,
    restrict,
    situation_to_dict,
    to_fraction,
    validate,
    write_game,
    write_situation,
)

from strategies import situation_and_coalition, situations

EX1_RAW = {
    "players": ["P1", "P2"],
    "T": 2,
    "demand": [[1, 0], [0, 2]],
    "production": [[2, 1], [1, 1]],
    "holding": [[1], [2]],
    "backlogging": [[1], [2]],
}


def test_ex1_validates():
    sit = validate(EX1_RAW)
    assert sit.n == 2 and sit.horizon == 2
    assert sit.demand == ((1, 0), (0, 2))
    assert sit.holding == ((1,), (2,))


@pytest.mark.parametrize(
    "patch, fragment",
    [
        ({"demand": [[-1, 0], [0, 2]]}, "negative demand"),
        ({"demand": [[1, 0.5], [0, 2]]}, "non-integer demand"),
        ({"production": [[2, -1], [1, 1]]}, "negative cost"),
        ({"production": [[2], [1, 1]]}, "expected 2"),
        ({"players": ["P1", "P1"]}, "duplicate player"),
        ({"T": 0}, "T must be >= 1"),
        ({"holding": [[1]]}, "expected 2 rows"),
    ],
)
def test_validation_errors(patch, fragment):
    with pytest.raises(SituationError) as exc:
        validate({**EX1_RAW, **patch})
    assert any(fragment in p for p in exc.value.problems)


def test_all_violations_are_listed():
    raw = {**EX1_RAW, "demand": [[-1, 0], [0, 2]], "production": [[2, -1], [1, 1]]}
    with pytest.raises(SituationError) as exc:
        validate(raw)
    assert len(exc.value.problems) == 2


def test_full_length_holding_row_is_truncated_with_warning():
    raw = {**EX1_RAW, "holding": [[1, 7], [2, 7]], "backlogging": [[1, 9], [2, 9]]}
    with pytest.warns(UserWarning, match="final period"):
        sit = validate(raw)
    assert sit == EX1


def test_rationals_accept_strings_and_decimals():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(0.1) == Fraction(1, 10)
    assert to_fraction("2.5") == Fraction(5, 2)
    with pytest.raises(TypeError):
        to_fraction(True)


def test_player_cap():
    raw = {"players": list(range(25)), "T": 1, "demand": [[0]] * 25, "production": [[0]] * 25}
    with pytest.raises(SituationError, match="cap"):
        validate(raw)


def test_restrict_examples():
    one = restrict(EX1, 0b01)
    assert one.players == ("P1",)
    assert one.demand == ((1, 0),)
    assert one.production == ((2, 1),)
    assert one.holding == ((1,),) and one.backlogging == ((1,),)
    two = restrict(EX1, 0b10)
    assert two.demand == ((0, 2),) and two.production == ((1, 1),)
    assert restrict(EX1, EX1.grand) == EX1
    with pytest.raises(ValueError):
        restrict(EX1, 0)


@given(situation_and_coalition())
def test_restrict_idempotent(case):
    sit, S = case
    once = restrict(sit, S)
    assert restrict(once, once.grand) == once
    assert once.n == bin(S).count("1")


def test_coalition_order():
    assert list(coalitions(1)) == [0b1]
    assert list(coalitions(2)) == [0b01, 0b10, 0b11]
    assert [members(S) for S in coalitions(3)] == [
        [0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]
    ]


@pytest.mark.parametrize("n", range(1, 9))
def test_coalition_count(n):
    masks = list(coalitions(n))
    assert len(masks) == len(set(masks)) == 2**n - 1


def test_coalition_keys():
    assert coalition_key(mask_of([0, 2])) == "1,3"
    assert parse_coalition("1, 3", 3) == 0b101
    for bad in ("", "0", "4", "1,1", "x"):
        with pytest.raises(SituationError):
            parse_coalition(bad, 3)


@given(situations())
def test_situation_file_round_trip(tmp_path_factory, sit):
    path = tmp_path_factory.mktemp("sit") / "s.json"
    write_situation(sit, path)
    back = read_situation(path)
    assert back == sit
    write_situation(back, path.with_name("t.json"))
    assert path.read_bytes() == path.with_name("t.json").read_bytes()


def test_situation_json_uses_num_den_strings():
    sit = validate({**EX1_RAW, "production": [["3/2", 1], [1, "0.25"]]})
    data = situation_to_dict(sit)
    assert data["production"] == [["3/2", 1], [1, "1/4"]]
    assert json.loads(json.dumps(data)) == data


def test_game_file_round_trip(tmp_path):
    game = TUGame(("a", "b"), {1: Fraction(2), 2: Fraction(5, 2), 3: Fraction(3)})
    assert game_to_dict(game)["values"] == {"1": 2, "2": "5/2", "1,2": 3}
    write_game(game, tmp_path / "g.json")
    assert read_game(tmp_path / "g.json") == game


def test_game_file_missing_coalition():
    with pytest.raises(SituationError, match="missing"):
        game_from_dict({"players": [1, 2], "values": {"1": 0, "2": 1}})


def test_subgame_reindexes():
    game = TUGame(("a", "b", "c"), {S: Fraction(S) for S in coalitions(3)})
    sub = game.subgame(0b101)
    assert sub.players == ("a", "c")
    assert sub(0b01) == 1 and sub(0b10) == 4 and sub(0b11) == 5
