"""Small named situations used by the tests, the CLI and the axiom suite."""

from .model import validate

# Two players, two periods; game (2, 2, 3), Owen point (1, 2).
EX1 = validate(
    {
        "players": ["P1", "P2"],
        "T": 2,
        "demand": [[1, 0], [0, 2]],
        "production": [[2, 1], [1, 1]],
        "holding": [[1], [2]],
        "backlogging": [[1], [2]],
    }
)

# Same game as EX1 but Owen point (2, 1).
EX1_PRIME = validate(
    {
        "players": ["P1", "P2"],
        "T": 2,
        "demand": [[0, 2], [1, 0]],
        "production": [[1, 1], [2, 1]],
        "holding": [[2], [3]],
        "backlogging": [[2], [2]],
    }
)

# |N| = T = 2 with c(N) = 6 <= c({1}) = 11, c({2}) = 22 and Owen (2, 4), so the
# equal split (3, 3) differs from the Owen point.
EQUAL_SPLIT_WITNESS = validate(
    {
        "players": ["P1", "P2"],
        "T": 2,
        "demand": [[1, 1], [2, 2]],
        "production": [[1, 10], [10, 1]],
        "holding": [[10], [10]],
        "backlogging": [[10], [10]],
    }
)

# |N| = 2, T = 1, p1 = 1 < p2 = 2, and only player 2 has demand.
REBATE_WITNESS = validate(
    {
        "players": ["P1", "P2"],
        "T": 1,
        "demand": [[0], [1]],
        "production": [[1], [2]],
    }
)

# Player 2 is inessential while c(N) = 3 exceeds c({1}) = c(N \ {2}) = 2.
DUMP_WITNESS = EX1_PRIME
