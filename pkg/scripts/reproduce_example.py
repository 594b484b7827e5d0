"""Print the two-player, two-period example: coalition data, game, Owen points."""

from pigames.allocation import essential_players, owen_point
from pigames.instances import EX1, EX1_PRIME
from pigames.model import coalitions, format_fraction as F, members
from pigames.solver import aggregate, char_value


def table(sit, label):
    print(label)
    print(f"{'S':<8}{'d1':>4}{'d2':>4}{'p1':>4}{'p2':>4}{'h1':>4}{'b1':>4}{'c':>4}")
    for S in coalitions(sit.n):
        p = aggregate(sit, S)
        name = "{" + ",".join(str(i + 1) for i in members(S)) + "}"
        cells = [*p.demand, *p.production, *p.holding, *p.backlogging, char_value(sit, S)]
        print(f"{name:<8}" + "".join(f"{F(c):>4}" for c in cells))
    print(f"Owen point: {owen_point(sit)}")
    print(f"essential players: {sorted(essential_players(sit).essential) or 'none'}")
    print()


if __name__ == "__main__":
    table(EX1, "situation (N, D, R)")
    table(EX1_PRIME, "situation (N, D', R')")
