"""Sweep a random corpus: closed form vs brute force vs LP, core, PMAS, axioms.

    python scripts/corpus_check.py --count 500 --seed 1
"""

import argparse
import time

from pigames import axioms as ax
from pigames.allocation import in_core, owen_point, pmas
from pigames.generate import corpus
from pigames.lp import lp_value
from pigames.model import coalitions
from pigames.solver import build_game, char_value, oracle_cost


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--players", type=int, default=4)
    parser.add_argument("--periods", type=int, default=4)
    parser.add_argument("--demand", type=int, default=3)
    parser.add_argument("--axioms", action="store_true", help="also run the Owen axiom checks")
    args = parser.parse_args()

    sits = corpus(args.count, args.seed, max_players=args.players,
                  max_periods=args.periods, max_demand=args.demand)
    units = args.players * args.periods * args.demand
    start = time.perf_counter()
    counts = dict(coalitions=0, oracle=0, core=0, pmas=0, axioms=0)
    for k, sit in enumerate(sits):
        game = build_game(sit)
        for S in coalitions(sit.n):
            counts["coalitions"] += 1
            counts["oracle"] += char_value(sit, S) == oracle_cost(sit, S, max_units=units) == lp_value(sit, S)
        counts["core"] += bool(in_core(game, owen_point(sit)))
        counts["pmas"] += pmas(sit).is_valid(game)
        if args.axioms:
            counts["axioms"] += all(ax.check_all(ax.OWEN, sit, seed=k).values())
    elapsed = time.perf_counter() - start

    print(f"{counts['oracle']}/{counts['coalitions']} coalitions: closed-form = oracle = LP")
    print(f"{counts['core']}/{len(sits)} Owen points in the core")
    print(f"{counts['pmas']}/{len(sits)} valid dual-price schemes")
    if args.axioms:
        print(f"{counts['axioms']}/{len(sits)} situations where Owen passes all axioms")
    print(f"{elapsed:.1f}s")


if __name__ == "__main__":
    main()
