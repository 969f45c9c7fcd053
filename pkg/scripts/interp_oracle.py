"""Compare interpret with the compositional construction on random terms.

Prints verdict counts and the distribution of contractions spent, for a
chosen fuel and probe split, e.g. ``--outermost 0.25 --innermost 0.0``.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
from collections import Counter

from lcc.config import SearchConfig
from lcc.equivalence import convertible
from lcc.generate import GenConfig, TermGenerator, random_context
from lcc.per_model import interpret, interpret_figure3
from lcc.terms import Signature


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--max-size", type=int, default=10)
    ap.add_argument("--fuel", type=int, default=500)
    ap.add_argument("--outermost", type=float, default=SearchConfig.outermost_share)
    ap.add_argument("--innermost", type=float, default=SearchConfig.innermost_share)
    ap.add_argument("--seed", type=int, default=9)
    args = ap.parse_args()
    sys.setrecursionlimit(10_000)

    sig = Signature(("C0", "C1", "S"))
    config = SearchConfig(fuel=args.fuel, outermost_share=args.outermost,
                          innermost_share=args.innermost)
    rng = random.Random(args.seed)
    gen = TermGenerator(GenConfig(max_size=args.max_size, signature=sig), rng)
    outcomes, spent = Counter(), []
    for _ in range(args.count):
        ctx = random_context(rng, ("x", "y"), 2)
        t = gen.sample(ctx)
        v = convertible(interpret(ctx, t, sig).rep, interpret_figure3(ctx, t, sig).rep, config=config)
        outcomes[v.outcome.value] += 1
        if v.proved:
            spent.append(v.explored)
    print(", ".join(f"{k} {n}" for k, n in sorted(outcomes.items())))
    if spent:
        print(f"contractions when Proved: median {statistics.median(spent)}, max {max(spent)}")


if __name__ == "__main__":
    main()
