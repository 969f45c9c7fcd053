"""Run the completion lemma checks on random defined terms and tally verdicts.

For the postponement check, also classify each failing step by whether its
redex is a case sitting in the scrutinee of another case, and print the
smallest counterexamples found.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from lcc.completion import (
    check_cnf_cpl,
    check_cpl_red_cc,
    check_cpl_red_lcm,
    check_lcm_cnf,
    check_red_cpl,
)
from lcc.generate import GenConfig, TermGenerator
from lcc.rewrite import LCM, normalize_cc, one_step_reducts, subterm_at
from lcc.search import find_reduct
from lcc.syntax import show
from lcc.terms import Case, Signature, alpha_key


def postponed(t, t2, fuel):
    target = alpha_key(normalize_cc(t2))
    found, _, _, exhausted = find_reduct(
        normalize_cc(t), lambda s: alpha_key(normalize_cc(s)) == target, LCM, fuel
    )
    return found is not None, exhausted


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--max-size", type=int, default=25)
    ap.add_argument("--fuel", type=int, default=200)
    ap.add_argument("--seed", type=int, default=4)
    ap.add_argument("--show", type=int, default=5, help="counterexamples to print")
    args = ap.parse_args()
    sys.setrecursionlimit(10_000)

    sig = Signature(("C0", "C1", "S"))
    lemmas = {
        "cpl simulates steps": lambda t: check_red_cpl(t, sig, args.fuel),
        "lcm steps reflect": lambda t: check_cpl_red_lcm(t, sig),
        "cc steps reflect": lambda t: check_cpl_red_cc(t, sig, args.fuel),
        "cnf and cpl commute": lambda t: check_cnf_cpl(t, sig),
        "postponement": lambda t: check_lcm_cnf(t, args.fuel),
    }
    gen = TermGenerator(GenConfig(max_size=args.max_size, signature=sig), args.seed)
    tally = {name: Counter() for name in lemmas}
    steps = Counter()
    failures = []
    for _ in range(args.count):
        t = gen.defined_term()
        for name, check in lemmas.items():
            tally[name][check(t).outcome.value] += 1
        for rule, pos, t2 in one_step_reducts(t, LCM):
            ok, exhausted = postponed(t, t2, args.fuel)
            nested = (bool(pos) and pos[-1] == "scrutinee"
                      and isinstance(subterm_at(t, pos), Case)
                      and isinstance(subterm_at(t, pos[:-1]), Case))
            steps[(rule.short, nested, "ok" if ok else "refuted" if exhausted else "unknown")] += 1
            if not ok and exhausted:
                failures.append((t.size, show(t), rule.long, list(pos)))

    for name, c in tally.items():
        print(f"{name:20} " + ", ".join(f"{k} {n}" for k, n in sorted(c.items())))
    print("\npostponement by step (rule, redex is a case in a case scrutinee, outcome):")
    for key, n in sorted(steps.items()):
        print(f"  {key}: {n}")
    print("\nsmallest refuted steps:")
    for _, text, rule, pos in sorted(failures)[: args.show]:
        print(f"  {text}   [{rule} at {pos}]")


if __name__ == "__main__":
    main()
