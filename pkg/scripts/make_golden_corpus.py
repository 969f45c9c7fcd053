"""Regenerate the parser round-trip corpus in tests/golden/.

Each file is the canonical printout of a source unit, with some of its
spaces reflowed into newlines or runs of spaces.  A handful of named
examples come first, the rest are seeded random terms.
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

from lcc.generate import GenConfig, TermGenerator
from lcc.syntax import parse_source, show_source
from lcc.terms import Signature

NAMED = {
    "pred": r"constructors C0, S; (\n. {C0 -> C0; S -> \x. x} . n) (S m)",
    "pred_two": r"constructors C0, S; (\n. {C0 -> C0; S -> \x. x} . n) (S (S C0))",
    "counterexample": r"constructors C1, C2; {C1 -> \y. y y} . C2 ;; {C2 -> \y. y} . C1",
    "church_pair": r"(\p. p (\x1 x2. x2)) (\f. f a b)",
    "omega": r"(\x. x x) (\x. x x)",
    "case_case": r"{C0 -> a; S -> b} . {C1 -> C0} . x",
    "case_lam": r"{C0 -> y} . (\x. x)",
    "failure": r"constructors C1, C2; {} . C1",
    "trailing_lambda": r"f (g \x. x)",
    "nested_case_argument": r"f ({C0 -> x} . y) z",
}

SIGNATURES = [
    Signature(("C0", "C1", "S")),
    Signature(("C1", "C2")),
    Signature(("Nil", "Cons", "Pair", "Zero", "Succ")),
]


def reflow(text: str, rng: random.Random) -> str:
    out = []
    for ch in text:
        if ch == " " and rng.random() < 0.15:
            out.append(rng.choice(["\n", "\n    ", "   ", "\t"]))
        else:
            out.append(ch)
    return "".join(out) + "\n"


def corpus(count: int, seed: int) -> dict[str, str]:
    rng = random.Random(seed)
    files = {}
    for name, src in NAMED.items():
        files[f"{len(files):03d}_{name}.lcc"] = reflow(show_source(parse_source(src)), rng)
    while len(files) < count:
        sig = rng.choice(SIGNATURES)
        cfg = GenConfig(max_size=rng.choice([5, 15, 30, 60]), signature=sig,
                        free=("x", "y", "f"), binders=("x", "y", "z", "w"))
        gen = TermGenerator(cfg, rng)
        terms = gen.many(rng.choice([1, 1, 1, 2]))
        body = " ;; ".join(show_source(t) for t in terms)
        files[f"{len(files):03d}_random.lcc"] = reflow(show_source(parse_source(body, sig)), rng)
    return files


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "tests" / "golden")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for old in args.out.glob("*.lcc"):
        old.unlink()
    for name, text in corpus(args.count, args.seed).items():
        (args.out / name).write_text(text, encoding="utf-8")
    print(f"wrote {args.count} files to {args.out}")


if __name__ == "__main__":
    main()
