"""Command-line front-end: ``lcc <subcommand> [inputs]``.

Inputs are files in the concrete syntax, or inline text given with ``-e``.
Exit codes: 0 success or Proved, 1 Refuted, 2 Unknown (fuel exhausted),
3 parse, signature or context error.  Errors are reported on stderr as a
single-line JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .completion import complete, is_defined, is_hereditarily_defined
from .config import default_fuel
from .equivalence import (
    NotHereditarilyDefined,
    check_completeness_pair,
    check_soundness,
    convertible,
)
from .match import compile_match, parse_match
from .per_model import ContextError, Diagram, check_diagram, interpret, interpret_figure3
from .rewrite import PRESETS, Step, measure, normalize_cc, reduce
from .syntax import ParseError, SourceUnit, merge_signatures, parse_source, show, show_source
from .terms import Signature, SignatureError, Term, check_signature
from .verdict import EXIT_CODES, Verdict

EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input that is not a parse or signature error."""


# -- input handling -----------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _signature_arg(text: str | None) -> Signature | None:
    if not text:
        return None
    return Signature(tuple(c.strip() for c in text.split(",") if c.strip()))


def _load(args: argparse.Namespace) -> tuple[list[Term], Signature]:
    texts = [_read(p) for p in args.inputs] + list(args.expr or [])
    if not texts:
        raise InputError("no input: give a file, '-' for stdin, or -e TEXT")
    declared = _signature_arg(args.constructors)
    units: list[SourceUnit] = [parse_source(t, declared) for t in texts]
    signature = declared or merge_signatures(units)
    terms = [t for u in units for t in u.terms]
    for t in terms:
        check_signature(t, signature)
    return terms, signature


def _exactly(terms: list[Term], n: int, command: str) -> list[Term]:
    if len(terms) != n:
        raise InputError(f"{command} expects {n} term(s), got {len(terms)}")
    return terms


def _fuel(args: argparse.Namespace) -> int:
    return default_fuel() if args.fuel is None else args.fuel


def _ctx(text: str | None) -> list[str]:
    if not text:
        return []
    return [x.strip() for x in text.split(",") if x.strip()]


# -- output ---------------------------------------------------------------------------


def _step_text(step: Step) -> str:
    pos = ".".join(step.position) or "root"
    return f"{step.rule.long} at {pos}: {show(step.after)}"


def _step_json(step: Step) -> str:
    return json.dumps({"rule": step.rule.short, "pos": list(step.position),
                       "term": show(step.after)}, ensure_ascii=False)


def _emit_trace(trace: Sequence[Step], mode: str | None, out) -> None:
    if mode is None:
        return
    fmt = _step_json if mode == "json" else _step_text
    for step in trace:
        print(fmt(step), file=out)


def _emit_verdict(v: Verdict, args: argparse.Namespace, out, label: str | None = None) -> int:
    if getattr(args, "json", False):
        obj = {"verdict": v.outcome.value, "explored": v.explored}
        if label:
            obj["check"] = label
        if v.note:
            obj["note"] = v.note
        if v.witness is not None:
            obj["witness"] = show(v.witness)
        print(json.dumps(obj, ensure_ascii=False), file=out)
    else:
        head = f"{label} {v.outcome.value}" if label else v.outcome.value
        print(head + (f"  ({v.note})" if v.note else ""), file=out)
        if v.witness is not None and getattr(args, "trace", None):
            print(f"witness: {show(v.witness)}", file=out)
    for i, trace in enumerate(v.traces):
        if getattr(args, "trace", None) and trace:
            print(f"# trace {i + 1}", file=out)
            _emit_trace(trace, args.trace, out)
    return EXIT_CODES[v.outcome]


def _error(kind: str, message: str, **extra) -> None:
    obj = {"error": kind, "message": message}
    obj.update(extra)
    print(json.dumps(obj, ensure_ascii=False), file=sys.stderr)


# -- subcommands ----------------------------------------------------------------------


def cmd_reduce(args, out) -> int:
    (t,), _ = _split(args, 1, "reduce")
    rules = PRESETS[args.rules]
    result, trace, exhausted = reduce(t, rules, _fuel(args))
    print(show(result), file=out)
    _emit_trace(trace, args.trace, out)
    return EXIT_UNKNOWN if exhausted else EXIT_OK


def cmd_normalize_cc(args, out) -> int:
    (t,), _ = _split(args, 1, "normalize-cc")
    print(show(normalize_cc(t)), file=out)
    return EXIT_OK


def cmd_complete(args, out) -> int:
    (t,), sig = _split(args, 1, "complete")
    print(show_source(complete(t, sig), sig), file=out)
    return EXIT_OK


def cmd_defined(args, out) -> int:
    (t,), _ = _split(args, 1, "defined")
    report = is_defined(t)
    if report.defined:
        print("defined", file=out)
        return EXIT_OK
    print("undefined", file=out)
    for pos in report.failure_positions:
        print("failure at " + (".".join(pos) or "root"), file=out)
    return EXIT_REFUTED


def cmd_hdef(args, out) -> int:
    (t,), _ = _split(args, 1, "hdef")
    return _emit_verdict(is_hereditarily_defined(t, _fuel(args)), args, out)


def cmd_equiv(args, out) -> int:
    (a, b), _ = _split(args, 2, "equiv")
    return _emit_verdict(convertible(a, b, fuel=_fuel(args), rules=PRESETS[args.rules]), args, out)


def cmd_interp(args, out) -> int:
    (t,), sig = _split(args, 1, "interp")
    ctx = _ctx(args.ctx)
    build = interpret_figure3 if args.figure3 else interpret
    m = build(ctx, t, sig)
    print(show(m.rep), file=out)
    return EXIT_OK


def _n_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise InputError(f"bad --n-range {text!r}, expected e.g. 1..3") from None


def cmd_check_diagrams(args, out) -> int:
    worst = EXIT_OK
    ns = _n_range(args.n_range)
    if ns.start < 1:
        raise InputError("signatures have at least one constructor")
    for n in ns:
        sig = Signature(tuple(f"C{i}" for i in range(1, n + 1)))
        for d in Diagram:
            v = check_diagram(d, sig, fuel=_fuel(args))
            code = _emit_verdict(v, args, out, label=f"n={n} {d.value}")
            worst = max(worst, code, key=_severity)
    return worst


def _severity(code: int) -> int:
    return {EXIT_OK: 0, EXIT_UNKNOWN: 1, EXIT_REFUTED: 2}[code]


def cmd_check_soundness(args, out) -> int:
    (t,), sig = _split(args, 1, "check-soundness")
    return _emit_verdict(check_soundness(t, _ctx(args.ctx), sig, _fuel(args)), args, out)


def cmd_check_completeness(args, out) -> int:
    (a, b), sig = _split(args, 2, "check-completeness")
    v = check_completeness_pair(a, b, sig, fuel=_fuel(args), hdef_fuel=args.hdef_fuel,
                                require_hdef=not args.skip_hdef)
    code = _emit_verdict(v, args, out)
    for label, part in zip(("completions", "originals"), v.parts):
        print(f"{label}: {part.outcome.value}", file=out)
    return code


def cmd_compile_match(args, out) -> int:
    texts = [_read(p) for p in args.inputs] + list(args.expr or [])
    if len(texts) != 1:
        raise InputError("compile-match expects exactly one program")
    program = parse_match(texts[0], _signature_arg(args.constructors))
    print(show(compile_match(program)), file=out)
    return EXIT_OK


def cmd_measure(args, out) -> int:
    (t,), _ = _split(args, 1, "measure")
    print(measure(t), file=out)
    return EXIT_OK


def _split(args, n: int, command: str) -> tuple[list[Term], Signature]:
    terms, sig = _load(args)
    return _exactly(terms, n, command), sig


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcc", description="Lambda calculus with constructors.")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name: str, fn, help: str, fuel: bool = False, trace: bool = False,
                verdict: bool = False) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("inputs", nargs="*", help="source files ('-' for stdin)")
        sp.add_argument("-e", "--expr", action="append", help="inline source text")
        sp.add_argument("--constructors", help="comma-separated signature, overriding declarations")
        if fuel:
            sp.add_argument("--fuel", type=int, default=None,
                            help="contraction budget (default: $LCC_DEFAULT_FUEL or 1000)")
        if trace:
            sp.add_argument("--trace", choices=["json", "text"], default=None)
        if verdict:
            sp.add_argument("--json", action="store_true", help="print verdicts as JSON")
        sp.set_defaults(fn=fn)
        return sp

    r = command("reduce", cmd_reduce, "reduce with the leftmost-outermost strategy", fuel=True, trace=True)
    r.add_argument("--rules", choices=sorted(PRESETS), default="all")
    command("normalize-cc", cmd_normalize_cc, "CaseCase normal form")
    command("complete", cmd_complete, "case-completion over the signature")
    command("defined", cmd_defined, "report match failures")
    command("hdef", cmd_hdef, "hereditary definedness", fuel=True, trace=True, verdict=True)
    e = command("equiv", cmd_equiv, "bounded convertibility", fuel=True, trace=True, verdict=True)
    e.add_argument("--rules", choices=sorted(PRESETS), default="all")
    i = command("interp", cmd_interp, "interpretation in the PER model")
    i.add_argument("--ctx", default="", help="comma-separated context variables")
    i.add_argument("--figure3", action="store_true", help="use the compositional construction")
    d = sub.add_parser("check-diagrams", help="check the six model diagrams")
    d.add_argument("--n-range", default="1..3")
    d.add_argument("--fuel", type=int, default=None)
    d.add_argument("--json", action="store_true")
    d.set_defaults(fn=cmd_check_diagrams, trace=None)
    s = command("check-soundness", cmd_check_soundness, "soundness on one-step reducts",
                fuel=True, trace=True, verdict=True)
    s.add_argument("--ctx", default="")
    c = command("check-completeness", cmd_check_completeness, "completeness on a pair",
                fuel=True, trace=True, verdict=True)
    c.add_argument("--hdef-fuel", type=int, default=None)
    c.add_argument("--skip-hdef", action="store_true",
                   help="do not require both terms to be hereditarily defined")
    command("compile-match", cmd_compile_match, "compile a match program")
    command("measure", cmd_measure, "the CaseCase termination measure")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, out)
    except ParseError as exc:
        _error("parse", exc.message, line=exc.line, col=exc.col)
    except SignatureError as exc:
        extra = {k: getattr(exc, k) for k in ("line", "col") if getattr(exc, k, 0)}
        _error("signature", str(exc), **extra)
    except ContextError as exc:
        _error("context", str(exc))
    except NotHereditarilyDefined as exc:
        _error("precondition", str(exc), verdict=exc.verdict.outcome.value)
        return EXIT_REFUTED if exc.verdict.refuted else EXIT_UNKNOWN
    except (InputError, OSError, ValueError) as exc:
        _error("input", str(exc))
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
