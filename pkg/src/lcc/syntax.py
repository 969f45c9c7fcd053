"""Concrete syntax.

    file      := ("constructors" Ctor ("," Ctor)* ";")? term (";;" term)*
    term      := "\\" var+ "." term | app
    app       := atom+ ("\\" var+ "." term)?
    atom      := var | Ctor | "(" term ")" | caseblock "." atom
    caseblock := "{" (branch (";" branch)*)? "}"
    branch    := Ctor "->" term

Variables start with a lowercase letter or underscore, constructors with an
uppercase letter.  ``λ`` and ``→`` are accepted for ``\\`` and ``->``;
``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .terms import (
    App,
    Binding,
    Case,
    Cons,
    Lam,
    Signature,
    SignatureError,
    Term,
    Var,
    constructors_of,
)

KEYWORDS = {"constructors", "match", "with"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.message = message
        self.line = line
        self.col = col


class UndeclaredConstructor(SignatureError):
    def __init__(self, name: str, line: int, col: int):
        super().__init__(f"undeclared constructor {name!r} at line {line}, column {col}")
        self.name = name
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<arrow>->|→)
  | (?P<sep>;;)
  | (?P<lam>\\|λ)
  | (?P<ctor>[A-Z][A-Za-z0-9_']*)
  | (?P<ident>[a-z_][A-Za-z0-9_']*)
  | (?P<punct>[.(){};,|])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ident" and chunk in KEYWORDS:
            kind = chunk
        elif kind == "punct":
            kind = chunk
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    col = pos - line_start + 1
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass(frozen=True)
class SourceUnit:
    signature: Signature
    terms: tuple[Term, ...]
    declared: bool

    @property
    def term(self) -> Term:
        return self.terms[0]


class Parser:
    def __init__(self, text: str, signature: Signature | None = None):
        self.tokens = tokenize(text)
        self.i = 0
        self.declared: list[str] | None = list(signature) if signature is not None else None
        self.seen: dict[str, None] = {}

    # token helpers
    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", tok.line, tok.col)
        return self.advance()

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)

    # grammar
    def header(self) -> bool:
        if self.peek().kind != "constructors":
            return False
        self.advance()
        names = [self.expect("ctor").text]
        while self.peek().kind == ",":
            self.advance()
            names.append(self.expect("ctor").text)
        self.expect(";")
        if len(set(names)) != len(names):
            raise self.error("duplicate constructor in declaration")
        self.declared = names
        return True

    def constructor(self, tok: Token) -> str:
        name = tok.text
        if self.declared is not None and name not in self.declared:
            raise UndeclaredConstructor(name, tok.line, tok.col)
        self.seen.setdefault(name)
        return name

    def term(self) -> Term:
        if self.peek().kind == "lam":
            return self.abstraction()
        return self.app()

    def abstraction(self) -> Term:
        self.expect("lam")
        binders = [self.expect("ident").text]
        while self.peek().kind == "ident":
            binders.append(self.advance().text)
        self.expect(".")
        body = self.term()
        for x in reversed(binders):
            body = Lam(x, body)
        return body

    _ATOM_START = {"ident", "ctor", "(", "{"}

    def app(self) -> Term:
        if self.peek().kind not in self._ATOM_START:
            tok = self.peek()
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected a term, found {got}", tok.line, tok.col)
        t = self.atom()
        while self.peek().kind in self._ATOM_START:
            t = App(t, self.atom())
        if self.peek().kind == "lam":
            t = App(t, self.abstraction())
        return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "ctor":
            self.advance()
            return Cons(self.constructor(tok))
        if tok.kind == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        if tok.kind == "{":
            binding = self.caseblock()
            self.expect(".")
            return Case(binding, self.atom())
        raise self.error(f"unexpected {tok.text!r}")

    def caseblock(self) -> Binding:
        self.expect("{")
        branches: list[tuple[str, Term]] = []
        if self.peek().kind != "}":
            branches.append(self.branch())
            while self.peek().kind == ";":
                self.advance()
                branches.append(self.branch())
        names = [c for c, _ in branches]
        if len(set(names)) != len(names):
            raise self.error("duplicate constructor in case-binding")
        self.expect("}")
        return Binding(tuple(branches))

    def branch(self) -> tuple[str, Term]:
        tok = self.expect("ctor")
        c = self.constructor(tok)
        self.expect("arrow")
        return c, self.term()

    def signature(self) -> Signature:
        if self.declared is not None:
            return Signature(tuple(self.declared))
        if not self.seen:
            # a term without constructors still needs c1 for completion
            return Signature(("C0",))
        return Signature(tuple(self.seen))


def parse_source(text: str, signature: Signature | None = None) -> SourceUnit:
    """Parse a whole file: optional declaration, then one or more terms."""
    p = Parser(text, signature)
    declared = p.header()
    terms = [p.term()]
    while p.peek().kind == "sep":
        p.advance()
        terms.append(p.term())
    p.expect("eof")
    return SourceUnit(p.signature(), tuple(terms), declared or signature is not None)


def parse(text: str, signature: Signature | None = None) -> Term:
    """Parse a single term (a declaration header is allowed)."""
    unit = parse_source(text, signature)
    if len(unit.terms) != 1:
        raise ParseError("expected exactly one term", 1, 1)
    return unit.term


def parse_with_signature(text: str, signature: Signature | None = None) -> tuple[Term, Signature]:
    unit = parse_source(text, signature)
    return unit.term, unit.signature


# -- printing ------------------------------------------------------------------


def show(t: Term) -> str:
    """Print `t` in the concrete syntax with minimal parentheses."""
    out: list[str] = []
    _term(t, out)
    return "".join(out)


def _term(t: Term, out: list[str]) -> None:
    if isinstance(t, Lam):
        binders = []
        while isinstance(t, Lam):
            binders.append(t.binder)
            t = t.body
        out.append("\\" + " ".join(binders) + ". ")
        _term(t, out)
    else:
        _app(t, out)


def _app(t: Term, out: list[str]) -> None:
    if isinstance(t, App):
        _app(t.fun, out)
        out.append(" ")
        _atom(t.arg, out)
    else:
        _atom(t, out)


def _atom(t: Term, out: list[str]) -> None:
    match t:
        case Var(name) | Cons(name):
            out.append(name)
        case Case(binding, u):
            _binding(binding, out)
            out.append(" . ")
            _atom(u, out)
        case _:
            out.append("(")
            _term(t, out)
            out.append(")")


def _binding(binding: Binding, out: list[str]) -> None:
    out.append("{")
    for i, (c, u) in enumerate(binding):
        if i:
            out.append("; ")
        out.append(f"{c} -> ")
        _term(u, out)
    out.append("}")


def show_binding(binding: Binding) -> str:
    out: list[str] = []
    _binding(binding, out)
    return "".join(out)


def show_source(unit_or_term: SourceUnit | Term, signature: Signature | None = None) -> str:
    if isinstance(unit_or_term, SourceUnit):
        signature = unit_or_term.signature
        terms = unit_or_term.terms
    else:
        terms = (unit_or_term,)
    body = " ;; ".join(show(t) for t in terms)
    if signature is None:
        return body
    return f"constructors {', '.join(signature)};\n{body}"


def normalize_whitespace(s: str) -> str:
    return " ".join(s.split())


def iter_tokens(text: str) -> Iterator[str]:
    for tok in tokenize(text):
        if tok.kind != "eof":
            yield tok.text


def merge_signatures(units: list[SourceUnit]) -> Signature:
    """Signature shared by several inputs.

    Declared signatures must agree; undeclared constructors are appended in
    first-occurrence order.
    """
    declared = [u.signature for u in units if u.declared]
    for s in declared[1:]:
        if s != declared[0]:
            raise SignatureError(
                f"conflicting declarations {list(declared[0])} and {list(s)}"
            )
    if declared:
        base = declared[0]
        for u in units:
            for t in u.terms:
                for c in constructors_of(t):
                    if c not in base:
                        raise SignatureError(f"undeclared constructor {c!r}")
        return base
    names: list[str] = []
    for u in units:
        for t in u.terms:
            names.extend(constructors_of(t))
    names = list(dict.fromkeys(names))
    return Signature(tuple(names)) if names else units[0].signature
