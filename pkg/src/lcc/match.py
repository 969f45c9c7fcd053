"""Depth-one pattern matching compiled to case analysis.

A clause ``C x1 .. xk -> body`` becomes the branch ``C -> \\x1 .. xk. body``
and the whole program ``{branches} . scrutinee``; CaseApp then delivers the
constructor's arguments to the branch one by one.

    program := ("constructors" Ctor ("," Ctor)* ";")?
               "match" term "with" "|"? clause ("|" clause)*
    clause  := Ctor var* "->" term
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import Parser, ParseError, UndeclaredConstructor
from .terms import Binding, Case, Signature, SignatureError, Term, lams


@dataclass(frozen=True)
class Clause:
    constructor: str
    variables: tuple[str, ...]
    body: Term


@dataclass(frozen=True)
class MatchProgram:
    scrutinee: Term
    clauses: tuple[Clause, ...]
    signature: Signature | None = None


class DuplicateClause(SignatureError):
    def __init__(self, name: str):
        super().__init__(f"duplicate clause for constructor {name!r}")
        self.name = name


def compile_match(program: MatchProgram) -> Term:
    seen: set[str] = set()
    branches = []
    for cl in program.clauses:
        if cl.constructor in seen:
            raise DuplicateClause(cl.constructor)
        if program.signature is not None and cl.constructor not in program.signature:
            raise UndeclaredConstructor(cl.constructor, 0, 0)
        if len(set(cl.variables)) != len(cl.variables):
            raise SignatureError(f"repeated pattern variable in clause {cl.constructor}")
        seen.add(cl.constructor)
        branches.append((cl.constructor, lams(cl.variables, cl.body)))
    return Case(Binding(tuple(branches)), program.scrutinee)


class _MatchParser(Parser):
    def program(self) -> MatchProgram:
        self.header()
        self.expect("match")
        scrutinee = self.match_term()
        self.expect("with")
        if self.peek().kind == "|":
            self.advance()
        clauses = [self.clause()]
        while self.peek().kind == "|":
            self.advance()
            clauses.append(self.clause())
        self.expect("eof")
        names = [c.constructor for c in clauses]
        for i, c in enumerate(names):
            if c in names[:i]:
                raise DuplicateClause(c)
        return MatchProgram(scrutinee, tuple(clauses), self.signature())

    def match_term(self) -> Term:
        return self.term()

    def clause(self) -> Clause:
        tok = self.expect("ctor")
        c = self.constructor(tok)
        xs = []
        while self.peek().kind == "ident":
            xs.append(self.advance().text)
        self.expect("arrow")
        body = self.term()
        return Clause(c, tuple(xs), body)


def parse_match(text: str, signature: Signature | None = None) -> MatchProgram:
    """Parse a match program; an unparenthesised body ends at the next ``|``."""
    return _MatchParser(text, signature).program()


__all__ = [
    "Clause",
    "DuplicateClause",
    "MatchProgram",
    "ParseError",
    "compile_match",
    "parse_match",
]
