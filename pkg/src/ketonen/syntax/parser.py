"""Recursive-descent parser for the term and sequent text syntax.

Grammar (whitespace-insensitive)::

    type    := "0" | "1" | "(" type ("," type)* ")"
    term    := unary ("->" term)?                 right associative
    unary   := "~" unary | "all" bvar "." term | "lam" bvar+ "." term | postfix
    postfix := primary ("(" term ("," term)* ")")*
    primary := "a" nat ":" type | "x" nat ":" type | "'" ident
             | "$" ident "(" term ("," term)* ")" | "_|_" | ident | "(" term ")"

``_|_`` is ``(all x0:1 . x0:1)`` and ``~A`` is ``(A -> _|_)``.  Bare identifiers
are atoms of type 1 and are only accepted when an atom table is supplied.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import MutableMapping

from .terms import (
    BOT,
    Apply,
    BoundVar,
    Forall,
    FreeVar,
    FunApp,
    IllTyped,
    Implies,
    Lambda,
    ObjectSym,
    Term,
    Type,
    UnboundBoundVariable,
    canonical,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<turnstile>\|-)
  | (?P<arrow>->)
  | (?P<bot>_\|_)
  | (?P<free>a(?P<fi>\d+)(?=\s*:))
  | (?P<bound>x(?P<bi>\d+)(?=\s*:))
  | (?P<kw>(?:all|lam)\b)
  | (?P<obj>'(?P<on>[A-Za-z_][A-Za-z0-9_]*))
  | (?P<fun>\$(?P<fn>[A-Za-z_][A-Za-z0-9_]*))
  | (?P<nat>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),.:~])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i, text)
        kind = m.lastgroup
        if kind in ("fi", "bi", "on", "fn"):
            kind = next(k for k in ("free", "bound", "obj", "fun") if m.group(k) is not None)
        if kind == "free":
            out.append(Token("free", m.group("fi"), i))
        elif kind == "bound":
            out.append(Token("bound", m.group("bi"), i))
        elif kind == "obj":
            out.append(Token("obj", m.group("on"), i))
        elif kind == "fun":
            out.append(Token("fun", m.group("fn"), i))
        elif kind == "punct":
            out.append(Token(m.group(), m.group(), i))
        elif kind != "ws":
            out.append(Token(kind, m.group(), i))  # type: ignore[arg-type]
        i = m.end()
    out.append(Token("eof", "", len(text)))
    return out


class Parser:
    def __init__(self, text: str, atoms: MutableMapping[str, Term] | None = None,
                 auto_atoms: bool = False):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.atoms = atoms
        self.auto_atoms = auto_atoms

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        t = tok or self.tok
        return ParseError(msg, t.pos, self.text)

    def take(self, kind: str) -> Token:
        if self.tok.kind != kind:
            found = self.tok.value or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def at(self, kind: str) -> bool:
        return self.tok.kind == kind

    # grammar
    def parse_type(self) -> Type:
        if self.at("nat"):
            t = self.take("nat")
            if t.value not in ("0", "1"):
                raise self.error("base types are 0 and 1", t)
            return int(t.value)
        self.take("(")
        comps = [self.parse_type()]
        while self.at(","):
            self.take(",")
            comps.append(self.parse_type())
        self.take(")")
        return tuple(comps)

    def _build(self, tok: Token, ctor, *args) -> Term:
        try:
            return ctor(*args)
        except IllTyped as exc:
            raise ParseError(f"type error: {exc}", tok.pos, self.text) from None

    def parse_term(self) -> Term:
        start = self.tok
        left = self.parse_unary()
        if self.at("arrow"):
            self.take("arrow")
            right = self.parse_term()
            return self._build(start, Implies, left, right)
        return left

    def parse_bvar(self) -> BoundVar:
        t = self.take("bound")
        self.take(":")
        return BoundVar(int(t.value), self.parse_type())

    def parse_unary(self) -> Term:
        tok = self.tok
        if self.at("~"):
            self.take("~")
            return self._build(tok, Implies, self.parse_unary(), BOT)
        if self.at("kw"):
            self.take("kw")
            if tok.value == "all":
                v = self.parse_bvar()
                self.take(".")
                return self._build(tok, Forall, v, self.parse_term())
            vs = [self.parse_bvar()]
            while self.at("bound"):
                vs.append(self.parse_bvar())
            self.take(".")
            return self._build(tok, Lambda, tuple(vs), self.parse_term())
        return self.parse_postfix()

    def parse_args(self) -> tuple[Term, ...]:
        self.take("(")
        args = [self.parse_term()]
        while self.at(","):
            self.take(",")
            args.append(self.parse_term())
        self.take(")")
        return tuple(args)

    def parse_postfix(self) -> Term:
        tok = self.tok
        t = self.parse_primary()
        while self.at("("):
            t = self._build(tok, Apply, t, self.parse_args())
        return t

    def parse_primary(self) -> Term:
        tok = self.tok
        if self.at("free"):
            self.take("free")
            self.take(":")
            return FreeVar(int(tok.value), self.parse_type())
        if self.at("bound"):
            return self.parse_bvar()
        if self.at("obj"):
            self.take("obj")
            return ObjectSym(tok.value)
        if self.at("fun"):
            self.take("fun")
            return self._build(tok, FunApp, tok.value, self.parse_args())
        if self.at("bot"):
            self.take("bot")
            return BOT
        if self.at("ident"):
            self.take("ident")
            return self.lookup_atom(tok)
        if self.at("("):
            self.take("(")
            t = self.parse_term()
            self.take(")")
            return t
        found = tok.value or "end of input"
        raise self.error(f"unexpected {found!r}")

    def lookup_atom(self, tok: Token) -> Term:
        if self.atoms is None:
            raise self.error(f"undeclared identifier {tok.value!r}", tok)
        if tok.value not in self.atoms:
            if not self.auto_atoms:
                raise self.error(f"undeclared identifier {tok.value!r}", tok)
            self.atoms[tok.value] = FreeVar(len(self.atoms), 1)
        return self.atoms[tok.value]

    def finish(self, t: Term, tok: Token) -> Term:
        try:
            return canonical(t)
        except UnboundBoundVariable as exc:
            raise ParseError(str(exc), tok.pos, self.text) from None

    def parse_formula_list(self, stop: str) -> list[Term]:
        out: list[Term] = []
        if self.at(stop):
            return out
        while True:
            tok = self.tok
            out.append(self.finish(self.parse_term(), tok))
            if not self.at(","):
                return out
            self.take(",")


def parse_term(text: str, atoms: MutableMapping[str, Term] | None = None,
               auto_atoms: bool = False) -> Term:
    """Parse one term and return it in canonical form."""
    p = Parser(text, atoms, auto_atoms)
    tok = p.tok
    t = p.parse_term()
    p.take("eof")
    return p.finish(t, tok)


def parse_formula(text: str, atoms: MutableMapping[str, Term] | None = None,
                  auto_atoms: bool = False) -> Term:
    t = parse_term(text, atoms, auto_atoms)
    if t.ty != 1:
        raise ParseError("expected a formula (type 1)", 0, text)
    return t


def parse_type(text: str) -> Type:
    p = Parser(text)
    ty = p.parse_type()
    p.take("eof")
    return ty


def parse_sequent_parts(text: str, atoms: MutableMapping[str, Term] | None = None,
                        auto_atoms: bool = False) -> tuple[list[Term], list[Term]]:
    p = Parser(text, atoms, auto_atoms)
    ante = p.parse_formula_list("turnstile")
    p.take("turnstile")
    succ = p.parse_formula_list("eof")
    p.take("eof")
    for f in ante + succ:
        if f.ty != 1:
            raise ParseError("sequent members must be formulas", 0, text)
    return ante, succ
