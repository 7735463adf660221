"""Seeded random terms, formulas, redexes and sequents for the test rigs."""

from __future__ import annotations

import random

from .rank import rank
from .sequent import Sequent
from .semantics.oracle import propositional_oracle
from .syntax.terms import (
    BOT,
    Apply,
    BoundVar,
    Forall,
    FreeVar,
    Implies,
    Lambda,
    ObjectSym,
    Term,
    Type,
    canonical,
    size,
)

BINDER_TYPES: tuple[Type, ...] = (0, 1, (1,), (0,))
RELATION_TYPES: tuple[Type, ...] = ((0,), (1,), (0, 1), (1, 1))


class _Gen:
    def __init__(self, rng: random.Random, n_free: int = 3):
        self.rng = rng
        self.n_free = n_free
        self.next_bound = 0

    def bound(self, ty: Type) -> BoundVar:
        self.next_bound += 1
        return BoundVar(self.next_bound, ty)

    def term(self, ty: Type, depth: int, ctx: list[BoundVar]) -> Term:
        rng = self.rng
        in_scope = [b for b in ctx if b.var_ty == ty]
        if ty == 0:
            if in_scope and rng.random() < 0.5:
                return rng.choice(in_scope)
            return ObjectSym("c") if rng.random() < 0.5 else FreeVar(rng.randrange(self.n_free), 0)
        if ty == 1:
            return self.formula(depth, ctx)
        if in_scope and rng.random() < 0.4:
            return rng.choice(in_scope)
        if depth <= 0 or rng.random() < 0.5:
            return FreeVar(rng.randrange(self.n_free), ty)
        binders = [self.bound(c) for c in ty]  # type: ignore[union-attr]
        return Lambda(tuple(binders), self.formula(depth - 1, ctx + binders))

    def formula(self, depth: int, ctx: list[BoundVar]) -> Term:
        rng = self.rng
        props = [b for b in ctx if b.var_ty == 1]
        if depth <= 0:
            r = rng.random()
            if props and r < 0.4:
                return rng.choice(props)
            if r < 0.5:
                return BOT
            return FreeVar(rng.randrange(self.n_free), 1)
        kind = rng.choice(("imp", "imp", "all", "app", "redex", "atom"))
        if kind == "imp":
            return Implies(self.formula(depth - 1, ctx), self.formula(depth - 1, ctx))
        if kind == "all":
            b = self.bound(rng.choice(BINDER_TYPES))
            return Forall(b, self.formula(depth - 1, ctx + [b]))
        if kind == "app":
            ty = rng.choice(RELATION_TYPES)
            heads = [b for b in ctx if b.var_ty == ty]
            head = rng.choice(heads) if heads and rng.random() < 0.5 else FreeVar(rng.randrange(self.n_free), ty)
            return Apply(head, tuple(self.term(c, depth - 1, ctx) for c in ty))
        if kind == "redex":
            return self.redex(depth, ctx)
        return self.formula(0, ctx)

    def redex(self, depth: int, ctx: list[BoundVar]) -> Term:
        ty = self.rng.choice(RELATION_TYPES)
        binders = [self.bound(c) for c in ty]
        body = self.formula(max(depth - 1, 0), ctx + binders)
        return Apply(Lambda(tuple(binders), body), tuple(self.term(c, depth - 1, ctx) for c in ty))


def random_formula(rng: random.Random, max_size: int = 30, depth: int = 4, n_free: int = 3) -> Term:
    """A closed well-typed formula of size at most ``max_size``."""
    while True:
        f = canonical(_Gen(rng, n_free).formula(rng.randint(1, depth), []))
        if size(f) <= max_size:
            return f


def random_term(rng: random.Random, ty: Type, depth: int = 3, n_free: int = 3) -> Term:
    return canonical(_Gen(rng, n_free).term(ty, depth, []))


def random_quantified(rng: random.Random, max_size: int = 30, depth: int = 3) -> Term:
    while True:
        g = _Gen(rng)
        b = g.bound(rng.choice(BINDER_TYPES))
        f = canonical(Forall(b, g.formula(depth, [b])))
        if size(f) <= max_size:
            return f


def random_redex(rng: random.Random, max_size: int = 30, depth: int = 3) -> Term:
    while True:
        f = canonical(_Gen(rng).redex(rng.randint(1, depth), []))
        if size(f) <= max_size:
            return f


# -- the implication/falsum fragment ------------------------------------------


def random_prop(rng: random.Random, n_atoms: int = 3, depth: int = 3) -> Term:
    if depth <= 0 or rng.random() < 0.25:
        return BOT if rng.random() < 0.1 else FreeVar(rng.randrange(n_atoms), 1)
    return Implies(random_prop(rng, n_atoms, depth - 1), random_prop(rng, n_atoms, depth - 1))


def random_prop_sequent(rng: random.Random, n_atoms: int = 3, depth: int = 3,
                        max_ante: int = 2, max_succ: int = 2) -> Sequent:
    ante = tuple(random_prop(rng, n_atoms, depth - 1) for _ in range(rng.randint(0, max_ante)))
    succ = tuple(random_prop(rng, n_atoms, depth) for _ in range(rng.randint(1, max_succ)))
    return Sequent(ante, succ)


def random_non_validity(rng: random.Random, n_atoms: int = 3, depth: int = 3,
                        tries: int = 1000) -> Sequent:
    for _ in range(tries):
        s = random_prop_sequent(rng, n_atoms, depth)
        if not propositional_oracle(s):
            return s
    raise RuntimeError("no non-validity found")  # pragma: no cover


def random_context(rng: random.Random, n_atoms: int = 3, depth: int = 2, max_len: int = 2) -> list[Term]:
    return [random_prop(rng, n_atoms, depth) for _ in range(rng.randint(0, max_len))]


def bounded_rank_formula(rng: random.Random, max_rank: int) -> Term:
    """Random formula of rank at most ``max_rank`` (rejection sampling)."""
    while True:
        f = random_formula(rng, max_size=20, depth=max_rank)
        if rank(f) <= max_rank:
            return f
