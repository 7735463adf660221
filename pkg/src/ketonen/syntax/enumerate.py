"""Deterministic enumeration of all terms of a given type.

Terms are listed by :func:`~ketonen.syntax.terms.size`, smallest first.  Within
one size the order is by constructor tag::

    object symbol < function application < free variable < bound variable
      < application < implication < universal < lambda

and then componentwise: object symbols and function letters by name, free
variables by index, bound variables by binding level, applications by head
type, then by the split of the size between head and arguments, then by the
position of each component in its own enumeration (implications, binders and
lambdas likewise, with binder types in type order).  Every term has finitely
many predecessors because only finitely many terms share a size.

Bound variables are numbered by binding level, so every enumerated term is
already in canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import islice
from typing import Iterator, Mapping

from .terms import (
    Apply,
    BoundVar,
    Forall,
    FreeVar,
    FunApp,
    Implies,
    Lambda,
    ObjectSym,
    Term,
    Type,
    _compositions,
    _product,
    type_size,
    types_up_to,
)


@dataclass(frozen=True)
class Signature:
    """Object symbols and function letters (name to arity)."""

    objects: tuple[str, ...] = ("c",)
    functions: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(sorted(set(self.objects))))
        object.__setattr__(self, "functions", tuple(sorted(dict(self.functions).items())))
        for name, arity in self.functions:
            if arity < 1:
                raise ValueError(f"function letter {name} needs arity >= 1")

    @classmethod
    def make(cls, objects=("c",), functions: Mapping[str, int] | None = None) -> "Signature":
        return cls(tuple(objects), tuple((functions or {}).items()))

    @property
    def arity(self) -> dict[str, int]:
        return dict(self.functions)


DEFAULT_SIGNATURE = Signature()


def enumerate_terms(ty: Type, sig: Signature = DEFAULT_SIGNATURE, k: int = 0) -> list[Term]:
    """The first ``k`` terms of type ``ty``."""
    return list(islice(iter_terms(ty, sig), k))


def iter_terms(ty: Type, sig: Signature = DEFAULT_SIGNATURE) -> Iterator[Term]:
    n = 1
    while True:
        yield from _gen(ty, n, (), sig)
        n += 1


def term_at(ty: Type, j: int, sig: Signature = DEFAULT_SIGNATURE) -> Term:
    """``s_j`` of type ``ty``; cached so repeated lookups are cheap."""
    cache = _INDEXED.setdefault((ty, sig), [])
    if len(cache) <= j:
        it = _ITERS.setdefault((ty, sig), iter_terms(ty, sig))
        while len(cache) <= j:
            cache.append(next(it))
    return cache[j]


_INDEXED: dict = {}
_ITERS: dict = {}


def _splits(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive ints summing to ``total``, lexicographically."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _splits(total - first, parts - 1):
            yield (first,) + rest


def _seqs(types: tuple, total: int, ctx: tuple, sig: Signature) -> Iterator[tuple[Term, ...]]:
    """Argument tuples of the given types and combined size."""
    for sizes in _splits(total, len(types)):
        pools = [_gen(t, s, ctx, sig) for t, s in zip(types, sizes)]
        if all(pools):
            yield from _product(pools)


@lru_cache(maxsize=None)
def _gen(ty: Type, n: int, ctx: tuple, sig: Signature) -> tuple[Term, ...]:
    out: list[Term] = []
    if n < 1:
        return ()
    if ty == 0:
        if n == 1:
            out.extend(ObjectSym(o) for o in sig.objects)
        for name, arity in sig.functions:
            if n - 1 >= arity:
                out.extend(FunApp(name, args) for args in _seqs((0,) * arity, n - 1, ctx, sig))
    i = n - type_size(ty)
    if i >= 0:
        out.append(FreeVar(i, ty))
    if n == type_size(ty):
        out.extend(BoundVar(lvl, t) for lvl, t in enumerate(ctx) if t == ty)
    if ty == 1:
        # applications: head of product type, at least one argument
        for hty in types_up_to(n - 2):
            if not isinstance(hty, tuple):
                continue
            for hsize in range(type_size(hty), n - len(hty)):
                heads = _gen(hty, hsize, ctx, sig)
                if not heads:
                    continue
                for args in _seqs(hty, n - 1 - hsize, ctx, sig):
                    out.extend(Apply(h, args) for h in heads)
        for ls in range(1, n - 1):
            lefts = _gen(1, ls, ctx, sig)
            rights = _gen(1, n - 1 - ls, ctx, sig)
            out.extend(Implies(a, b) for a in lefts for b in rights)
        for bty in types_up_to(n - 2):
            body_size = n - 1 - type_size(bty)
            if body_size < 1:
                continue
            binder = BoundVar(len(ctx), bty)
            out.extend(Forall(binder, body) for body in _gen(1, body_size, ctx + (bty,), sig))
    if isinstance(ty, tuple):
        body_size = n - 1 - sum(type_size(c) for c in ty)
        if body_size >= 1:
            binders = tuple(BoundVar(len(ctx) + k, c) for k, c in enumerate(ty))
            out.extend(Lambda(binders, body) for body in _gen(1, body_size, ctx + ty, sig))
    return tuple(out)
