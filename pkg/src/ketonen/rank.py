"""Subterm representatives, ranks of terms and heights of types.

The subterms of ``all x F[x]`` are ``F[a]`` for every free variable ``a`` of
the binder's type, and likewise for a lambda term.  All of them have the same
rank, so one instance at the least free variable not occurring in the term
stands for the whole family.
"""

from __future__ import annotations

from .syntax.terms import (
    Apply,
    Forall,
    FreeVar,
    FunApp,
    Implies,
    Lambda,
    ObjectSym,
    BoundVar,
    Term,
    Type,
    contract,
    free_vars,
    instantiate,
    type_str,
)


def prime_term(t: Term) -> bool:
    """Terms of type 0 and free variables have no subterms."""
    return t.ty == 0 or isinstance(t, FreeVar)


def _fresh_args(t: Term, types) -> tuple[FreeVar, ...]:
    used = free_vars(t)
    out: list[FreeVar] = []
    for ty in types:
        i = 0
        while FreeVar(i, ty) in used or FreeVar(i, ty) in out:
            i += 1
        out.append(FreeVar(i, ty))
    return tuple(out)


def subterm_representatives(t: Term) -> list[Term]:
    if prime_term(t):
        return []
    if isinstance(t, Apply):
        if isinstance(t.head, Lambda):
            return [contract(t)]
        return list(t.args)
    if isinstance(t, Implies):
        return [t.lhs, t.rhs]
    if isinstance(t, Forall):
        return [instantiate(t, _fresh_args(t, [t.binder.var_ty]))]
    if isinstance(t, Lambda):
        return [instantiate(t, _fresh_args(t, [b.var_ty for b in t.binders]))]
    if isinstance(t, (ObjectSym, FunApp, BoundVar)):  # pragma: no cover - type 0 or unbound
        return []
    raise TypeError(t)


def rank(t: Term) -> int:
    """Length of the longest subterm chain starting at ``t``."""
    memo: dict[Term, int] = {}

    def go(u: Term) -> int:
        r = memo.get(u)
        if r is not None:
            return r
        reps = subterm_representatives(u)
        r = 0 if not reps else 1 + max(go(s) for s in reps)
        memo[u] = r
        return r

    return go(t)


def height(ty: Type) -> int:
    """Number of bracket characters in the printed type."""
    return sum(ch in "()" for ch in type_str(ty))

