"""Fully parenthesized printing of terms."""

from __future__ import annotations

from .terms import (
    Apply,
    BoundVar,
    Forall,
    FreeVar,
    FunApp,
    Hole,
    Implies,
    Lambda,
    ObjectSym,
    Term,
    is_bot,
    type_str,
)


def show(t: Term, sugar: bool = False) -> str:
    """Canonical text of ``t``.  With ``sugar``, falsum prints as ``_|_`` and
    ``A -> _|_`` as ``~A``; both forms parse back to the same term."""
    if sugar and is_bot(t):
        return "_|_"
    if isinstance(t, FreeVar):
        return f"a{t.index}:{type_str(t.var_ty)}"
    if isinstance(t, BoundVar):
        return f"x{t.index}:{type_str(t.var_ty)}"
    if isinstance(t, ObjectSym):
        return f"'{t.name}"
    if isinstance(t, Hole):
        return f"*{t.index}:{type_str(t.hole_ty)}"
    if isinstance(t, FunApp):
        return f"${t.letter}(" + ", ".join(show(a, sugar) for a in t.args) + ")"
    if isinstance(t, Apply):
        return show(t.head, sugar) + "(" + ", ".join(show(a, sugar) for a in t.args) + ")"
    if isinstance(t, Implies):
        if sugar and is_bot(t.rhs):
            return "~" + show(t.lhs, sugar)
        return f"({show(t.lhs, sugar)} -> {show(t.rhs, sugar)})"
    if isinstance(t, Forall):
        return f"(all {show(t.binder)} . {show(t.body, sugar)})"
    if isinstance(t, Lambda):
        vs = " ".join(show(b) for b in t.binders)
        return f"(lam {vs} . {show(t.body, sugar)})"
    raise TypeError(t)
