"""Nominal forms: term templates with holes ``*1 .. *n`` that are plugged once each."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .terms import (
    Apply,
    BoundVar,
    Forall,
    FreeVar,
    FunApp,
    Hole,
    IllTyped,
    Implies,
    Lambda,
    ObjectSym,
    Term,
    Type,
    canonical,
    children,
    loose_bound_vars,
    replace,
    subterms_all,
    type_str,
)


class HoleMismatch(ValueError):
    """Holes are missing, repeated, or the arguments do not fit them."""


class CaptureViolation(ValueError):
    """A plugged argument would have a loose bound variable captured."""


@dataclass(frozen=True)
class NominalForm:
    template: Term
    hole_types: tuple[Type, ...]

    def __post_init__(self) -> None:
        counts: dict[int, int] = {}
        for u in subterms_all(self.template):
            if isinstance(u, Hole):
                if u.index < 1 or u.index > len(self.hole_types):
                    raise HoleMismatch(f"hole *{u.index} outside 1..{len(self.hole_types)}")
                if u.hole_ty != self.hole_types[u.index - 1]:
                    raise HoleMismatch(f"hole *{u.index} has type {type_str(u.hole_ty)}")
                counts[u.index] = counts.get(u.index, 0) + 1
        for i in range(1, len(self.hole_types) + 1):
            if counts.get(i, 0) != 1:
                raise HoleMismatch(f"hole *{i} occurs {counts.get(i, 0)} times, expected once")

    @classmethod
    def of(cls, template: Term) -> "NominalForm":
        """Infer hole types from the template itself."""
        holes = sorted({(u.index, u.hole_ty) for u in subterms_all(template) if isinstance(u, Hole)})
        return cls(template, tuple(ty for _, ty in holes))


def _binders_over_holes(t: Term, above: frozenset, out: dict) -> None:
    if isinstance(t, Hole):
        out[t.index] = above
        return
    if isinstance(t, Forall):
        _binders_over_holes(t.body, above | {t.binder}, out)
        return
    if isinstance(t, Lambda):
        _binders_over_holes(t.body, above | set(t.binders), out)
        return
    for c in children(t):
        _binders_over_holes(c, above, out)


def _rename_binders(t: Term, start: int) -> Term:
    """Rename every binder of ``t`` to indices from ``start`` upwards."""
    counter = [start]

    def go(u: Term, env: dict) -> Term:
        if isinstance(u, BoundVar):
            return env.get(u, u)
        if isinstance(u, (FreeVar, ObjectSym, Hole)):
            return u
        if isinstance(u, FunApp):
            return FunApp(u.letter, tuple(go(a, env) for a in u.args))
        if isinstance(u, Apply):
            return Apply(go(u.head, env), tuple(go(a, env) for a in u.args))
        if isinstance(u, Implies):
            return Implies(go(u.lhs, env), go(u.rhs, env))
        if isinstance(u, Forall):
            nv = BoundVar(counter[0], u.binder.var_ty)
            counter[0] += 1
            return Forall(nv, go(u.body, {**env, u.binder: nv}))
        if isinstance(u, Lambda):
            nvs = []
            inner = dict(env)
            for b in u.binders:
                nv = BoundVar(counter[0], b.var_ty)
                counter[0] += 1
                inner[b] = nv
                nvs.append(nv)
            return Lambda(tuple(nvs), go(u.body, inner))
        raise TypeError(u)

    return go(t, {})


def plug(nf: NominalForm, args: Sequence[Term], repair: bool = True) -> Term:
    """Replace ``*i`` by ``args[i-1]``.

    An argument may mention bound variables that the template does not bind
    around its hole.  If a template binder would capture one of them, the
    template's binders are renamed apart when ``repair`` is set, otherwise
    :class:`CaptureViolation` is raised.  Closed results come back canonical.
    """
    args = tuple(args)
    if len(args) != len(nf.hole_types):
        raise HoleMismatch(f"{len(nf.hole_types)} hole(s) but {len(args)} argument(s)")
    for i, (ty, a) in enumerate(zip(nf.hole_types, args), 1):
        if a.ty != ty:
            raise HoleMismatch(f"argument for *{i} has type {type_str(a.ty)}, expected {type_str(ty)}")
    template = nf.template
    over: dict[int, frozenset] = {}
    _binders_over_holes(template, frozenset(), over)
    clash = any(loose_bound_vars(a) & over.get(i, frozenset()) for i, a in enumerate(args, 1))
    if clash:
        if not repair:
            raise CaptureViolation("a template binder would capture a bound variable of an argument")
        used = [b.index for a in args for b in subterms_all(a) if isinstance(b, BoundVar)]
        template = _rename_binders(template, max(used, default=-1) + 1)
    mapping = {Hole(i, ty): a for i, (ty, a) in enumerate(zip(nf.hole_types, args), 1)}
    try:
        out = replace(template, mapping)
    except IllTyped as exc:  # pragma: no cover - hole types already checked
        raise HoleMismatch(str(exc)) from None
    return out if loose_bound_vars(out) else canonical(out)
