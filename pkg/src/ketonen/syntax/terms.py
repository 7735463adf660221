"""Types and terms of classical simple type theory.

Types are plain Python values: ``0`` (individuals), ``1`` (propositions) and
non-empty tuples of types for relation types, so ``(1,)`` prints as ``(1)``.

Terms are immutable and hash-consed only in the weak sense that every node
caches its hash and type.  Bound variables carry an index and a type; two
terms that differ only in the choice of bound variables are identified by
:func:`canonical`, which renames every binder to its binding level (the number
of bound variables already in scope).  The engine keeps all formulas in
canonical form, so ``==`` on canonical terms is alpha-equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

Type = Union[int, tuple]


class IllTyped(TypeError):
    """A construction violates the typing rules."""


class ArityMismatch(IllTyped):
    pass


class TypeMismatch(IllTyped):
    pass


class UnboundBoundVariable(ValueError):
    """A bound variable occurs outside every binder for it."""


# -- types -----------------------------------------------------------------


def is_type(ty: object) -> bool:
    if ty == 0 or ty == 1:
        return isinstance(ty, int) and not isinstance(ty, bool)
    return isinstance(ty, tuple) and len(ty) >= 1 and all(is_type(c) for c in ty)


def check_type(ty: object) -> Type:
    if not is_type(ty):
        raise IllTyped(f"not a type: {ty!r}")
    return ty  # type: ignore[return-value]


def type_str(ty: Type) -> str:
    if isinstance(ty, tuple):
        return "(" + ",".join(type_str(c) for c in ty) + ")"
    return str(ty)


def type_size(ty: Type) -> int:
    """Symbol weight of a type used by the term enumeration."""
    if isinstance(ty, tuple):
        return 1 + sum(type_size(c) for c in ty)
    return 1


def type_key(ty: Type) -> tuple:
    """Total order on types: by size, then base before product, then componentwise."""
    if isinstance(ty, tuple):
        return (type_size(ty), 1, len(ty), tuple(type_key(c) for c in ty))
    return (1, 0, ty)


def types_up_to(size: int) -> list[Type]:
    """All types of weight <= size in :func:`type_key` order."""
    by_size: dict[int, list[Type]] = {1: [0, 1]}
    for n in range(2, size + 1):
        out: list[Type] = []
        # a product of weight n has components of total weight n - 1
        for parts in _compositions(n - 1):
            for combo in _product([by_size.get(p, []) for p in parts]):
                out.append(tuple(combo))
        by_size[n] = sorted(out, key=type_key)
    result: list[Type] = []
    for n in range(1, size + 1):
        result.extend(by_size.get(n, []))
    return result


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        return
    yield (n,)
    for first in range(1, n):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _product(pools: Sequence[Sequence]) -> Iterator[tuple]:
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for tail in _product(pools[1:]):
            yield (head,) + tail


# -- terms -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Term:
    ty: Type = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def _key(self) -> tuple:
        raise NotImplementedError

    def _type(self) -> Type:
        raise NotImplementedError

    def __post_init__(self) -> None:
        object.__setattr__(self, "ty", self._type())
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + self._key()))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return self._hash == other._hash and self._key() == other._key()  # type: ignore[attr-defined]

    def __str__(self) -> str:
        from .printer import show

        return show(self)

    @property
    def is_formula(self) -> bool:
        return self.ty == 1


@dataclass(frozen=True, eq=False)
class FreeVar(Term):
    """Free variable ``a<index>:<ty>``; doubles as the FreeRef term."""

    index: int
    var_ty: Type

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("variable index must be non-negative")
        check_type(self.var_ty)
        super().__post_init__()

    def _key(self) -> tuple:
        return (self.index, self.var_ty)

    def _type(self) -> Type:
        return self.var_ty

    def __repr__(self) -> str:
        return f"a{self.index}:{type_str(self.var_ty)}"


@dataclass(frozen=True, eq=False)
class BoundVar(Term):
    """Bound variable ``x<index>:<ty>``; doubles as the BoundRef term."""

    index: int
    var_ty: Type

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("variable index must be non-negative")
        check_type(self.var_ty)
        super().__post_init__()

    def _key(self) -> tuple:
        return (self.index, self.var_ty)

    def _type(self) -> Type:
        return self.var_ty

    def __repr__(self) -> str:
        return f"x{self.index}:{type_str(self.var_ty)}"


FreeRef = FreeVar
BoundRef = BoundVar


@dataclass(frozen=True, eq=False)
class ObjectSym(Term):
    name: str

    def _key(self) -> tuple:
        return (self.name,)

    def _type(self) -> Type:
        return 0

    def __repr__(self) -> str:
        return f"'{self.name}"


@dataclass(frozen=True, eq=False)
class FunApp(Term):
    letter: str
    args: tuple[Term, ...]

    def _key(self) -> tuple:
        return (self.letter, self.args)

    def _type(self) -> Type:
        if not self.args:
            raise ArityMismatch(f"function letter ${self.letter} needs at least one argument")
        for a in self.args:
            if a.ty != 0:
                raise TypeMismatch(f"argument of ${self.letter} has type {type_str(a.ty)}, expected 0")
        return 0

    def __repr__(self) -> str:
        return f"${self.letter}({', '.join(map(repr, self.args))})"


@dataclass(frozen=True, eq=False)
class Apply(Term):
    head: Term
    args: tuple[Term, ...]

    def _key(self) -> tuple:
        return (self.head, self.args)

    def _type(self) -> Type:
        hty = self.head.ty
        if not isinstance(hty, tuple):
            raise TypeMismatch(f"head of application has type {type_str(hty)}, not a relation type")
        if len(hty) != len(self.args):
            raise ArityMismatch(f"head of type {type_str(hty)} applied to {len(self.args)} arguments")
        for want, a in zip(hty, self.args):
            if a.ty != want:
                raise TypeMismatch(
                    f"argument has type {type_str(a.ty)}, head expects {type_str(want)}"
                )
        return 1

    def __repr__(self) -> str:
        return f"{self.head!r}({', '.join(map(repr, self.args))})"


@dataclass(frozen=True, eq=False)
class Implies(Term):
    lhs: Term
    rhs: Term

    def _key(self) -> tuple:
        return (self.lhs, self.rhs)

    def _type(self) -> Type:
        if self.lhs.ty != 1 or self.rhs.ty != 1:
            raise TypeMismatch("both sides of an implication must be formulas")
        return 1

    def __repr__(self) -> str:
        return f"({self.lhs!r} -> {self.rhs!r})"


@dataclass(frozen=True, eq=False)
class Forall(Term):
    binder: BoundVar
    body: Term

    def _key(self) -> tuple:
        return (self.binder, self.body)

    def _type(self) -> Type:
        if not isinstance(self.binder, BoundVar):
            raise IllTyped("a quantifier binds a bound variable")
        if self.body.ty != 1:
            raise TypeMismatch("quantified body must be a formula")
        return 1

    def __repr__(self) -> str:
        return f"(all {self.binder!r} . {self.body!r})"


@dataclass(frozen=True, eq=False)
class Lambda(Term):
    binders: tuple[BoundVar, ...]
    body: Term

    def _key(self) -> tuple:
        return (self.binders, self.body)

    def _type(self) -> Type:
        if not self.binders:
            raise ArityMismatch("lambda needs at least one binder")
        if not all(isinstance(b, BoundVar) for b in self.binders):
            raise IllTyped("a lambda binds bound variables")
        if len(set(self.binders)) != len(self.binders):
            raise IllTyped("lambda binders must be pairwise distinct")
        if self.body.ty != 1:
            raise TypeMismatch("lambda body must be a formula")
        return tuple(b.var_ty for b in self.binders)

    def __repr__(self) -> str:
        vs = " ".join(map(repr, self.binders))
        return f"(lam {vs} . {self.body!r})"


@dataclass(frozen=True, eq=False)
class Hole(Term):
    """Nominal symbol ``*<index>`` of a given type, used only in templates."""

    index: int
    hole_ty: Type

    def _key(self) -> tuple:
        return (self.index, self.hole_ty)

    def _type(self) -> Type:
        return check_type(self.hole_ty)

    def __repr__(self) -> str:
        return f"*{self.index}:{type_str(self.hole_ty)}"


Formula = Term


# -- queries ---------------------------------------------------------------


def type_of(t: Term) -> Type:
    """Type of a term; ill-typed terms cannot be constructed, so this never fails."""
    return t.ty


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, FunApp):
        return t.args
    if isinstance(t, Apply):
        return (t.head,) + t.args
    if isinstance(t, Implies):
        return (t.lhs, t.rhs)
    if isinstance(t, Forall):
        return (t.body,)
    if isinstance(t, Lambda):
        return (t.body,)
    return ()


def subterms_all(t: Term) -> Iterator[Term]:
    """Every syntactic sub-tree, pre-order (not the rank-theoretic subterms)."""
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        stack.extend(reversed(children(u)))


def free_vars(t: Term) -> frozenset[FreeVar]:
    return frozenset(u for u in subterms_all(t) if isinstance(u, FreeVar))


def free_vars_of(terms: Iterable[Term]) -> frozenset[FreeVar]:
    out: set[FreeVar] = set()
    for t in terms:
        out |= free_vars(t)
    return frozenset(out)


def loose_bound_vars(t: Term) -> frozenset[BoundVar]:
    """Bound variables occurring outside any binder for them."""

    def go(u: Term, bound: frozenset) -> set:
        if isinstance(u, BoundVar):
            return set() if u in bound else {u}
        if isinstance(u, Forall):
            return go(u.body, bound | {u.binder})
        if isinstance(u, Lambda):
            return go(u.body, bound | set(u.binders))
        out: set = set()
        for c in children(u):
            out |= go(c, bound)
        return out

    return frozenset(go(t, frozenset()))


def size(t: Term) -> int:
    """Symbol weight used by the enumeration (free variable a_i weighs i + |type|)."""
    if isinstance(t, FreeVar):
        return t.index + type_size(t.var_ty)
    if isinstance(t, BoundVar):
        return type_size(t.var_ty)
    if isinstance(t, (ObjectSym, Hole)):
        return 1
    if isinstance(t, FunApp):
        return 1 + sum(size(a) for a in t.args)
    if isinstance(t, Apply):
        return 1 + size(t.head) + sum(size(a) for a in t.args)
    if isinstance(t, Implies):
        return 1 + size(t.lhs) + size(t.rhs)
    if isinstance(t, Forall):
        return 1 + type_size(t.binder.var_ty) + size(t.body)
    if isinstance(t, Lambda):
        return 1 + sum(type_size(b.var_ty) for b in t.binders) + size(t.body)
    raise TypeError(t)


def is_atomic(f: Term) -> bool:
    """Free variable of type 1, or a free variable applied to arguments."""
    if isinstance(f, FreeVar):
        return f.var_ty == 1
    return isinstance(f, Apply) and isinstance(f.head, FreeVar)


def is_redex(f: Term) -> bool:
    return isinstance(f, Apply) and isinstance(f.head, Lambda)


# -- canonical renaming, substitution --------------------------------------


def canonical(t: Term) -> Term:
    """Rename binders to their binding level; alpha-variants become equal.

    Raises UnboundBoundVariable if a bound variable escapes its binders.
    """
    return _canon(t, {}, 0)


def _canon(t: Term, env: Mapping[BoundVar, BoundVar], depth: int) -> Term:
    if isinstance(t, BoundVar):
        try:
            return env[t]
        except KeyError:
            raise UnboundBoundVariable(f"{t!r} occurs outside its binder") from None
    if isinstance(t, (FreeVar, ObjectSym, Hole)):
        return t
    if isinstance(t, FunApp):
        return FunApp(t.letter, tuple(_canon(a, env, depth) for a in t.args))
    if isinstance(t, Apply):
        return Apply(_canon(t.head, env, depth), tuple(_canon(a, env, depth) for a in t.args))
    if isinstance(t, Implies):
        return Implies(_canon(t.lhs, env, depth), _canon(t.rhs, env, depth))
    if isinstance(t, Forall):
        nv = BoundVar(depth, t.binder.var_ty)
        inner = dict(env)
        inner[t.binder] = nv
        return Forall(nv, _canon(t.body, inner, depth + 1))
    if isinstance(t, Lambda):
        inner = dict(env)
        nvs = []
        for k, b in enumerate(t.binders):
            nv = BoundVar(depth + k, b.var_ty)
            inner[b] = nv
            nvs.append(nv)
        return Lambda(tuple(nvs), _canon(t.body, inner, depth + len(nvs)))
    raise TypeError(t)


def alpha_eq(s: Term, t: Term) -> bool:
    """Equality up to the choice of bound variables."""
    return s.ty == t.ty and canonical(s) == canonical(t)


def replace(t: Term, mapping: Mapping[Term, Term]) -> Term:
    """Replace leaves (bound variables, free variables or holes) per ``mapping``.

    Binders that rebind a mapped bound variable shadow it.  The result is not
    canonicalized.
    """
    if not mapping:
        return t
    if t in mapping and isinstance(t, (BoundVar, FreeVar, Hole)):
        return mapping[t]
    if isinstance(t, (BoundVar, FreeVar, ObjectSym, Hole)):
        return t
    if isinstance(t, FunApp):
        return FunApp(t.letter, tuple(replace(a, mapping) for a in t.args))
    if isinstance(t, Apply):
        return Apply(replace(t.head, mapping), tuple(replace(a, mapping) for a in t.args))
    if isinstance(t, Implies):
        return Implies(replace(t.lhs, mapping), replace(t.rhs, mapping))
    if isinstance(t, Forall):
        inner = {k: v for k, v in mapping.items() if k != t.binder}
        return Forall(t.binder, replace(t.body, inner))
    if isinstance(t, Lambda):
        inner = {k: v for k, v in mapping.items() if k not in t.binders}
        return Lambda(t.binders, replace(t.body, inner))
    raise TypeError(t)


def instantiate(binder_term: Term, args: Sequence[Term]) -> Term:
    """``F[t]`` for ``all x F[x]`` or ``A[t1..tn]`` for ``lam x1..xn A[x1..xn]``.

    Arguments must be closed with respect to bound variables; then capture is
    impossible and the result is returned in canonical form.
    """
    if isinstance(binder_term, Forall):
        binders: tuple[BoundVar, ...] = (binder_term.binder,)
    elif isinstance(binder_term, Lambda):
        binders = binder_term.binders
    else:
        raise IllTyped("instantiate expects a quantified formula or a lambda term")
    args = tuple(args)
    if len(args) != len(binders):
        raise ArityMismatch(f"{len(binders)} binder(s) but {len(args)} argument(s)")
    for b, a in zip(binders, args):
        if a.ty != b.var_ty:
            raise TypeMismatch(f"argument of type {type_str(a.ty)} for binder {b!r}")
        if loose_bound_vars(a):
            raise UnboundBoundVariable(f"argument {a!r} has loose bound variables")
    return canonical(replace(binder_term.body, dict(zip(binders, args))))


def contract(redex: Term) -> Term:
    """Contractum ``A[t]`` of a redex ``(lam x A[x])(t)``."""
    if not is_redex(redex):
        raise IllTyped("not a lambda redex")
    return instantiate(redex.head, redex.args)  # type: ignore[attr-defined]


def fresh_free_var(ty: Type, avoid: Iterable[FreeVar]) -> FreeVar:
    """``a_i:ty`` with the least ``i`` not in ``avoid``."""
    used = {v.index for v in avoid if v.var_ty == ty}
    i = 0
    while i in used:
        i += 1
    return FreeVar(i, ty)


def match_instance(binder_term: Term, candidate: Term) -> tuple[Term, ...] | None:
    """Arguments ``ts`` with ``instantiate(binder_term, ts) == candidate``, if any.

    Both terms must be canonical.  A binder variable that does not occur in the
    body matches nothing; its slot is filled with a least free variable.
    """
    if isinstance(binder_term, Forall):
        binders: tuple[BoundVar, ...] = (binder_term.binder,)
    elif isinstance(binder_term, Lambda):
        binders = binder_term.binders
    else:
        return None
    found: dict[BoundVar, Term] = {}
    if not _match(binder_term.body, candidate, set(binders), {}, found):
        return None
    out = []
    for b in binders:
        out.append(found.get(b) or FreeVar(0, b.var_ty))
    result = tuple(out)
    try:
        if instantiate(binder_term, result) != candidate:
            return None
    except IllTyped:
        return None
    return result


def _match(p: Term, t: Term, holes: set, env: dict, found: dict) -> bool:
    if isinstance(p, BoundVar) and p in holes and p not in env:
        if loose_bound_vars(t):
            return False
        arg = canonical(t)
        prev = found.get(p)
        if prev is None:
            found[p] = arg
            return True
        return prev == arg
    if type(p) is not type(t):
        return False
    if isinstance(p, BoundVar):
        return env.get(p) == t
    if isinstance(p, (FreeVar, ObjectSym, Hole)):
        return p == t
    if isinstance(p, FunApp):
        return (
            p.letter == t.letter  # type: ignore[attr-defined]
            and len(p.args) == len(t.args)  # type: ignore[attr-defined]
            and all(_match(a, b, holes, env, found) for a, b in zip(p.args, t.args))  # type: ignore[attr-defined]
        )
    if isinstance(p, Apply):
        return (
            len(p.args) == len(t.args)  # type: ignore[attr-defined]
            and _match(p.head, t.head, holes, env, found)  # type: ignore[attr-defined]
            and all(_match(a, b, holes, env, found) for a, b in zip(p.args, t.args))  # type: ignore[attr-defined]
        )
    if isinstance(p, Implies):
        return _match(p.lhs, t.lhs, holes, env, found) and _match(p.rhs, t.rhs, holes, env, found)  # type: ignore[attr-defined]
    if isinstance(p, Forall):
        if p.binder.var_ty != t.binder.var_ty:  # type: ignore[attr-defined]
            return False
        inner = dict(env)
        inner[p.binder] = t.binder  # type: ignore[attr-defined]
        return _match(p.body, t.body, holes - {p.binder}, inner, found)  # type: ignore[attr-defined]
    if isinstance(p, Lambda):
        tb = t.binders  # type: ignore[attr-defined]
        if [b.var_ty for b in p.binders] != [b.var_ty for b in tb]:
            return False
        inner = dict(env)
        inner.update(zip(p.binders, tb))
        return _match(p.body, t.body, holes - set(p.binders), inner, found)  # type: ignore[attr-defined]
    return False


# -- defined connectives ---------------------------------------------------

_X0 = BoundVar(0, 1)
BOT: Term = Forall(_X0, _X0)


def bot() -> Term:
    """Falsum, the formula ``all x0:1 . x0:1``."""
    return BOT


def is_bot(f: Term) -> bool:
    # structural, so it also works under binders (open terms)
    return isinstance(f, Forall) and f.binder.var_ty == 1 and f.body == f.binder


def neg(a: Term) -> Term:
    return Implies(a, BOT)


def lor(a: Term, b: Term) -> Term:
    return Implies(neg(a), b)


def land(a: Term, b: Term) -> Term:
    return neg(Implies(a, neg(b)))


def exists(binder: BoundVar, body: Term) -> Term:
    return canonical(neg(Forall(binder, neg(body))))


def forall(binder: BoundVar, body: Term) -> Term:
    return canonical(Forall(binder, body))


def lam(binders: Sequence[BoundVar], body: Term) -> Term:
    return canonical(Lambda(tuple(binders), body))


def atom(i: int) -> FreeVar:
    """Propositional atom ``a_i:1``."""
    return FreeVar(i, 1)
