"""Finite systems of sets and total valuations over them.

Elements of type 0 and type 1 are names; type-1 names carry a truth value.
An element of a relation type ``(t1,...,tn)`` is a frozenset of argument
tuples.  Relation-type carriers not listed explicitly are the full power set
of the product of the component carriers, which makes every lambda term
denote an element.  Quantifiers range over carriers.

A type-1 argument that is a variable denotes the element bound to it; any
other type-1 argument denotes the first carrier element with its truth value.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Hashable, Iterator, Mapping, Optional

from ..sequent import BoolSequent, Sequent, tv
from ..syntax.enumerate import DEFAULT_SIGNATURE, Signature
from ..syntax.parser import parse_type
from ..syntax.terms import (
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
    type_str,
)

Element = Hashable

MAX_CARRIER = 1 << 12
MAX_ENVIRONMENTS = 4096


class MissingInterpretation(LookupError):
    pass


class ComprehensionGap(LookupError):
    """A lambda term's extension is not an element of an explicit carrier."""


class ModelError(ValueError):
    pass


@dataclass
class FiniteModel:
    base0: tuple[str, ...]
    base1: tuple[tuple[str, bool], ...]
    objects: dict[str, str] = field(default_factory=dict)
    funs: dict[str, dict[tuple[str, ...], str]] = field(default_factory=dict)
    explicit: dict[Type, tuple[frozenset, ...]] = field(default_factory=dict)
    names: dict[frozenset, str] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.base0 or not self.base1:
            raise ModelError("carriers must be non-empty")
        if not any(not v for _, v in self.base1):
            raise ModelError("the type-1 carrier needs an element valued f")
        self._value = dict(self.base1)
        if len(self._value) != len(self.base1):
            raise ModelError("duplicate type-1 element names")
        if set(self.base0) & set(self._value):
            raise ModelError("carriers of different types must be disjoint")
        self._cache: dict[Type, tuple] = {}
        self._canon = {v: next(n for n, w in self.base1 if w == v) for v in {w for _, w in self.base1}}

    # carriers
    def carrier(self, ty: Type) -> tuple:
        if ty == 0:
            return self.base0
        if ty == 1:
            return tuple(n for n, _ in self.base1)
        if ty in self.explicit:
            return self.explicit[ty]
        got = self._cache.get(ty)
        if got is None:
            tuples = list(product(*(self.carrier(c) for c in ty)))
            if len(tuples) > 12 or (1 << len(tuples)) > MAX_CARRIER:
                raise ModelError(f"carrier of type {type_str(ty)} is too large to build")
            got = tuple(
                frozenset(t for t, bit in zip(tuples, bits) if bit)
                for bits in product((False, True), repeat=len(tuples))
            )
            self._cache[ty] = got
        return got

    def value(self, e: Element) -> bool:
        return self._value[e]

    def element_for(self, truth: bool) -> str:
        try:
            return self._canon[truth]
        except KeyError:
            raise MissingInterpretation(f"no type-1 element valued {'t' if truth else 'f'}") from None

    def name(self, e: Element) -> str:
        if isinstance(e, frozenset):
            if e in self.names:
                return self.names[e]
            return "{" + ", ".join("(" + ",".join(self.name(x) for x in t) + ")" for t in sorted(e, key=str)) + "}"
        return str(e)

    # evaluation
    def denote(self, t: Term, env: Mapping[Term, Element]) -> Element:
        if isinstance(t, (FreeVar, BoundVar)):
            try:
                return env[t]
            except KeyError:
                raise MissingInterpretation(f"no value for variable {t}") from None
        if isinstance(t, ObjectSym):
            try:
                return self.objects[t.name]
            except KeyError:
                raise MissingInterpretation(f"object symbol '{t.name}") from None
        if isinstance(t, FunApp):
            args = tuple(self.denote(a, env) for a in t.args)
            try:
                return self.funs[t.letter][args]
            except KeyError:
                raise MissingInterpretation(f"function letter ${t.letter} at {args}") from None
        if isinstance(t, Lambda):
            ext = frozenset(
                args
                for args in product(*(self.carrier(b.var_ty) for b in t.binders))
                if self.eval(t.body, {**env, **dict(zip(t.binders, args))})
            )
            if t.ty in self.explicit and ext not in self.explicit[t.ty]:
                raise ComprehensionGap(f"{t} has no element in the carrier of {type_str(t.ty)}")
            return ext
        if t.ty == 1:
            return self.element_for(self.eval(t, env))
        raise MissingInterpretation(f"cannot denote {t}")  # pragma: no cover

    def eval(self, f: Term, env: Mapping[Term, Element]) -> bool:
        if isinstance(f, (FreeVar, BoundVar)):
            return self.value(self.denote(f, env))
        if isinstance(f, Implies):
            return not self.eval(f.lhs, env) or self.eval(f.rhs, env)
        if isinstance(f, Forall):
            return all(self.eval(f.body, {**env, f.binder: e}) for e in self.carrier(f.binder.var_ty))
        if isinstance(f, Apply):
            args = tuple(self.denote(a, env) for a in f.args)
            if isinstance(f.head, Lambda):
                return self.eval(f.head.body, {**env, **dict(zip(f.head.binders, args))})
            rel = self.denote(f.head, env)
            return args in rel  # type: ignore[operator]
        raise MissingInterpretation(f"cannot evaluate {f}")

    # serialization
    def to_json(self) -> dict[str, Any]:
        carriers: dict[str, Any] = {
            "0": list(self.base0),
            "1": [{"name": n, "value": "t" if v else "f"} for n, v in self.base1],
        }
        rel: dict[str, Any] = {}
        for ty, elems in self.explicit.items():
            carriers[type_str(ty)] = [self.name(e) for e in elems]
            for e in elems:
                rel[self.name(e)] = sorted([[self.name(x) for x in t] for t in e])
        return {
            "carriers": carriers,
            "rel": rel,
            "objects": dict(self.objects),
            "funs": {f: {",".join(k): v for k, v in m.items()} for f, m in self.funs.items()},
        }


def eval_formula(model: FiniteModel, env: Mapping[Term, Element], f: Term) -> bool:
    return model.eval(f, env)


def environments(model: FiniteModel, variables) -> Iterator[dict[Term, Element]]:
    vs = sorted(variables, key=lambda v: (str(v.var_ty), v.index))
    for combo in product(*(model.carrier(v.var_ty) for v in vs)):
        yield dict(zip(vs, combo))


def sampled_environments(model: FiniteModel, variables, limit: int,
                         rng: Optional[random.Random] = None) -> Iterator[dict[Term, Element]]:
    """All environments when there are at most ``limit``, else ``limit`` random ones."""
    vs = sorted(variables, key=lambda v: (str(v.var_ty), v.index))
    pools = [model.carrier(v.var_ty) for v in vs]
    total = 1
    for p in pools:
        total *= len(p)
    if total <= limit:
        yield from environments(model, vs)
        return
    rng = rng or random.Random(0)
    for _ in range(limit):
        yield {v: rng.choice(p) for v, p in zip(vs, pools)}


def falsifying_environment(model: FiniteModel, s: Sequent,
                           limit: int = MAX_ENVIRONMENTS) -> Optional[dict[Term, Element]]:
    for env in sampled_environments(model, s.free_vars(), limit):
        bs = BoolSequent(
            tuple(model.eval(f, env) for f in s.ante),
            tuple(model.eval(f, env) for f in s.succ),
        )
        if not tv(bs):
            return env
    return None


def sequent_true_in_model(model: FiniteModel, s: Sequent, limit: int = MAX_ENVIRONMENTS) -> bool:
    """Is ``tv`` true for every assignment of carrier elements to free variables?

    Beyond ``limit`` assignments a seeded sample of that size is checked.
    """
    return falsifying_environment(model, s, limit) is None


def random_model(rng: random.Random, sig: Signature = DEFAULT_SIGNATURE, max_size: int = 3) -> FiniteModel:
    """Base carriers of 1..max_size elements (type 1: at least one t and one f)."""
    n0 = rng.randint(1, max_size)
    n1 = rng.randint(2, max(2, max_size))
    base0 = tuple(f"d{i}" for i in range(n0))
    values = [True, False] + [rng.random() < 0.5 for _ in range(n1 - 2)]
    rng.shuffle(values)
    base1 = tuple((f"e{i}", v) for i, v in enumerate(values))
    objects = {o: rng.choice(base0) for o in sig.objects}
    funs = {
        name: {args: rng.choice(base0) for args in product(base0, repeat=arity)}
        for name, arity in sig.functions
    }
    return FiniteModel(base0, base1, objects, funs)


def load_model(data: Any) -> FiniteModel:
    """Build a model from the JSON model format (a dict or JSON text)."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "carriers" not in data:
        raise ModelError("model needs a 'carriers' object")
    carriers = data["carriers"]
    base0 = tuple(carriers.get("0") or ())
    raw1 = carriers.get("1") or []
    base1 = []
    for e in raw1:
        if not isinstance(e, dict) or e.get("value") not in ("t", "f"):
            raise ModelError("type-1 elements are {\"name\": ..., \"value\": \"t\"|\"f\"}")
        base1.append((str(e["name"]), e["value"] == "t"))
    if not base0:
        base0 = ("d0",)
    by_name: dict[str, Element] = {n: n for n in base0}
    by_name.update({n: n for n, _ in base1})
    rel = data.get("rel", {})
    pending = []
    for key, names in carriers.items():
        if key in ("0", "1"):
            continue
        try:
            ty = parse_type(key)
        except ValueError as exc:
            raise ModelError(f"bad carrier type {key!r}: {exc}") from None
        if not isinstance(ty, tuple):
            raise ModelError(f"bad carrier type {key!r}")
        pending.append((ty, names))
    # components before the relation types built on them
    pending.sort(key=lambda p: len(type_str(p[0])))
    explicit: dict[Type, tuple[frozenset, ...]] = {}
    names_of: dict[frozenset, str] = {}
    for ty, names in pending:
        elems = []
        for n in names:
            tuples = []
            for tup in rel.get(n, []):
                if len(tup) != len(ty):
                    raise ModelError(f"tuple {tup} of {n} has the wrong length for {type_str(ty)}")
                try:
                    tuples.append(tuple(by_name[x] for x in tup))
                except KeyError as exc:
                    raise ModelError(f"unknown element {exc.args[0]!r} in {n}") from None
            e = frozenset(tuples)
            if n in by_name:
                raise ModelError(f"element name {n!r} used twice")
            by_name[n] = e
            names_of.setdefault(e, n)
            elems.append(e)
        if not elems:
            raise ModelError(f"carrier of {type_str(ty)} is empty")
        explicit[ty] = tuple(elems)
    objects = {}
    for o, n in data.get("objects", {}).items():
        if n not in base0:
            raise ModelError(f"object {o} interpreted outside the type-0 carrier")
        objects[o] = n
    funs: dict[str, dict[tuple[str, ...], str]] = {}
    for f, table in data.get("funs", {}).items():
        funs[f] = {tuple(k.split(",")): v for k, v in table.items()}
    return FiniteModel(base0, tuple(base1), objects, funs, explicit, names_of)

