"""Partial valuations read off reduction chains, and the V1-V5 conditions."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from ..chain import RChain
from ..syntax.terms import (
    Forall,
    FreeVar,
    Implies,
    Term,
    Type,
    contract,
    instantiate,
    is_redex,
    loose_bound_vars,
    match_instance,
    subterms_all,
)


class Clash(ValueError):
    def __init__(self, formula: Term):
        self.formula = formula
        super().__init__(f"{formula} occurs on both sides of the chain")


@dataclass(frozen=True)
class PartialValuation:
    assignment: Mapping[Term, bool]

    def get(self, f: Term) -> Optional[bool]:
        return self.assignment.get(f)

    def __getitem__(self, f: Term) -> bool:
        return self.assignment[f]

    def __contains__(self, f: object) -> bool:
        return f in self.assignment

    def __iter__(self) -> Iterator[Term]:
        return iter(self.assignment)

    def __len__(self) -> int:
        return len(self.assignment)

    def atomic_part(self) -> dict[FreeVar, bool]:
        return {f: v for f, v in self.assignment.items() if isinstance(f, FreeVar) and f.var_ty == 1}

    def show(self) -> str:
        return "{" + ", ".join(f"{f} -> {'t' if v else 'f'}" for f, v in self.assignment.items()) + "}"


def extract_partial_valuation(chain: RChain) -> PartialValuation:
    """Antecedent formulas of the chain are true, succedent formulas false."""
    out: dict[Term, bool] = {}
    for s in chain.sequents:
        for val, side in ((True, s.ante), (False, s.succ)):
            for f in side:
                if out.setdefault(f, val) != val:
                    raise Clash(f)
    return PartialValuation(out)


def term_universe(formulas: Iterable[Term]) -> dict[Type, list[Term]]:
    """Closed terms occurring in ``formulas``, grouped by type."""
    seen: dict[Type, dict[Term, None]] = defaultdict(dict)
    for f in formulas:
        for u in subterms_all(f):
            if not loose_bound_vars(u):
                seen[u.ty].setdefault(u, None)
    return {ty: list(d) for ty, d in seen.items()}


@dataclass
class ValuationReport:
    violations: dict[str, list[Term]] = field(default_factory=lambda: {k: [] for k in ("V1", "V2", "V3", "V4", "V5")})

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def passed(self, cond: str) -> bool:
        return not self.violations[cond]

    def __bool__(self) -> bool:
        return self.ok


def check_partial_valuation(
    v: PartialValuation, universe: Optional[Mapping[Type, list[Term]]] = None
) -> ValuationReport:
    """Check V1-V5 on the formulas ``v`` assigns.

    V1 tolerates undefined components; V2, V3 and V5 demand defined values.
    V3 ranges over ``universe`` (default: closed terms occurring in the domain)
    and V4 looks for a free-variable instance among assigned formulas.
    """
    if universe is None:
        universe = term_universe(v.assignment)
    rep = ValuationReport()
    for f, val in v.assignment.items():
        if isinstance(f, Implies):
            a, b = v.get(f.lhs), v.get(f.rhs)
            if val and a is True and b is False:
                rep.violations["V1"].append(f)
            if not val and not (a is True and b is False):
                rep.violations["V2"].append(f.lhs if a is not True else f.rhs)
        elif isinstance(f, Forall):
            if val:
                for t in universe.get(f.binder.var_ty, []):
                    inst = instantiate(f, [t])
                    if v.get(inst) is not True:
                        rep.violations["V3"].append(inst)
                        break
            elif not _has_false_instance(v, f):
                rep.violations["V4"].append(f)
        elif is_redex(f):
            if v.get(contract(f)) != val:
                rep.violations["V5"].append(f)
    return rep


def _has_false_instance(v: PartialValuation, f: Forall) -> bool:
    for g, val in v.assignment.items():
        if val is False:
            got = match_instance(f, g)
            if got is not None and (isinstance(got[0], FreeVar) or f.binder not in subterms_all(f.body)):
                return True
    return False
