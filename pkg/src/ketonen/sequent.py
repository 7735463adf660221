"""Sequents, their corresponding formulas and truth values of boolean sequents."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, MutableMapping, Sequence

from .syntax.parser import ParseError, parse_sequent_parts
from .syntax.printer import show
from .syntax.terms import BOT, FreeVar, Implies, Term, free_vars_of, land, lor, neg, subterms_all


@dataclass(frozen=True)
class Sequent:
    ante: tuple[Term, ...] = ()
    succ: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ante", tuple(self.ante))
        object.__setattr__(self, "succ", tuple(self.succ))
        for f in self.ante + self.succ:
            if f.ty != 1:
                raise ValueError(f"sequent member {f} is not a formula")

    @classmethod
    def parse(cls, text: str, atoms: MutableMapping[str, Term] | None = None,
              auto_atoms: bool = False) -> "Sequent":
        ante, succ = parse_sequent_parts(text, atoms, auto_atoms)
        return cls(tuple(ante), tuple(succ))

    def show(self, sugar: bool = False) -> str:
        left = ", ".join(show(f, sugar) for f in self.ante)
        right = ", ".join(show(f, sugar) for f in self.succ)
        return f"{left} |- {right}".strip() if left or right else "|-"

    def __str__(self) -> str:
        return self.show()

    def side(self, name: str) -> tuple[Term, ...]:
        return self.ante if name == "ante" else self.succ

    def formulas(self) -> tuple[Term, ...]:
        return self.ante + self.succ

    def free_vars(self) -> frozenset[FreeVar]:
        return free_vars_of(self.ante + self.succ)

    def with_side(self, name: str, formulas: Sequence[Term]) -> "Sequent":
        if name == "ante":
            return Sequent(tuple(formulas), self.succ)
        return Sequent(self.ante, tuple(formulas))


def parse_sequent(text: str, atoms: MutableMapping[str, Term] | None = None,
                  auto_atoms: bool = False) -> Sequent:
    return Sequent.parse(text, atoms, auto_atoms)


def _conj(fs: Sequence[Term]) -> Term:
    return fs[0] if len(fs) == 1 else land(fs[0], _conj(fs[1:]))


def _disj(fs: Sequence[Term]) -> Term:
    return fs[0] if len(fs) == 1 else lor(fs[0], _disj(fs[1:]))


def corresponding_formula(s: Sequent) -> Term:
    """Conjunction of the antecedent implies disjunction of the succedent."""
    if s.ante and s.succ:
        return Implies(_conj(s.ante), _disj(s.succ))
    if s.ante:
        return neg(_conj(s.ante))
    if s.succ:
        return _disj(s.succ)
    return BOT


@dataclass(frozen=True)
class BoolSequent:
    ante: tuple[bool, ...] = ()
    succ: tuple[bool, ...] = ()

    def __str__(self) -> str:
        tf = lambda vs: ",".join("t" if v else "f" for v in vs)  # noqa: E731
        return f"{tf(self.ante)} |- {tf(self.succ)}".strip()


def tv(bs: BoolSequent) -> bool:
    return not all(bs.ante) or any(bs.succ)


class UndefinedAt(KeyError):
    def __init__(self, formula: Term):
        self.formula = formula
        super().__init__(f"no truth value for {formula}")


def map_valuation(s: Sequent, v: Mapping[Term, bool]) -> BoolSequent:
    def val(f: Term) -> bool:
        try:
            return bool(v[f])
        except KeyError:
            raise UndefinedAt(f) from None

    return BoolSequent(tuple(val(f) for f in s.ante), tuple(val(f) for f in s.succ))


def atoms_of(formulas: Iterable[Term]) -> list[FreeVar]:
    """Type-1 free variables in order of first occurrence."""
    seen: dict[FreeVar, None] = {}
    for f in formulas:
        for u in subterms_all(f):
            if isinstance(u, FreeVar) and u.var_ty == 1:
                seen.setdefault(u, None)
    return list(seen)


__all__ = [
    "BoolSequent",
    "ParseError",
    "Sequent",
    "UndefinedAt",
    "atoms_of",
    "corresponding_formula",
    "map_valuation",
    "parse_sequent",
    "tv",
]
