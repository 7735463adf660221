"""Truth-table validity for the implication/falsum fragment."""

from __future__ import annotations

from itertools import product
from typing import Mapping

from ..sequent import BoolSequent, Sequent, atoms_of, tv
from ..syntax.terms import FreeVar, Implies, Term, is_bot


class OutOfFragment(ValueError):
    pass


def in_fragment(f: Term) -> bool:
    if isinstance(f, FreeVar):
        return f.var_ty == 1
    if is_bot(f):
        return True
    if isinstance(f, Implies):
        return in_fragment(f.lhs) and in_fragment(f.rhs)
    return False


def eval_prop(f: Term, assignment: Mapping[FreeVar, bool]) -> bool:
    if isinstance(f, FreeVar):
        return assignment[f]
    if is_bot(f):
        return False
    if isinstance(f, Implies):
        return not eval_prop(f.lhs, assignment) or eval_prop(f.rhs, assignment)
    raise OutOfFragment(f"{f} is outside the implication/falsum fragment")


def sequent_value(s: Sequent, assignment: Mapping[FreeVar, bool]) -> bool:
    return tv(BoolSequent(
        tuple(eval_prop(f, assignment) for f in s.ante),
        tuple(eval_prop(f, assignment) for f in s.succ),
    ))


def check_fragment(s: Sequent) -> None:
    for f in s.ante + s.succ:
        if not in_fragment(f):
            raise OutOfFragment(f"{f} is outside the implication/falsum fragment")


def falsifying_assignment(s: Sequent) -> dict[FreeVar, bool] | None:
    """First row of the truth table (atoms in order of occurrence) with tv = f."""
    check_fragment(s)
    atoms = atoms_of(s.ante + s.succ)
    for row in product((True, False), repeat=len(atoms)):
        a = dict(zip(atoms, row))
        if not sequent_value(s, a):
            return a
    return None


def propositional_oracle(s: Sequent) -> bool:
    """Is ``s`` true under every assignment to its atoms (falsum false)?"""
    return falsifying_assignment(s) is None
