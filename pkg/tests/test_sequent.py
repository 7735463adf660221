from itertools import product

import pytest
from hypothesis import given

from conftest import parse, prop_sequents
from ketonen.semantics.oracle import eval_prop
from ketonen.sequent import (
    BoolSequent,
    Sequent,
    UndefinedAt,
    atoms_of,
    corresponding_formula,
    map_valuation,
    tv,
)
from ketonen.syntax import BOT, FreeVar, Implies, land, lor, neg

P, Q, R = (FreeVar(i, 1) for i in range(3))


def test_corresponding_formula():
    assert corresponding_formula(Sequent((P, Q), (R,))) == Implies(land(P, Q), R)
    assert corresponding_formula(Sequent()) == BOT
    assert corresponding_formula(Sequent((P,), ())) == neg(P)
    assert corresponding_formula(Sequent((), (P, Q, R))) == lor(P, lor(Q, R))


def test_tv_examples():
    assert tv(BoolSequent((True, False, True), (False, True, False)))
    assert not tv(BoolSequent((), (False, False, False)))
    assert not tv(BoolSequent())
    for x in (True, False):
        assert tv(BoolSequent((x,), (x,)))


def test_map_valuation():
    assert map_valuation(Sequent((P,), (P,)), {P: True}) == BoolSequent((True,), (True,))
    assert map_valuation(Sequent(), {}) == BoolSequent()
    with pytest.raises(UndefinedAt):
        map_valuation(Sequent((P,), (Q,)), {P: True})


def test_text_form():
    assert str(parse("P, Q |- Q, P")) == "a0:1, a1:1 |- a1:1, a0:1"
    assert str(Sequent()) == "|-"
    assert str(parse("P |-")) == "a0:1 |-"
    assert parse("|- ~P").show(sugar=True) == "|- ~a0:1"
    with pytest.raises(ValueError):
        Sequent((), (FreeVar(0, 0),))


@given(prop_sequents())
def test_tv_matches_corresponding_formula(s):
    atoms = atoms_of(s.ante + s.succ)
    for row in product((True, False), repeat=len(atoms)):
        v = dict(zip(atoms, row))
        bs = BoolSequent(tuple(eval_prop(f, v) for f in s.ante), tuple(eval_prop(f, v) for f in s.succ))
        assert tv(bs) == eval_prop(corresponding_formula(s), v)
