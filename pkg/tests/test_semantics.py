import json
import random

import pytest
from hypothesis import given, settings

from conftest import prop_sequents, seeds
from ketonen.calculus import SystemId
from ketonen.chain import ChainStep, RChain
from ketonen.engine import Proved, build_tableau
from ketonen.generators import random_redex
from ketonen.semantics import (
    Clash,
    ComprehensionGap,
    FiniteModel,
    ModelError,
    OutOfFragment,
    PartialValuation,
    check_partial_valuation,
    environments,
    extract_partial_valuation,
    falsifying_assignment,
    hintikka_check,
    load_model,
    propositional_oracle,
    random_model,
    sequent_true_in_model,
)
from ketonen.sequent import Sequent
from ketonen.syntax import BOT, FreeVar, Implies, contract, free_vars, neg, parse_formula

P, Q = FreeVar(0, 1), FreeVar(1, 1)


def seq(text):
    return Sequent.parse(text, {"P": P, "Q": Q})


MODEL = {
    "carriers": {
        "0": ["c1"],
        "1": [{"name": "e1", "value": "t"}, {"name": "e0", "value": "f"}],
        "(1)": ["r1", "r0"],
    },
    "rel": {"r1": [["e1"]], "r0": []},
    "objects": {"c": "c1"},
    "funs": {},
}


def test_oracle():
    assert propositional_oracle(seq("|- ((P -> Q) -> P) -> P"))
    assert not propositional_oracle(seq("|- P -> Q"))
    assert falsifying_assignment(seq("|- P -> Q")) == {P: True, Q: False}
    assert propositional_oracle(seq("_|_ |-"))
    with pytest.raises(OutOfFragment):
        propositional_oracle(Sequent.parse("|- all x0:0 . a0:(0)(x0:0)"))


def test_valuation_conditions():
    good = PartialValuation({Implies(P, Q): False, P: True, Q: False})
    assert check_partial_valuation(good).ok
    bad = PartialValuation({Implies(P, Q): True, P: True, Q: False})
    assert check_partial_valuation(bad).violations["V1"] == [Implies(P, Q)]
    v2 = PartialValuation({Implies(P, Q): False, P: True})
    assert not check_partial_valuation(v2).passed("V2")
    f = parse_formula("all x0:1 . (x0:1 -> x0:1)")
    v3 = PartialValuation({f: True, P: True})
    assert not check_partial_valuation(v3).passed("V3")
    v4 = PartialValuation({f: False})
    assert not check_partial_valuation(v4).passed("V4")
    r = parse_formula("(lam x0:1 . x0:1)(a0:1)")
    assert not check_partial_valuation(PartialValuation({r: True, P: False})).passed("V5")


def test_extract_and_clash():
    chain = RChain([ChainStep(seq("|- P -> Q"), "R3.1s"), ChainStep(seq("P |- Q"), "terminal-primitive")],
                   SystemId.KCTT)
    v = extract_partial_valuation(chain)
    assert v.atomic_part() == {P: True, Q: False} and v[Implies(P, Q)] is False
    clash = RChain([ChainStep(seq("P |- P"), "terminal-primitive")], SystemId.KCTT)
    with pytest.raises(Clash):
        extract_partial_valuation(clash)


def test_hintikka_report():
    chain = RChain([ChainStep(seq("|- P -> Q"), "R3.1s"), ChainStep(seq("P |- Q"), "terminal-primitive")],
                   SystemId.KCTT)
    rep = hintikka_check(chain)
    assert rep.passes and rep.checks["clause1"] is True
    # a chain that stops early leaves the implication unsaturated
    short = RChain([ChainStep(seq("|- P -> Q"), "terminal-primitive")], SystemId.KCTT)
    assert "H1" in hintikka_check(short).failed()
    neg_chain = RChain([ChainStep(Sequent((neg(P),), ()), "terminal-primitive")], SystemId.KCTT_H)
    assert hintikka_check(neg_chain).checks["H2-neg"] is False
    assert hintikka_check(neg_chain).checks["clause1"] is None


def test_model_loading_and_evaluation():
    m = load_model(json.dumps(MODEL))
    assert m.eval(BOT, {}) is False
    assert not sequent_true_in_model(m, Sequent((), (BOT,)))
    assert sequent_true_in_model(m, Sequent.parse("|- all x0:(1) . (x0:(1)(a0:1) -> x0:(1)(a0:1))"))
    assert not sequent_true_in_model(m, Sequent.parse("|- all x0:(1) . x0:(1)(a0:1)"))
    # the identity relation is missing from the explicit carrier
    with pytest.raises(ComprehensionGap):
        m.denote(parse_formula("(lam x0:1 . (x0:1 -> x0:1))(a0:1)").head, {})
    assert load_model(m.to_json()).carrier((1,)) == m.carrier((1,))


def test_model_errors():
    with pytest.raises(ModelError):
        load_model({"carriers": {"1": [{"name": "e", "value": "t"}]}})
    with pytest.raises(ModelError):
        load_model({"nothing": 1})
    with pytest.raises(ModelError):
        FiniteModel(("d",), ())


def test_full_carriers_for_relation_types():
    m = random_model(random.Random(0), max_size=2)
    assert len(m.carrier((0,))) == 2 ** len(m.carrier(0))


@settings(max_examples=40, deadline=None)
@given(seeds())
def test_beta_preserves_value(seed):
    rng = random.Random(seed)
    r = random_redex(rng, 30, 2)
    m = random_model(rng, max_size=2)
    env = rng.choice(list(environments(m, free_vars(r))))
    assert m.eval(r, env) == m.eval(contract(r), env)


@settings(max_examples=40, deadline=None)
@given(prop_sequents(), seeds())
def test_soundness_in_finite_models(s, seed):
    if isinstance(build_tableau(s), Proved):
        m = random_model(random.Random(seed), max_size=3)
        assert sequent_true_in_model(m, s)
