import random

import pytest
from hypothesis import given

from conftest import parse, prop_sequents, seeds
from ketonen.calculus import (
    EigenvariableClash,
    FormulaClass,
    GuardViolated,
    OpenLeaf,
    ProofFigure,
    RuleApplication,
    RuleShapeMismatch,
    SystemId,
    apply_tableau_rule,
    check_gentzen_step,
    check_proof_figure,
    classify,
    distinguished,
    figure_from_json,
    figure_to_json,
    is_axiom,
    is_closed,
    order_of,
    positions,
    rule_for,
)
from ketonen.generators import random_formula
from ketonen.sequent import Sequent
from ketonen.syntax import BOT, FreeVar, Implies, free_vars, parse_formula

P, Q, R = (FreeVar(i, 1) for i in range(3))


def seq(text):
    atoms = {"P": P, "Q": Q, "R": R}
    return Sequent.parse(text, atoms)


def test_axioms():
    assert is_axiom(seq("P |- P"))
    assert is_axiom(seq("P, Q |- P"))
    assert not is_axiom(seq("(P -> Q) |- (P -> Q)"))
    assert is_closed(seq("P, P -> Q |- P"))
    assert not is_closed(seq("P -> Q |- P -> Q"))


def test_classification():
    assert classify(Implies(P, Q), "succ") is FormulaClass.REDUCIBLE_S
    assert classify(parse_formula("all x0:0 . a0:(0)(x0:0)"), "ante") is FormulaClass.CRITICAL
    assert classify(Implies(P, BOT), "ante") is FormulaClass.INERT_IMPL_GUARD
    assert classify(Implies(P, BOT), "succ") is FormulaClass.REDUCIBLE_S
    assert classify(P, "ante") is FormulaClass.ATOMIC_MINIMAL


def test_distinguished():
    assert distinguished(seq("P |- P -> Q")) == ("succ", 0)
    assert distinguished(seq("P -> Q |- R -> P")) == ("succ", 0)
    assert distinguished(seq("P |- Q")) is None
    assert distinguished(seq("~P |- Q")) is None
    assert distinguished(seq("~P |- Q"), with_negl=True) == ("ante", 0)


def test_tableau_rules_retaining():
    assert apply_tableau_rule(seq("|- P -> Q"), RuleApplication("ImpR")) == [seq("P |- Q, P -> Q")]
    assert apply_tableau_rule(seq("P -> Q |- R"), RuleApplication("ImpL")) == [
        seq("~P, P -> Q |- R"),
        seq("Q, P -> Q |- R"),
    ]
    assert apply_tableau_rule(seq("~P |- Q"), RuleApplication("NegL")) == [seq("~P |- Q, P")]


def test_tableau_rules_dropping():
    s = Sequent.parse("|- (lam x0:1 . x0:1)(P)", {"P": P})
    assert apply_tableau_rule(s, RuleApplication("LamR"), SystemId.KCTT) == [seq("|- P")]
    assert apply_tableau_rule(seq("P -> Q |- R"), RuleApplication("ImpL"), SystemId.KCTT) == [
        seq("~P |- R"),
        seq("Q |- R"),
    ]


def test_quantifier_rules():
    s = Sequent.parse("|- all x0:1 . x0:1")
    assert apply_tableau_rule(s, RuleApplication("AllR"), SystemId.KCTT) == [Sequent.parse("|- a0:1")]
    with pytest.raises(EigenvariableClash):
        apply_tableau_rule(Sequent.parse("a0:1 |- all x0:1 . x0:1"), RuleApplication("AllR", witness=P))
    s = Sequent.parse("all x0:1 . x0:1 |- a1:1")
    got = apply_tableau_rule(s, RuleApplication("AllL", witness=Q), SystemId.KCTT)
    assert got == [Sequent.parse("a1:1, all x0:1 . x0:1 |- a1:1")]


def test_rule_errors():
    with pytest.raises(GuardViolated):
        apply_tableau_rule(seq("~P |- Q"), RuleApplication("ImpL", index=0))
    with pytest.raises(RuleShapeMismatch):
        apply_tableau_rule(seq("P |- Q"), RuleApplication("ImpR"))
    with pytest.raises(ValueError):
        RuleApplication("ImpR", side="ante")


def test_gentzen_steps():
    imp = RuleApplication("ImpR")
    assert check_gentzen_step([seq("P |- Q, P -> Q")], seq("|- P -> Q"), imp, SystemId.KCT_H)
    assert check_gentzen_step([seq("P |- Q")], seq("|- P -> Q"), imp, SystemId.KCT)
    assert not check_gentzen_step([seq("P |- Q")], seq("|- P -> Q"), imp, SystemId.KCT_H)


def test_proof_figures():
    leaf = ProofFigure(seq("P |- P"))
    assert check_proof_figure(leaf, SystemId.KCT).ok
    fig = ProofFigure(seq("|- P -> P"), RuleApplication("ImpR"), [leaf])
    assert check_proof_figure(fig, SystemId.KCT).ok
    assert not check_proof_figure(fig, SystemId.KCT_H).ok
    bad = ProofFigure(seq("P -> Q |- P -> Q"))
    assert not check_proof_figure(bad, SystemId.KCT).ok
    assert order_of(leaf) == 0
    assert order_of(fig) == 1
    two = ProofFigure(seq("P -> Q, P |- Q"), RuleApplication("ImpL"),
                      [ProofFigure(seq("~P, P |- Q, P")), ProofFigure(seq("Q, P |- Q"))])
    assert order_of(two) == 1
    with pytest.raises(OpenLeaf):
        order_of(bad)


def test_figure_json_round_trip():
    leaf = ProofFigure(seq("P |- P"))
    fig = ProofFigure(seq("|- P -> P"), RuleApplication("ImpR"), [leaf])
    data = figure_to_json(fig)
    assert data["rule"] == "ImpR" and data["children"][0]["rule"] is None
    back = figure_from_json(data)
    assert back.sequent == fig.sequent and check_proof_figure(back, SystemId.KCT).ok


@given(prop_sequents())
def test_rule_duality(s):
    for sysid, gen in ((SystemId.KCTT_H, SystemId.KCT_H), (SystemId.KCTT, SystemId.KCT)):
        for side, i, f in positions(s):
            rule = rule_for(f, side)
            if rule is None:
                continue
            app = RuleApplication(rule, side, i)
            prem = apply_tableau_rule(s, app, sysid)
            assert check_gentzen_step(prem, s, app, gen), (s, app)


@given(prop_sequents())
def test_retention(s):
    for side, i, f in positions(s):
        rule = rule_for(f, side)
        if rule is None:
            continue
        for p in apply_tableau_rule(s, RuleApplication(rule, side, i), SystemId.KCTT_H):
            assert f in p.side(side)


@given(seeds())
def test_eigenvariable_freshness(seed):
    rng = random.Random(seed)
    body = random_formula(rng, 20)
    s = Sequent((body,), (parse_formula("all x0:1 . (x0:1 -> a0:1)"),))
    (succ,) = apply_tableau_rule(s, RuleApplication("AllR"), SystemId.KCTT_H)
    new = succ.succ[0]
    fresh = (free_vars(new) - s.free_vars())
    assert len(fresh) == 1
    a = next(iter(fresh))
    assert all(a not in free_vars(f) for f in succ.ante + succ.succ[1:])
