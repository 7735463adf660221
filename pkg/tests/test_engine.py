import random

import pytest
from hypothesis import example, given, settings

from conftest import prop_sequents, seeds
from ketonen.calculus import SystemId, check_proof_figure, is_closed
from ketonen.chain import replay
from ketonen.engine import (
    Budget,
    NoOpenBranch,
    NotConvertible,
    PremiseNotProved,
    Proved,
    Refuted,
    Unknown,
    build_tableau,
    countermodel_value,
    cut_harness,
    derived_kind,
    extract_open_branch,
    minimum_order,
    minimum_order_proof,
    prove_derived,
    to_proof_figure,
    verdict_json,
)
from ketonen.generators import bounded_rank_formula, random_context
from ketonen.semantics.oracle import propositional_oracle
from ketonen.sequent import Sequent
from ketonen.syntax import BOT, FreeVar

P, Q, R = (FreeVar(i, 1) for i in range(3))


def seq(text):
    return Sequent.parse(text, {"P": P, "Q": Q, "R": R})


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        Budget(0, 10, 1)


@pytest.mark.parametrize("sysid", [SystemId.KCTT, SystemId.KCTT_H])
def test_simple_proofs(sysid):
    v = build_tableau(seq("|- P -> P"), sysid)
    assert isinstance(v, Proved) and v.order == 1
    assert isinstance(build_tableau(seq("|- ((P -> Q) -> P) -> P"), sysid), Proved)


def test_refutation_with_chain():
    v = build_tableau(seq("|- P -> Q"), SystemId.KCTT)
    assert isinstance(v, Refuted)
    assert v.branch.sequents == [seq("|- P -> Q"), seq("P |- Q")]
    assert [st.label for st in v.branch.steps] == ["R3.1s", "terminal-primitive"]
    assert v.valuation.atomic_part() == {P: True, Q: False}
    assert v.hintikka.passes and v.valuation_report.ok
    assert not countermodel_value(v)


def test_extract_open_branch():
    v = build_tableau(seq("|- P -> Q"), SystemId.KCTT)
    assert extract_open_branch(v.tableau).sequents == [seq("|- P -> Q"), seq("P |- Q")]
    only = build_tableau(seq("|- P"), SystemId.KCTT_H)
    assert extract_open_branch(only.tableau).sequents == [seq("|- P")]
    closed = build_tableau(seq("P |- P"), SystemId.KCTT_H)
    with pytest.raises(NoOpenBranch):
        extract_open_branch(closed.tableau)


def test_branching_arity_and_labels():
    v = build_tableau(seq("P -> Q, P |- Q"), SystemId.KCTT_H)
    assert isinstance(v, Proved)
    for node in v.tableau.root.nodes():
        if node.step == "R3.1":
            assert len(node.children) == 2
        elif node.children:
            assert len(node.children) == 1


def test_derived_rules():
    assert derived_kind(seq("P -> Q |- P -> Q")) == "identity"
    assert isinstance(prove_derived(seq("P -> Q |- P -> Q")), Proved)
    assert isinstance(prove_derived(seq("P, Q |- Q, P")), Proved)
    assert derived_kind(Sequent((BOT,), ())) == "falsum-antecedent"
    falsum = prove_derived(Sequent((BOT,), ()), budget=Budget(max_critical_rounds=40))
    assert isinstance(falsum, Proved)
    # three critical rounds are not enough for an empty succedent
    assert isinstance(prove_derived(Sequent((BOT,), ())), Unknown)


def test_critical_round_budget_gives_unknown_never_refuted():
    v = build_tableau(Sequent.parse("all x0:0 . a0:(0)(x0:0) |- a1:1"), SystemId.KCTT_H)
    assert isinstance(v, Unknown) and "critical-round" in v.reason


def test_kctt_critical_step_blocks_refutation():
    # the folded step drops the universal, so an open branch proves nothing
    v = build_tableau(Sequent.parse("all x0:(1) . x0:(1)(a0:1) |- a0:1"), SystemId.KCTT)
    assert isinstance(v, Unknown)
    assert isinstance(build_tableau(Sequent.parse("all x0:(1) . x0:(1)(a0:1) |- a0:1")), Proved)


def test_node_budget():
    v = build_tableau(Sequent((BOT,), ()), SystemId.KCTT_H, Budget(max_nodes=5, max_critical_rounds=40))
    assert isinstance(v, Unknown) and "node budget" in v.reason


def test_proof_figure_conversion():
    v = build_tableau(seq("|- (P -> Q) -> ~Q -> ~P"), SystemId.KCTT_H)
    assert check_proof_figure(to_proof_figure(v.tableau), SystemId.KCT_H).ok
    k = build_tableau(Sequent((BOT,), (P,)), SystemId.KCTT)
    assert isinstance(k, Proved)
    with pytest.raises(NotConvertible):
        to_proof_figure(k.tableau)


def test_cut_harness():
    concl, v = cut_harness(seq("|- P, ~P"), seq("P |- P"))
    assert concl == seq("|- P, ~P") and isinstance(v, Proved)
    concl, v = cut_harness(seq("|- Q -> Q"), seq("Q -> Q |- Q -> Q"))
    assert concl == seq("|- Q -> Q") and isinstance(v, Proved)
    with pytest.raises(PremiseNotProved):
        cut_harness(seq("|- P"), seq("P |- P"))
    with pytest.raises(ValueError):
        cut_harness(seq("|- Q -> Q"), seq("P |- P"))


def test_minimum_order():
    assert minimum_order(seq("P |- P")) == 0
    assert minimum_order(seq("|- P -> P")) == 1
    assert minimum_order(seq("|- P")) is None
    pf = minimum_order_proof(seq("P -> Q, P |- Q"))
    assert pf is not None and check_proof_figure(pf, SystemId.KCT_H).ok


def test_json_is_deterministic():
    a = verdict_json(build_tableau(seq("|- ((P -> Q) -> P) -> P")))
    b = verdict_json(build_tableau(seq("|- ((P -> Q) -> P) -> P")))
    assert a == b and a["verdict"] == "Proved"


@settings(max_examples=60, deadline=None)
@given(prop_sequents())
def test_verdict_agrees_with_oracle(s):
    v = build_tableau(s, SystemId.KCTT_H)
    if isinstance(v, Proved):
        assert propositional_oracle(s)
        assert check_proof_figure(to_proof_figure(v.tableau), SystemId.KCT_H).ok
    elif isinstance(v, Refuted):
        assert not propositional_oracle(s)
        assert v.hintikka.passes and v.valuation_report.ok
        assert not countermodel_value(v)
        assert replay(v.branch)[0]
    else:
        # only branches with falsum in the antecedent run out of critical
        # rounds, and those branches are valid
        assert propositional_oracle(s)


@settings(max_examples=60, deadline=None)
@given(prop_sequents())
def test_atom_persistence(s):
    v = build_tableau(s, SystemId.KCTT_H)

    def walk(node, seen_a, seen_s):
        seen_a = seen_a | {f for f in node.sequent.ante if isinstance(f, FreeVar)}
        seen_s = seen_s | {f for f in node.sequent.succ if isinstance(f, FreeVar)}
        assert seen_a <= set(node.sequent.ante) and seen_s <= set(node.sequent.succ)
        for c in node.children:
            walk(c, seen_a, seen_s)

    walk(v.tableau.root, set(), set())


@settings(max_examples=30, deadline=None)
@given(seeds())
@example(seed=6263872)  # four nested universals over falsum
def test_identity_and_falsum_theorems(seed):
    rng = random.Random(seed)
    f = bounded_rank_formula(rng, 4)
    derived = Budget(max_critical_rounds=40)
    assert isinstance(build_tableau(Sequent((f,), (f,)), budget=derived), Proved)
    s = Sequent(tuple(random_context(rng)) + (BOT,), tuple(random_context(rng)))
    assert isinstance(build_tableau(s, budget=derived), Proved)


def test_closed_leaves_of_proofs():
    v = build_tableau(seq("|- (P -> Q -> R) -> (P -> Q) -> P -> R"))
    for node in v.tableau.root.nodes():
        if not node.children:
            assert is_closed(node.sequent)
