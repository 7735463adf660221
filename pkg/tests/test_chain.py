import pytest

from ketonen.calculus import SystemId
from ketonen.chain import (
    ChainStep,
    NotReducibleNorCritical,
    RChain,
    critical_step,
    rchain_step,
    rchain_successors,
    replay,
)
from ketonen.sequent import Sequent
from ketonen.syntax import BOT, FreeVar, Implies

P, Q, R = (FreeVar(i, 1) for i in range(3))


def seq(text):
    return Sequent.parse(text, {"P": P, "Q": Q, "R": R})


def test_branching_step():
    got = rchain_successors(seq("P -> Q |- R"), 0)
    assert [lab for lab, _, _ in got] == ["R3.1a", "R3.1b"]
    assert [t for _, t, _ in got] == [seq("~P |- R"), seq("Q |- R")]


def test_quantifier_step_uses_least_fresh_variable():
    assert rchain_step(Sequent.parse("|- all x0:1 . x0:1"), 0) == [Sequent.parse("|- a0:1")]
    assert rchain_step(Sequent.parse("a0:1 |- all x0:1 . x0:1"), 0) == [Sequent.parse("a0:1 |- a1:1")]


def test_critical_step():
    s = Sequent((BOT,), (P,))
    assert critical_step(s, 0) == Sequent((), (Implies(P, P),))
    assert rchain_successors(s, 0)[0][0] == "R3.4"
    # two critical formulas, m = 1: instances interleave per block
    two = Sequent.parse("all x0:1 . x0:1, all x0:1 . (x0:1 -> a5:1) |-")
    n = critical_step(two, 1).succ[0]
    parts = []
    while isinstance(n, Implies):
        parts.append(n.lhs)
        n = n.rhs
    assert n == BOT and len(parts) == 4
    assert parts[0] == FreeVar(0, 1) and parts[1] == Implies(FreeVar(0, 1), FreeVar(5, 1))


def test_primitive_raises():
    with pytest.raises(NotReducibleNorCritical):
        rchain_successors(seq("P |- Q"), 0)


def test_replay():
    good = RChain([
        ChainStep(seq("|- P -> Q"), "R3.1s"),
        ChainStep(seq("P |- Q"), "terminal-primitive"),
    ], SystemId.KCTT)
    assert replay(good)[0]
    bad = RChain([
        ChainStep(seq("|- P -> Q"), "R3.1s"),
        ChainStep(seq("Q |- P"), "terminal-primitive"),
    ], SystemId.KCTT)
    ok, why = replay(bad)
    assert not ok and "step 0" in why
