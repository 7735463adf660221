import random

from hypothesis import given

from conftest import formulas, seeds
from ketonen.generators import random_quantified, random_redex
from ketonen.rank import height, prime_term, rank, subterm_representatives
from ketonen.syntax import BOT, FreeVar, Implies, ObjectSym, contract, instantiate, parse_term, parse_type

P, Q = FreeVar(0, 1), FreeVar(1, 1)


def test_prime_terms():
    assert prime_term(FreeVar(0, (1, 1)))
    assert prime_term(ObjectSym("c"))
    assert not prime_term(Implies(P, Q))


def test_subterm_representatives():
    assert subterm_representatives(P) == []
    assert subterm_representatives(Implies(P, Q)) == [P, Q]
    assert subterm_representatives(BOT) == [FreeVar(0, 1)]
    f = parse_term("all x0:1 . (x0:1 -> a0:1)")
    assert subterm_representatives(f) == [Implies(FreeVar(1, 1), P)]


def test_rank_examples():
    assert rank(P) == 0
    assert rank(Implies(P, Q)) == 1
    assert rank(parse_term("(lam x0:1 . (x0:1 -> x0:1))(a0:1)")) == 2
    assert rank(BOT) == 1


def test_height_examples():
    assert height(0) == height(1) == 0
    assert height(parse_type("(1)")) == 2
    assert height(parse_type("(0,(1))")) == 4


@given(formulas())
def test_implication_rank_law(f):
    for u in [f]:
        if isinstance(u, Implies):
            assert rank(u.lhs) < rank(u) and rank(u.rhs) < rank(u)


@given(seeds())
def test_quantifier_rank_law_and_variable_independence(seed):
    q = random_quantified(random.Random(seed))
    r = rank(q)
    assert rank(subterm_representatives(q)[0]) < r
    ty = q.binder.var_ty
    a, b = FreeVar(50, ty), FreeVar(51, ty)
    assert rank(instantiate(q, [a])) == rank(instantiate(q, [b]))


@given(seeds())
def test_redex_rank_law(seed):
    r = random_redex(random.Random(seed))
    assert rank(contract(r)) < rank(r)
