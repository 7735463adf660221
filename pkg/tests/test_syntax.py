import pytest
from hypothesis import given

from conftest import formulas, seeds
from ketonen.syntax import (
    BOT,
    Apply,
    BoundVar,
    Forall,
    FreeVar,
    Hole,
    HoleMismatch,
    CaptureViolation,
    IllTyped,
    Implies,
    Lambda,
    NominalForm,
    ObjectSym,
    ParseError,
    Signature,
    alpha_eq,
    canonical,
    contract,
    enumerate_terms,
    fresh_free_var,
    instantiate,
    land,
    lor,
    match_instance,
    neg,
    parse_formula,
    parse_term,
    parse_type,
    plug,
    show,
    size,
    term_at,
    type_of,
)

P, Q = FreeVar(0, 1), FreeVar(1, 1)


def test_type_of_examples():
    assert type_of(FreeVar(0, 1)) == 1
    assert type_of(Apply(FreeVar(0, (1,)), (FreeVar(1, 1),))) == 1
    assert type_of(Lambda((BoundVar(0, 1),), BoundVar(0, 1))) == (1,)


def test_ill_typed_rejected():
    with pytest.raises(IllTyped):
        Apply(FreeVar(0, (1,)), (ObjectSym("c"),))
    with pytest.raises(IllTyped):
        Implies(ObjectSym("c"), P)


def test_alpha_equivalence():
    assert alpha_eq(Forall(BoundVar(0, 1), BoundVar(0, 1)), Forall(BoundVar(5, 1), BoundVar(5, 1)))
    assert not alpha_eq(BOT, P)
    assert alpha_eq(Lambda((BoundVar(0, 1),), BoundVar(0, 1)), Lambda((BoundVar(1, 1),), BoundVar(1, 1)))


def test_defined_connectives():
    assert show(BOT) == "(all x0:1 . x0:1)"
    assert neg(P) == Implies(P, BOT)
    assert lor(P, Q) == Implies(Implies(P, BOT), Q)
    assert land(P, Q) == neg(Implies(P, neg(Q)))


def test_fresh_free_var():
    assert fresh_free_var(1, {FreeVar(0, 1)}) == FreeVar(1, 1)
    assert fresh_free_var(1, set()) == FreeVar(0, 1)
    assert fresh_free_var((1,), {FreeVar(0, (1,)), FreeVar(1, (1,))}) == FreeVar(2, (1,))


def test_instantiate_examples():
    assert instantiate(BOT, [P]) == P
    ident = parse_term("lam x0:1 . (x0:1 -> x0:1)")
    assert instantiate(ident, [P]) == Implies(P, P)
    f = parse_term("all x0:(1) . x0:(1)(a0:1)")
    got = instantiate(f, [parse_term("lam x0:1 . x0:1")])
    assert show(got) == "(lam x0:1 . x0:1)(a0:1)"
    assert contract(got) == P


def test_nominal_forms():
    nf = NominalForm.of(Implies(Hole(1, 1), P))
    assert plug(nf, [Q]) == Implies(Q, P)
    assert plug(NominalForm.of(Hole(1, 1)), [BOT]) == BOT
    with pytest.raises(HoleMismatch):
        NominalForm(Implies(Hole(1, 1), Hole(1, 1)), (1,))
    with pytest.raises(HoleMismatch):
        plug(nf, [P, Q])


def test_plug_capture():
    x = BoundVar(0, 1)
    nf = NominalForm(Forall(x, Implies(x, Hole(1, 1))), (1,))
    with pytest.raises(CaptureViolation):
        plug(nf, [x], repair=False)
    repaired = plug(nf, [x])
    # the plugged x stays loose; the template binder was renamed apart
    assert repaired.binder != x


def test_enumeration_order_is_frozen():
    assert enumerate_terms(1, k=0) == []
    assert [show(t) for t in enumerate_terms(1, k=2)] == ["a0:1", "a1:1"]
    assert [show(t) for t in enumerate_terms(0, k=1)] == ["'c"]
    assert [show(t) for t in enumerate_terms(1, k=9)] == [
        "a0:1", "a1:1", "a2:1", "(a0:1 -> a0:1)", "(all x0:0 . a0:1)", "(all x0:1 . a0:1)",
        "(all x0:1 . x0:1)", "a3:1", "a0:(0)('c)",
    ]
    assert [show(t) for t in enumerate_terms((1,), k=4)] == [
        "a0:(1)", "a1:(1)", "(lam x0:1 . a0:1)", "(lam x0:1 . x0:1)",
    ]
    assert term_at(1, 31) == neg(P)


def test_enumeration_respects_signature():
    sig = Signature.make(("c", "d"), {"f": 1})
    first = enumerate_terms(0, sig, 3)
    assert [show(t) for t in first[:2]] == ["'c", "'d"]
    assert len(set(enumerate_terms(0, sig, 30))) == 30


def test_enumeration_is_size_monotone():
    ts = enumerate_terms(1, k=60)
    assert len(set(ts)) == 60
    assert [size(t) for t in ts] == sorted(size(t) for t in ts)


def test_parser_sugar_and_errors():
    atoms = {}
    f = parse_formula("~P -> _|_", atoms, auto_atoms=True)
    assert f == Implies(neg(P), BOT)
    assert parse_type("(0,(1))") == (0, (1,))
    with pytest.raises(ParseError) as err:
        parse_term("(a0:1 -> ")
    assert err.value.pos == 9
    with pytest.raises(ParseError):
        parse_term("P")
    with pytest.raises(ParseError):
        parse_formula("'c")
    with pytest.raises(ParseError):
        parse_term("x0:1")


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_term(show(f)) == f
    assert parse_term(show(f, sugar=True)) == f


@given(formulas())
def test_canonical_is_idempotent(f):
    assert canonical(f) == f
    assert hash(canonical(f)) == hash(f)


@given(seeds())
def test_match_inverts_instantiate(seed):
    import random

    from ketonen.generators import random_quantified, random_term

    rng = random.Random(seed)
    q = random_quantified(rng)
    t = random_term(rng, q.binder.var_ty)
    inst = instantiate(q, [t])
    got = match_instance(q, inst)
    assert got is not None
    assert instantiate(q, list(got)) == inst
