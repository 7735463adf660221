"""Axioms, rule schemata, formula classification and proof-figure checking.

Tableau direction (KCTT, KCTT_h) reduces a sequent to its successors; Gentzen
direction (KCT, KCT_h) derives a conclusion from premises.  Both read the
same schemata.  The ``_h`` systems keep the principal formula in every
successor, immediately right of the formula(s) the rule introduces.

Besides the six named rules there is ``NegL`` for an antecedent ``A -> _|_``,
which the implication rule's guard leaves untouched: ``Γ1, ~A, Γ2 |- Δ``
reduces to ``Γ1, Γ2 |- Δ, A`` (``Γ1, ~A, Γ2 |- Δ, A`` when retaining).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .sequent import Sequent
from .syntax.enumerate import DEFAULT_SIGNATURE, Signature, term_at
from .syntax.parser import parse_term
from .syntax.terms import (
    Forall,
    FreeVar,
    Implies,
    Term,
    contract,
    fresh_free_var,
    instantiate,
    is_atomic,
    is_bot,
    is_redex,
    match_instance,
    neg,
    subterms_all,
)


class SystemId(enum.Enum):
    KCT = "kct"
    KCT_H = "kct_h"
    KCTT = "kctt"
    KCTT_H = "kctt_h"

    @property
    def retains(self) -> bool:
        return self in (SystemId.KCT_H, SystemId.KCTT_H)

    @property
    def tableau(self) -> bool:
        return self in (SystemId.KCTT, SystemId.KCTT_H)

    @property
    def dual(self) -> "SystemId":
        return {
            SystemId.KCT: SystemId.KCTT,
            SystemId.KCTT: SystemId.KCT,
            SystemId.KCT_H: SystemId.KCTT_H,
            SystemId.KCTT_H: SystemId.KCT_H,
        }[self]

    @classmethod
    def parse(cls, text: str) -> "SystemId":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown system {text!r}; expected one of kct, kct_h, kctt, kctt_h") from None


RULES = ("ImpR", "ImpL", "NegL", "AllR", "AllL", "LamR", "LamL")
RULE_SIDE = {
    "ImpR": "succ",
    "ImpL": "ante",
    "NegL": "ante",
    "AllR": "succ",
    "AllL": "ante",
    "LamR": "succ",
    "LamL": "ante",
}


class FormulaClass(enum.Enum):
    REDUCIBLE_S = "ReducibleS"
    REDUCIBLE_A = "ReducibleA"
    CRITICAL = "Critical"
    ATOMIC_MINIMAL = "AtomicMinimal"
    INERT_IMPL_GUARD = "InertImpL-guard"


class RuleShapeMismatch(ValueError):
    pass


class EigenvariableClash(ValueError):
    pass


class GuardViolated(ValueError):
    pass


class OpenLeaf(ValueError):
    pass


@dataclass(frozen=True)
class RuleApplication:
    """A rule with its principal position and optional witness.

    ``witness`` is the instantiating term for AllL and the eigenvariable for
    AllR.  Omitted fields are inferred when checking a step.
    """

    rule: str
    side: Optional[str] = None
    index: Optional[int] = None
    witness: Optional[Term] = None

    def __post_init__(self) -> None:
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.side is None:
            object.__setattr__(self, "side", RULE_SIDE[self.rule])
        elif self.side != RULE_SIDE[self.rule]:
            raise ValueError(f"{self.rule} acts on the {RULE_SIDE[self.rule]} side")


# -- axioms and classification ---------------------------------------------


def is_axiom(s: Sequent) -> bool:
    """Literal axiom: every formula atomic and some atom on both sides."""
    if not all(is_atomic(f) for f in s.ante + s.succ):
        return False
    return bool(set(s.ante) & set(s.succ))


def is_closed(s: Sequent) -> bool:
    """Some atomic formula occurs on both sides (closure used by the h-systems)."""
    succ = {f for f in s.succ if is_atomic(f)}
    return any(f in succ for f in s.ante if is_atomic(f))


def classify(f: Term, side: str) -> FormulaClass:
    if is_atomic(f):
        return FormulaClass.ATOMIC_MINIMAL
    if side == "succ":
        if isinstance(f, (Forall, Implies)) or is_redex(f):
            return FormulaClass.REDUCIBLE_S
    else:
        if is_redex(f):
            return FormulaClass.REDUCIBLE_A
        if isinstance(f, Forall):
            return FormulaClass.CRITICAL
        if isinstance(f, Implies):
            return FormulaClass.INERT_IMPL_GUARD if is_bot(f.rhs) else FormulaClass.REDUCIBLE_A
    raise ValueError(f"cannot classify {f} on the {side} side")


def is_reducible(f: Term, side: str, with_negl: bool = False) -> bool:
    c = classify(f, side)
    if c in (FormulaClass.REDUCIBLE_A, FormulaClass.REDUCIBLE_S):
        return True
    return with_negl and c is FormulaClass.INERT_IMPL_GUARD


def positions(s: Sequent) -> Iterator[tuple[str, int, Term]]:
    """Formula positions left to right: antecedent first, then succedent."""
    for i, f in enumerate(s.ante):
        yield "ante", i, f
    for i, f in enumerate(s.succ):
        yield "succ", i, f


def distinguished(s: Sequent, with_negl: bool = False) -> Optional[tuple[str, int]]:
    """Position of the rightmost reducible formula, or None."""
    found = None
    for side, i, f in positions(s):
        if is_reducible(f, side, with_negl):
            found = (side, i)
    return found


def critical_formulas(s: Sequent) -> list[tuple[int, Term]]:
    return [(i, f) for i, f in enumerate(s.ante) if isinstance(f, Forall)]


def is_critical(s: Sequent, with_negl: bool = False) -> bool:
    return distinguished(s, with_negl) is None and bool(critical_formulas(s))


def is_primitive(s: Sequent, with_negl: bool = False) -> bool:
    return distinguished(s, with_negl) is None and not critical_formulas(s)


def rule_for(f: Term, side: str) -> Optional[str]:
    """The rule whose principal formula has the shape of ``f`` on ``side``."""
    if is_atomic(f):
        return None
    if side == "succ":
        if isinstance(f, Implies):
            return "ImpR"
        if isinstance(f, Forall):
            return "AllR"
        return "LamR" if is_redex(f) else None
    if isinstance(f, Implies):
        return "NegL" if is_bot(f.rhs) else "ImpL"
    if isinstance(f, Forall):
        return "AllL"
    return "LamL" if is_redex(f) else None


# -- tableau direction -----------------------------------------------------


def _fits(f: Term, side: str, rule: str) -> bool:
    shape = rule_for(f, side)
    return shape == rule or (rule == "ImpL" and shape == "NegL")


def _locate(s: Sequent, app: RuleApplication) -> tuple[int, Term]:
    side = s.side(app.side)  # type: ignore[arg-type]
    if app.index is not None:
        if not 0 <= app.index < len(side):
            raise RuleShapeMismatch(f"no formula at {app.side} position {app.index}")
        f = side[app.index]
        if not _fits(f, app.side, app.rule):  # type: ignore[arg-type]
            raise RuleShapeMismatch(f"{f} is not a principal formula for {app.rule}")
        return app.index, f
    exact = [i for i, f in enumerate(side) if rule_for(f, app.side) == app.rule]  # type: ignore[arg-type]
    loose = [i for i, f in enumerate(side) if _fits(f, app.side, app.rule)]  # type: ignore[arg-type]
    pick = exact or loose
    if not pick:
        raise RuleShapeMismatch(f"no principal formula for {app.rule} in {s}")
    return pick[-1], side[pick[-1]]


def apply_tableau_rule(
    s: Sequent,
    app: RuleApplication,
    sys: SystemId = SystemId.KCTT_H,
    sig: Signature = DEFAULT_SIGNATURE,
) -> list[Sequent]:
    """Successors of ``s`` under ``app``.

    The antecedent formula introduced by ImpR goes to the end of the
    antecedent and the succedent formula introduced by NegL to the end of the
    succedent.  AllL without a witness instantiates with the first enumerated
    term of the binder's type.
    """
    keep = sys.retains
    i, f = _locate(s, app)
    G, D = list(s.ante), list(s.succ)
    rule = app.rule
    if rule == "ImpL":
        if is_bot(f.rhs):  # type: ignore[attr-defined]
            raise GuardViolated(f"(->L) does not apply to {f}: consequent is falsum")
        left = G[:i] + [neg(f.lhs)] + ([f] if keep else []) + G[i + 1:]  # type: ignore[attr-defined]
        right = G[:i] + [f.rhs] + ([f] if keep else []) + G[i + 1:]  # type: ignore[attr-defined]
        return [Sequent(tuple(left), s.succ), Sequent(tuple(right), s.succ)]
    if rule == "NegL":
        ante = G if keep else G[:i] + G[i + 1:]
        return [Sequent(tuple(ante), tuple(D + [f.lhs]))]  # type: ignore[attr-defined]
    if rule == "ImpR":
        succ = D[:i] + [f.rhs] + ([f] if keep else []) + D[i + 1:]  # type: ignore[attr-defined]
        return [Sequent(tuple(G + [f.lhs]), tuple(succ))]  # type: ignore[attr-defined]
    if rule == "AllR":
        a = app.witness
        if a is None:
            a = fresh_free_var(f.binder.var_ty, s.free_vars())  # type: ignore[attr-defined]
        elif not isinstance(a, FreeVar) or a.var_ty != f.binder.var_ty:  # type: ignore[attr-defined]
            raise EigenvariableClash(f"eigenvariable {a} has the wrong shape")
        elif a in s.free_vars():
            raise EigenvariableClash(f"eigenvariable {a} occurs in {s}")
        inst = instantiate(f, [a])
        succ = D[:i] + [inst] + ([f] if keep else []) + D[i + 1:]
        return [Sequent(s.ante, tuple(succ))]
    if rule == "AllL":
        t = app.witness if app.witness is not None else term_at(f.binder.var_ty, 0, sig)  # type: ignore[attr-defined]
        inst = instantiate(f, [t])
        return [Sequent(tuple(G[:i] + [inst, f] + G[i + 1:]), s.succ)]
    if rule in ("LamR", "LamL"):
        red = contract(f)
        if rule == "LamR":
            return [Sequent(s.ante, tuple(D[:i] + [red] + ([f] if keep else []) + D[i + 1:]))]
        return [Sequent(tuple(G[:i] + [red] + ([f] if keep else []) + G[i + 1:]), s.succ)]
    raise RuleShapeMismatch(rule)  # pragma: no cover


# -- Gentzen direction -----------------------------------------------------


@dataclass
class StepCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _drop_one(xs: Sequence[Term], target: Term) -> Iterator[tuple[Term, ...]]:
    """``xs`` with one occurrence of ``target`` removed, for each occurrence."""
    for k, x in enumerate(xs):
        if x == target:
            yield tuple(xs[:k]) + tuple(xs[k + 1:])


def _check_at(prem: Sequence[Sequent], concl: Sequent, app: RuleApplication,
              i: int, f: Term, keep: bool) -> StepCheck:
    G, D = concl.ante, concl.succ
    rule = app.rule
    kept = (f,) if keep else ()
    if rule == "ImpL":
        if is_bot(f.rhs):  # type: ignore[attr-defined]
            return StepCheck(False, "guard: (->L) principal has falsum as consequent")
        if len(prem) != 2:
            return StepCheck(False, "(->L) needs two premises")
        want0 = G[:i] + (neg(f.lhs),) + kept + G[i + 1:]  # type: ignore[attr-defined]
        want1 = G[:i] + (f.rhs,) + kept + G[i + 1:]  # type: ignore[attr-defined]
        ok = prem[0] == Sequent(want0, D) and prem[1] == Sequent(want1, D)
        return StepCheck(ok, "" if ok else "premises do not match (->L)")
    if len(prem) != 1:
        return StepCheck(False, f"{rule} needs one premise")
    p = prem[0]
    if rule == "NegL":
        ante = G if keep else G[:i] + G[i + 1:]
        ok = p.ante == ante and any(rest == D for rest in _drop_one(p.succ, f.lhs))  # type: ignore[attr-defined]
        return StepCheck(ok, "" if ok else "premise does not match (~L)")
    if rule == "ImpR":
        succ = D[:i] + (f.rhs,) + kept + D[i + 1:]  # type: ignore[attr-defined]
        ok = p.succ == succ and any(rest == G for rest in _drop_one(p.ante, f.lhs))  # type: ignore[attr-defined]
        return StepCheck(ok, "" if ok else "premise does not match (->R)")
    if rule in ("LamR", "LamL"):
        red = contract(f)
        if rule == "LamR":
            ok = p == Sequent(G, D[:i] + (red,) + kept + D[i + 1:])
        else:
            ok = p == Sequent(G[:i] + (red,) + kept + G[i + 1:], D)
        return StepCheck(ok, "" if ok else f"premise does not match {rule}")
    if rule == "AllR":
        if p.ante != G or len(p.succ) != len(D) + len(kept):
            return StepCheck(False, "premise does not match (->all)")
        if p.succ[:i] != D[:i] or p.succ[i + 1:] != kept + D[i + 1:]:
            return StepCheck(False, "premise does not match (->all)")
        got = match_instance(f, p.succ[i])
        if got is None:
            return StepCheck(False, "instance does not match the quantified formula")
        a = got[0]
        if not _binds(f):
            a = app.witness if app.witness is not None else fresh_free_var(f.binder.var_ty, concl.free_vars())  # type: ignore[attr-defined]
        if app.witness is not None and app.witness != a:
            return StepCheck(False, "eigenvariable differs from the stated witness")
        if not isinstance(a, FreeVar):
            return StepCheck(False, "(->all) instance is not at a variable")
        if a in concl.free_vars():
            return StepCheck(False, f"eigenvariable {a} occurs in the conclusion")
        return StepCheck(True)
    if rule == "AllL":
        if p.succ != D or len(p.ante) != len(G) + 1:
            return StepCheck(False, "premise does not match (all->)")
        if p.ante[:i] != G[:i] or p.ante[i + 1] != f or p.ante[i + 2:] != G[i + 1:]:
            return StepCheck(False, "premise does not match (all->)")
        got = match_instance(f, p.ante[i])
        if got is None:
            return StepCheck(False, "instance does not match the quantified formula")
        if app.witness is not None and _binds(f) and got[0] != app.witness:  # type: ignore[attr-defined]
            return StepCheck(False, "instance differs from the stated witness")
        return StepCheck(True)
    return StepCheck(False, f"unknown rule {rule}")  # pragma: no cover


def _binds(f: Term) -> bool:
    """Does the quantifier's variable occur in its body?"""
    return f.binder in subterms_all(f.body)  # type: ignore[attr-defined]


def check_gentzen_step(
    premises: Sequence[Sequent],
    conclusion: Sequent,
    app: RuleApplication,
    sys: SystemId = SystemId.KCT_H,
) -> StepCheck:
    """Do ``premises / conclusion`` instantiate the schema named by ``app``?"""
    keep = sys.retains
    side = conclusion.side(app.side)  # type: ignore[arg-type]
    idxs = [app.index] if app.index is not None else range(len(side))
    last = StepCheck(False, f"no principal formula for {app.rule} in the conclusion")
    for i in idxs:
        if i is None or not 0 <= i < len(side):
            return StepCheck(False, f"no formula at {app.side} position {i}")
        f = side[i]
        shape = rule_for(f, app.side)  # type: ignore[arg-type]
        if shape != app.rule and not (app.rule == "ImpL" and shape == "NegL"):
            if app.index is not None:
                return StepCheck(False, f"{f} is not a principal formula for {app.rule}")
            continue
        res = _check_at(premises, conclusion, app, i, f, keep)
        if res:
            return res
        last = res
    return last


# -- proof figures ---------------------------------------------------------


@dataclass
class ProofFigure:
    sequent: Sequent
    rule: Optional[RuleApplication] = None
    children: list["ProofFigure"] = field(default_factory=list)

    def nodes(self) -> Iterator["ProofFigure"]:
        yield self
        for c in self.children:
            yield from c.nodes()

    def size(self) -> int:
        return sum(1 for _ in self.nodes())


@dataclass
class FigureCheck:
    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def leaf_ok(s: Sequent) -> bool:
    """Leaves may be literal axioms or carry a shared atomic formula."""
    return is_axiom(s) or is_closed(s)


def check_proof_figure(pf: ProofFigure, sys: SystemId = SystemId.KCT_H) -> FigureCheck:
    """Verify every leaf and every inference; report the first failing node path."""
    stack: list[tuple[ProofFigure, tuple[int, ...]]] = [(pf, ())]
    while stack:
        node, path = stack.pop()
        if node.rule is None:
            if node.children:
                return FigureCheck(False, path, "node without a rule has premises")
            if not leaf_ok(node.sequent):
                return FigureCheck(False, path, f"leaf {node.sequent} is not an axiom")
            continue
        res = check_gentzen_step([c.sequent for c in node.children], node.sequent, node.rule, sys)
        if not res:
            return FigureCheck(False, path, res.reason)
        for k in range(len(node.children) - 1, -1, -1):
            stack.append((node.children[k], path + (k,)))
    return FigureCheck(True)


def order_of(pf: ProofFigure) -> int:
    """0 at axioms, one more than the largest premise order elsewhere."""
    if not pf.children:
        if pf.rule is not None or not leaf_ok(pf.sequent):
            raise OpenLeaf(f"leaf {pf.sequent} is not an axiom")
        return 0
    return 1 + max(order_of(c) for c in pf.children)


# -- JSON form of proof figures ------------------------------------------------


class FigureSchemaError(ValueError):
    pass


def figure_to_json(pf: ProofFigure) -> dict:
    out: dict = {
        "sequent": str(pf.sequent),
        "rule": pf.rule.rule if pf.rule else None,
        "witness": str(pf.rule.witness) if pf.rule and pf.rule.witness is not None else None,
        "children": [figure_to_json(c) for c in pf.children],
    }
    if pf.rule is not None and pf.rule.index is not None:
        out["index"] = pf.rule.index
    return out


def figure_from_json(data: object, atoms: Optional[dict] = None) -> ProofFigure:
    """Build a figure from ``{"sequent", "rule", "witness", "children"}`` nodes.

    An optional ``"index"`` fixes the principal position; otherwise it is
    inferred when the step is checked.
    """
    if not isinstance(data, dict) or "sequent" not in data:
        raise FigureSchemaError("a node needs a 'sequent' string")
    unknown = set(data) - {"sequent", "rule", "witness", "children", "index"}
    if unknown:
        raise FigureSchemaError(f"unknown node keys {sorted(unknown)}")
    seq = Sequent.parse(str(data["sequent"]), atoms, atoms is not None)
    children = data.get("children") or []
    if not isinstance(children, list):
        raise FigureSchemaError("'children' must be a list")
    rule = data.get("rule")
    if rule is None:
        if children:
            raise FigureSchemaError("a node with premises needs a rule")
        return ProofFigure(seq)
    if rule not in RULES:
        raise FigureSchemaError(f"unknown rule {rule!r}")
    witness = data.get("witness")
    wt = parse_term(str(witness), atoms, atoms is not None) if witness is not None else None
    index = data.get("index")
    if index is not None and not isinstance(index, int):
        raise FigureSchemaError("'index' must be an integer")
    app = RuleApplication(rule, None, index, wt)
    return ProofFigure(seq, app, [figure_from_json(c, atoms) for c in children])
