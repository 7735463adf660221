"""Tableau construction, verdicts and the derived-rule harnesses.

Two expansion modes share one depth-first, leftmost-first search:

* ``kctt`` follows the reduction-chain clauses directly: the distinguished
  formula is consumed, and a critical sequent folds all instances of its
  critical formulas into one succedent implication.  Closure is the literal
  axiom.
* ``kctt_h`` applies the retaining rules.  Each branch remembers which
  formulas it has already reduced; the distinguished formula is the
  rightmost reducible formula not yet reduced.  A critical step adds, one
  rule application at a time, every missing instance ``F[s_j]`` with
  ``j = 0..m`` (``m`` the node depth) of every antecedent universal, keeping
  the universal.  A branch closes as soon as an atomic formula sits on both
  sides.

A branch ending in a primitive sequent yields a refutation only if its chain
passes the Hintikka check and the partial valuation read off it passes
V1-V5; otherwise the search goes on and the verdict is at best Unknown.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional, Union

from .calculus import (
    ProofFigure,
    RuleApplication,
    SystemId,
    apply_tableau_rule,
    OpenLeaf,
    check_proof_figure,
    critical_formulas,
    is_axiom,
    is_closed,
    is_reducible,
    positions,
    rule_for,
)
from .calculus import order_of as figure_order
from .chain import ChainStep, NotReducibleNorCritical, RChain, label_for, rchain_successors
from .semantics.hintikka import HintikkaReport, hintikka_check
from .semantics.valuation import (
    Clash,
    PartialValuation,
    ValuationReport,
    check_partial_valuation,
    extract_partial_valuation,
    term_universe,
)
from .semantics.oracle import sequent_value
from .sequent import Sequent, atoms_of
from .syntax.enumerate import DEFAULT_SIGNATURE, Signature, enumerate_terms, term_at
from .syntax.terms import Forall, Term, fresh_free_var, instantiate, is_bot, subterms_all


@dataclass(frozen=True)
class Budget:
    max_depth: int = 200
    max_nodes: int = 10000
    max_critical_rounds: int = 3

    def __post_init__(self) -> None:
        if min(self.max_depth, self.max_nodes, self.max_critical_rounds) < 1:
            raise ValueError("budget limits must be positive")


CLOSED, OPEN, EXHAUSTED = "closed", "open", "exhausted-budget"


@dataclass
class TableauNode:
    sequent: Sequent
    depth: int
    step: Optional[str] = None
    rule: Optional[RuleApplication] = None
    children: list["TableauNode"] = field(default_factory=list)
    status: str = EXHAUSTED

    def nodes(self) -> Iterator["TableauNode"]:
        yield self
        for c in self.children:
            yield from c.nodes()

    def to_json(self) -> dict[str, Any]:
        return {
            "sequent": str(self.sequent),
            "step": self.step,
            "rule": self.rule.rule if self.rule else None,
            "witness": str(self.rule.witness) if self.rule and self.rule.witness is not None else None,
            "status": self.status,
            "children": [c.to_json() for c in self.children],
        }


@dataclass
class Tableau:
    root: TableauNode
    system: SystemId

    def size(self) -> int:
        return sum(1 for _ in self.root.nodes())

    def to_json(self) -> dict[str, Any]:
        return {"system": self.system.value, "root": self.root.to_json()}


@dataclass
class Proved:
    tableau: Tableau
    order: int
    kind: str = "Proved"


@dataclass
class Refuted:
    tableau: Tableau
    branch: RChain
    hintikka: HintikkaReport
    valuation: PartialValuation
    valuation_report: ValuationReport
    kind: str = "Refuted"


@dataclass
class Unknown:
    tableau: Tableau
    reason: str
    kind: str = "Unknown"


Verdict = Union[Proved, Refuted, Unknown]


class NoOpenBranch(ValueError):
    pass


class PremiseNotProved(ValueError):
    pass


class NotConvertible(ValueError):
    pass


# -- search state ------------------------------------------------------------


@dataclass(frozen=True)
class _HState:
    used: frozenset = frozenset()
    pending: tuple = ()
    rounds: int = 0


class _Stop(Exception):
    pass


def _binds(f: Forall) -> bool:
    return f.binder in subterms_all(f.body)


def _live_criticals(s: Sequent) -> list[Term]:
    ante = set(s.ante)
    out: list[Term] = []
    for _, f in critical_formulas(s):
        if f in out:
            continue
        if _binds(f) or f.body not in ante:  # type: ignore[attr-defined]
            out.append(f)
    return out


def _critical_round(s: Sequent, m: int, sig: Signature) -> tuple:
    """Missing instances ``F[s_j]``, ``j <= m``, per live critical formula.

    When the block adds nothing, each formula gets its first missing instance
    beyond ``m`` instead, so every round makes progress.
    """
    crit = _live_criticals(s)
    have = set(s.ante)
    todo: list[tuple[Term, Term]] = []
    seen: set = set()
    for j in range(m + 1):
        for f in crit:
            t = term_at(f.binder.var_ty, j, sig)  # type: ignore[attr-defined]
            inst = instantiate(f, [t])
            if inst not in have and inst not in seen:
                seen.add(inst)
                todo.append((f, t))
    if not todo:
        for f in crit:
            if not _binds(f):  # type: ignore[arg-type]
                todo.append((f, term_at(f.binder.var_ty, 0, sig)))  # type: ignore[attr-defined]
                continue
            j = m + 1
            while True:
                t = term_at(f.binder.var_ty, j, sig)  # type: ignore[attr-defined]
                if instantiate(f, [t]) not in have:
                    todo.append((f, t))
                    break
                j += 1
    return tuple(todo)


class _Search:
    def __init__(self, root: Sequent, sys: SystemId, budget: Budget, sig: Signature):
        if not sys.tableau:
            raise ValueError("tableaux are built in kctt or kctt_h")
        self.sys = sys
        self.budget = budget
        self.sig = sig
        self.count = 0
        self.out_of_nodes = False
        self.refutation: Optional[Refuted] = None
        self.notes: list[str] = []
        self.root = TableauNode(root, 0)
        self.tableau = Tableau(self.root, sys)

    def run(self) -> Verdict:
        try:
            self._expand(self.root, [], _HState())
        except _Stop:
            pass
        if self.refutation is not None:
            self.refutation.tableau = self.tableau
            return self.refutation
        if self.root.status == CLOSED:
            return Proved(self.tableau, tableau_order(self.root))
        if self.out_of_nodes:
            reason = f"node budget of {self.budget.max_nodes} exhausted"
        elif self.notes:
            reason = self.notes[0]
        else:
            reason = "budget exhausted before every branch closed"
        return Unknown(self.tableau, reason)

    # expansion
    def _expand(self, node: TableauNode, path: list, st: _HState) -> None:
        self.count += 1
        if self.count > self.budget.max_nodes:
            self.out_of_nodes = True
            node.status = EXHAUSTED
            raise _Stop
        s = node.sequent
        if (is_closed(s) if self.sys.retains else is_axiom(s)):
            node.status = CLOSED
            node.step = "terminal-axiom"
            return
        if node.depth >= self.budget.max_depth:
            node.status = EXHAUSTED
            node.step = "unexpanded"
            self.notes.append(f"depth limit {self.budget.max_depth} reached")
            return
        if self.sys.retains:
            succ = self._h_successors(s, node.depth, st)
        else:
            succ = self._chain_successors(s, node.depth, st)
        if succ is None:
            node.step = "terminal-primitive"
            node.status = OPEN
            self._try_refute(path + [ChainStep(s, "terminal-primitive")])
            return
        if succ == "rounds":
            node.step = "unexpanded"
            node.status = EXHAUSTED
            self.notes.append(f"critical-round limit {self.budget.max_critical_rounds} reached")
            return
        app, children = succ
        node.rule = app
        node.step = label_for(app, 0) if app is not None else "R3.4"
        if app is not None and app.rule == "ImpL":
            node.step = "R3.1"
        for b, (child_seq, child_state) in enumerate(children):
            child = TableauNode(child_seq, node.depth + 1)
            node.children.append(child)
            label = label_for(app, b) if app is not None else "R3.4"
            try:
                self._expand(child, path + [ChainStep(s, label, app)], child_state)
            finally:
                node.status = _combine([c.status for c in node.children], len(children))
        node.status = _combine([c.status for c in node.children], len(children))

    def _chain_successors(self, s: Sequent, m: int, st: _HState):
        try:
            opts = rchain_successors(s, m, self.sig)
        except NotReducibleNorCritical:
            return None
        app = opts[0][2]
        rounds = st.rounds + (app is None)
        if rounds > self.budget.max_critical_rounds:
            return "rounds"
        return app, [(t, _HState(rounds=rounds)) for _, t, _ in opts]

    def _h_successors(self, s: Sequent, m: int, st: _HState):
        pending = st.pending
        rounds = st.rounds
        while True:
            while pending:
                f, t = pending[0]
                pending = pending[1:]
                if f not in s.ante:
                    continue
                inst = instantiate(f, [t])
                if inst in s.ante:
                    continue
                i = s.ante.index(f)
                app = RuleApplication("AllL", "ante", i, t)
                (child,) = apply_tableau_rule(s, app, SystemId.KCTT_H, self.sig)
                return app, [(child, _HState(st.used, pending, rounds))]
            pos = None
            for side, i, f in positions(s):
                if (side, f) not in st.used and is_reducible(f, side, with_negl=True):
                    pos = (side, i, f)
            if pos is not None:
                side, i, f = pos
                rule = rule_for(f, side)
                app = RuleApplication(rule, side, i)  # type: ignore[arg-type]
                if rule == "AllR":
                    app = RuleApplication("AllR", side, i, fresh_free_var(f.binder.var_ty, s.free_vars()))  # type: ignore[attr-defined]
                kids = apply_tableau_rule(s, app, SystemId.KCTT_H, self.sig)
                used = st.used | {(side, f)}
                return app, [(k, _HState(used, (), rounds)) for k in kids]
            if not _live_criticals(s):
                return None
            if rounds >= self.budget.max_critical_rounds:
                return "rounds"
            pending = _critical_round(s, m, self.sig)
            rounds += 1
            if not pending:
                return None

    def _try_refute(self, steps: list[ChainStep]) -> None:
        chain = RChain(steps, self.sys)
        if any(st.label == "R3.4" for st in steps) and not self.sys.retains:
            # the folded critical step discarded the universals of the branch
            self.notes.append("open branch passed a critical step that discards universals")
            return
        report = hintikka_check(chain)
        try:
            val = extract_partial_valuation(chain)
        except Clash as exc:
            self.notes.append(f"open branch is inconsistent: {exc}")
            return
        vrep = check_partial_valuation(val)
        if report.passes and vrep.ok:
            self.refutation = Refuted(self.tableau, chain, report, val, vrep)
            raise _Stop
        failed = report.failed() + [k for k, v in vrep.violations.items() if v]
        self.notes.append("open branch is not saturated: " + ", ".join(failed))


def _combine(statuses: list[str], expected: int) -> str:
    if OPEN in statuses:
        return OPEN
    if len(statuses) == expected and all(x == CLOSED for x in statuses):
        return CLOSED
    return EXHAUSTED


def build_tableau(
    root: Sequent,
    sys: SystemId = SystemId.KCTT_H,
    budget: Budget = Budget(),
    sig: Signature = DEFAULT_SIGNATURE,
) -> Verdict:
    return _Search(root, sys, budget, sig).run()


def tableau_order(node: TableauNode) -> int:
    if not node.children:
        return 0
    return 1 + max(tableau_order(c) for c in node.children)


def order_of(obj: Union[ProofFigure, Tableau, TableauNode]) -> int:
    """Derivation order of a proof figure or a closed tableau."""
    if isinstance(obj, ProofFigure):
        return figure_order(obj)
    node = obj.root if isinstance(obj, Tableau) else obj
    for n in node.nodes():
        if not n.children and n.status != CLOSED:
            raise OpenLeaf(f"leaf {n.sequent} is not closed")
    return tableau_order(node)


def extract_open_branch(t: Tableau) -> RChain:
    """Leftmost root-to-leaf path ending in a primitive sequent."""

    def go(node: TableauNode, path: list) -> Optional[list]:
        if not node.children:
            if node.status == OPEN:
                return path + [ChainStep(node.sequent, "terminal-primitive")]
            return None
        for b, c in enumerate(node.children):
            label = label_for(node.rule, b) if node.rule is not None else "R3.4"
            got = go(c, path + [ChainStep(node.sequent, label, node.rule)])
            if got is not None:
                return got
        return None

    got = go(t.root, [])
    if got is None:
        raise NoOpenBranch("the tableau has no open branch")
    return RChain(got, t.system)


def to_proof_figure(t: Union[Tableau, TableauNode]) -> ProofFigure:
    """Read a closed tableau upside down as a Gentzen derivation."""
    node = t.root if isinstance(t, Tableau) else t

    def go(n: TableauNode) -> ProofFigure:
        if not n.children:
            return ProofFigure(n.sequent)
        if n.rule is None:
            raise NotConvertible("a folded critical step is not a single Gentzen inference")
        return ProofFigure(n.sequent, n.rule, [go(c) for c in n.children])

    return go(node)


# -- derived rules and cut ---------------------------------------------------


def derived_kind(goal: Sequent) -> str:
    if set(goal.ante) & set(goal.succ):
        return "identity"
    if any(is_bot(f) for f in goal.ante):
        return "falsum-antecedent"
    return "general"


def prove_derived(goal: Sequent, sys: SystemId = SystemId.KCTT_H, budget: Budget = Budget(),
                  sig: Signature = DEFAULT_SIGNATURE) -> Verdict:
    """Search for a proof of a derived-rule instance; budget exhaustion is Unknown."""
    return build_tableau(goal, sys, budget, sig)


def cut_harness(left: Sequent, right: Sequent, sys: SystemId = SystemId.KCTT_H,
                budget: Budget = Budget(), sig: Signature = DEFAULT_SIGNATURE,
                index: Optional[int] = None) -> tuple[Sequent, Verdict]:
    """Prove ``Γ |- Δ1, B, Δ2`` from ``Γ |- Δ1, A, Δ2`` and ``A |- B``.

    The conclusion gets four times the two premise node budgets combined.
    """
    if len(right.ante) != 1 or len(right.succ) != 1:
        raise ValueError("right premise must have the form A |- B")
    a, b = right.ante[0], right.succ[0]
    if index is None:
        if a not in left.succ:
            raise ValueError("cut formula does not occur in the left succedent")
        index = left.succ.index(a)
    elif left.succ[index] != a:
        raise ValueError("cut formula does not occur at the stated position")
    for prem in (left, right):
        v = build_tableau(prem, sys, budget, sig)
        if not isinstance(v, Proved):
            raise PremiseNotProved(f"premise {prem} is {v.kind}")
    concl = Sequent(left.ante, left.succ[:index] + (b,) + left.succ[index + 1:])
    big = Budget(budget.max_depth, 4 * 2 * budget.max_nodes, budget.max_critical_rounds)
    return concl, build_tableau(concl, sys, big, sig)


# -- minimum-order search ------------------------------------------------------


def _key(s: Sequent) -> tuple:
    return frozenset(s.ante), frozenset(s.succ)


def _witness_pool(s: Sequent, ty, sig: Signature, extra: int) -> list[Term]:
    pool = list(term_universe(s.ante + s.succ).get(ty, []))
    for t in enumerate_terms(ty, sig, extra):
        if t not in pool:
            pool.append(t)
    return pool


def _h_moves(s: Sequent, sig: Signature, extra: int) -> Iterator[tuple[RuleApplication, list[Sequent]]]:
    here = _key(s)
    for side, i, f in positions(s):
        rule = rule_for(f, side)
        if rule is None:
            continue
        if rule == "AllL":
            apps = [RuleApplication("AllL", side, i, t) for t in _witness_pool(s, f.binder.var_ty, sig, extra)]  # type: ignore[attr-defined]
        elif rule == "AllR":
            apps = [RuleApplication("AllR", side, i, fresh_free_var(f.binder.var_ty, s.free_vars()))]  # type: ignore[attr-defined]
        else:
            apps = [RuleApplication(rule, side, i)]
        for app in apps:
            prem = apply_tableau_rule(s, app, SystemId.KCTT_H, sig)
            if all(_key(p) == here for p in prem):
                continue
            yield app, prem


def minimum_order_proof(s: Sequent, max_order: int = 6, sig: Signature = DEFAULT_SIGNATURE,
                        extra_terms: int = 3, max_calls: int = 200000) -> Optional[ProofFigure]:
    """A KCT_h derivation of ``s`` of least order (iterative deepening), or None."""
    failed: dict[tuple, int] = {}
    calls = [0]

    def within(seq: Sequent, d: int) -> Optional[ProofFigure]:
        if is_closed(seq) or is_axiom(seq):
            return ProofFigure(seq)
        if d == 0:
            return None
        k = _key(seq)
        if failed.get(k, -1) >= d:
            return None
        calls[0] += 1
        if calls[0] > max_calls:
            raise _Stop
        for app, prem in _h_moves(seq, sig, extra_terms):
            subs = []
            for p in prem:
                got = within(p, d - 1)
                if got is None:
                    break
                subs.append(got)
            else:
                return ProofFigure(seq, app, subs)
        failed[k] = max(failed.get(k, -1), d)
        return None

    try:
        for d in range(max_order + 1):
            got = within(s, d)
            if got is not None:
                return got
    except _Stop:
        return None
    return None


def minimum_order(s: Sequent, max_order: int = 6, sig: Signature = DEFAULT_SIGNATURE) -> Optional[int]:
    pf = minimum_order_proof(s, max_order, sig)
    if pf is None:
        return None
    assert check_proof_figure(pf, SystemId.KCT_H)
    return order_of(pf)


# -- reports -----------------------------------------------------------------


def verdict_json(v: Verdict) -> dict[str, Any]:
    out: dict[str, Any] = {"verdict": v.kind, "tableau": v.tableau.to_json()}
    if isinstance(v, Proved):
        out["order"] = v.order
    elif isinstance(v, Refuted):
        out["branch"] = [{"sequent": str(st.sequent), "step": st.label} for st in v.branch.steps]
        out["hintikka"] = {k: v2 for k, v2 in v.hintikka.checks.items()}
        out["valuation"] = [[str(f), "t" if b else "f"] for f, b in v.valuation.assignment.items()]
    else:
        out["reason"] = v.reason
    return out


def dumps(v: Verdict) -> str:
    return json.dumps(verdict_json(v), indent=2, sort_keys=True)


def countermodel_value(v: Refuted) -> bool:
    """``tv`` of the root under the refutation's atomic assignment.

    Atoms of the root that the branch never mentions are taken as false.
    Only defined for roots in the implication/falsum fragment.
    """
    root = v.branch.steps[0].sequent
    atomic = v.valuation.atomic_part()
    full = {a: atomic.get(a, False) for a in atoms_of(root.ante + root.succ)}
    return sequent_value(root, full)
