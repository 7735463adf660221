"""Reduction chains: step labels, the chain successor function and replay.

Step labels name the clause that produced the next sequent::

    R3.1a / R3.1b   antecedent implication, first / second alternative
    R3.1s           succedent implication
    R3.1n           antecedent negation A -> _|_
    R3.2            succedent universal, least fresh variable
    R3.3.1 / R3.3.2 antecedent / succedent redex
    R3.4            critical step

and ``terminal-axiom``, ``terminal-primitive`` or ``unexpanded`` (budget) on
the last sequent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .calculus import (
    RuleApplication,
    RuleShapeMismatch,
    SystemId,
    apply_tableau_rule,
    critical_formulas,
    distinguished,
    is_axiom,
    is_closed,
    rule_for,
)
from .sequent import Sequent
from .syntax.enumerate import DEFAULT_SIGNATURE, Signature, term_at
from .syntax.terms import BOT, Implies, Term, instantiate, match_instance

TERMINAL = ("terminal-axiom", "terminal-primitive", "unexpanded")

RULE_LABEL = {
    "ImpR": "R3.1s",
    "NegL": "R3.1n",
    "AllR": "R3.2",
    "LamL": "R3.3.1",
    "LamR": "R3.3.2",
    "AllL": "R3.4",
}


class NotReducibleNorCritical(ValueError):
    pass


@dataclass(frozen=True)
class ChainStep:
    sequent: Sequent
    label: str
    rule: Optional[RuleApplication] = None


@dataclass
class RChain:
    steps: list[ChainStep] = field(default_factory=list)
    system: SystemId = SystemId.KCTT_H

    @property
    def sequents(self) -> list[Sequent]:
        return [st.sequent for st in self.steps]

    @property
    def last(self) -> Sequent:
        return self.steps[-1].sequent

    def __len__(self) -> int:
        return len(self.steps)


def label_for(app: RuleApplication, branch: int = 0) -> str:
    if app.rule == "ImpL":
        return "R3.1a" if branch == 0 else "R3.1b"
    return RULE_LABEL[app.rule]


def critical_block(s: Sequent, m: int, sig: Signature = DEFAULT_SIGNATURE) -> list[Term]:
    """``A_1 .. A_{(m+1)k}`` with ``A_{i+jk} = F_i[s_j]``."""
    crit = [f for _, f in critical_formulas(s)]
    out: list[Term] = []
    for j in range(m + 1):
        for f in crit:
            out.append(instantiate(f, [term_at(f.binder.var_ty, j, sig)]))  # type: ignore[attr-defined]
    return out


def critical_step(s: Sequent, m: int, sig: Signature = DEFAULT_SIGNATURE) -> Sequent:
    """Drop the critical formulas and fold their instances into the rightmost
    succedent formula (falsum when the succedent is empty)."""
    block = critical_block(s, m, sig)
    if s.succ:
        target, rest = s.succ[-1], s.succ[:-1]
    else:
        target, rest = BOT, ()
    n = target
    for a in reversed(block):
        n = Implies(a, n)
    ante = tuple(f for k, f in enumerate(s.ante) if k not in {i for i, _ in critical_formulas(s)})
    return Sequent(ante, rest + (n,))


def rchain_successors(
    s: Sequent, m: int, sig: Signature = DEFAULT_SIGNATURE
) -> list[tuple[str, Sequent, Optional[RuleApplication]]]:
    """Labelled successors of ``s`` at chain position ``m`` (principal formula dropped)."""
    pos = distinguished(s, with_negl=True)
    if pos is not None:
        side, i = pos
        f = s.side(side)[i]
        rule = rule_for(f, side)
        app = RuleApplication(rule, side, i)  # type: ignore[arg-type]
        succs = apply_tableau_rule(s, app, SystemId.KCTT, sig)
        if rule == "AllR":
            app = RuleApplication("AllR", side, i, _eigen(f, succs[0].succ[i]))
        return [(label_for(app, b), t, app) for b, t in enumerate(succs)]
    if critical_formulas(s):
        return [("R3.4", critical_step(s, m, sig), None)]
    raise NotReducibleNorCritical(f"{s} is primitive")


def _eigen(f: Term, inst: Term) -> Optional[Term]:
    got = match_instance(f, inst)
    return got[0] if got else None


def rchain_step(s: Sequent, m: int, sig: Signature = DEFAULT_SIGNATURE) -> list[Sequent]:
    return [t for _, t, _ in rchain_successors(s, m, sig)]


def chain_terminal(s: Sequent, system: SystemId) -> Optional[str]:
    closed = is_closed(s) if system.retains else is_axiom(s)
    if closed:
        return "terminal-axiom"
    return None


def replay(chain: RChain, sig: Signature = DEFAULT_SIGNATURE) -> tuple[bool, str]:
    """Re-derive every step of ``chain`` from its label."""
    steps = chain.steps
    for m, (cur, nxt) in enumerate(zip(steps, steps[1:])):
        s, label = cur.sequent, cur.label
        if label in TERMINAL:
            return False, f"step {m} is terminal but the chain continues"
        if chain.system.retains:
            if cur.rule is None:
                return False, f"step {m} has no rule"
            try:
                succs = apply_tableau_rule(s, cur.rule, SystemId.KCTT_H, sig)
            except (RuleShapeMismatch, ValueError) as exc:
                return False, f"step {m}: {exc}"
            branch = 1 if label == "R3.1b" else 0
            if label != label_for(cur.rule, branch) or succs[branch] != nxt.sequent:
                return False, f"step {m} ({label}) does not produce the next sequent"
        else:
            try:
                opts = rchain_successors(s, m, sig)
            except NotReducibleNorCritical as exc:
                return False, f"step {m}: {exc}"
            if not any(lab == label and t == nxt.sequent for lab, t, _ in opts):
                return False, f"step {m} ({label}) does not produce the next sequent"
    last = steps[-1]
    if last.label == "terminal-axiom" and chain_terminal(last.sequent, chain.system) is None:
        return False, "last sequent is labelled an axiom but is not closed"
    return True, ""
