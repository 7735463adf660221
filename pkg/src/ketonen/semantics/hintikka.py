"""Hintikka-sequent conditions on the endpoint of a reduction chain."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..chain import RChain, replay
from ..sequent import Sequent
from ..syntax.terms import (
    Forall,
    FreeVar,
    Implies,
    Term,
    contract,
    free_vars,
    is_atomic,
    is_bot,
    is_redex,
    match_instance,
    neg,
    subterms_all,
)

CONDITIONS = ("H1", "H2", "H2-neg", "H3", "H4", "H5", "H6", "clause1", "clause2", "clause3", "clause4")


@dataclass
class HintikkaReport:
    gamma: frozenset[Term]
    delta: frozenset[Term]
    checks: dict[str, Optional[bool]] = field(default_factory=dict)
    witnesses: dict[str, list[Term]] = field(default_factory=dict)

    @property
    def passes(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if v is False]

    def summary(self) -> str:
        def mark(v: Optional[bool]) -> str:
            return "n/a" if v is None else ("pass" if v else "FAIL")

        return ", ".join(f"{k}: {mark(v)}" for k, v in self.checks.items())


def _binds(f: Forall) -> bool:
    return f.binder in subterms_all(f.body)


def hintikka_check(chain: RChain, root: Optional[Sequent] = None) -> HintikkaReport:
    """Saturation (H1-H6 plus the negation clause), chain shape, disjointness
    of the occurrence sets and persistence of atomic formulas."""
    seqs = chain.sequents
    gamma = frozenset(f for s in seqs for f in s.ante)
    delta = frozenset(f for s in seqs for f in s.succ)
    first_seen: dict[Term, int] = {}
    for k, s in enumerate(seqs):
        for f in s.ante + s.succ:
            first_seen.setdefault(f, k)

    bad: dict[str, list[Term]] = {c: [] for c in CONDITIONS}
    for f in delta:
        if isinstance(f, Implies):
            if f.lhs not in gamma or f.rhs not in delta:
                bad["H1"].append(f)
        elif isinstance(f, Forall):
            if not _eigen_instance(f, delta, seqs, first_seen):
                bad["H3"].append(f)
        elif is_redex(f) and contract(f) not in delta:
            bad["H5"].append(f)
    for f in gamma:
        if isinstance(f, Implies):
            if is_bot(f.rhs):
                if f.lhs not in delta:
                    bad["H2-neg"].append(f)
            elif neg(f.lhs) not in gamma and f.rhs not in gamma:
                bad["H2"].append(f)
        elif isinstance(f, Forall):
            if not any(match_instance(f, g) is not None for g in gamma if g != f) and not (
                not _binds(f) and f.body in gamma
            ):
                bad["H4"].append(f)
        elif is_redex(f) and contract(f) not in gamma:
            bad["H6"].append(f)

    checks: dict[str, Optional[bool]] = {}
    for c in ("H1", "H2", "H2-neg", "H3", "H4", "H5", "H6"):
        checks[c] = not bad[c]
    start = root if root is not None else seqs[0]
    checks["clause1"] = (not start.ante and len(start.succ) == 1 and seqs[0] == start) or None
    ok, _ = replay(chain)
    checks["clause2"] = ok and all(checks[c] for c in ("H1", "H2", "H2-neg", "H3", "H4", "H5", "H6"))
    shared = gamma & delta
    bad["clause3"] = sorted(shared, key=str)
    checks["clause3"] = not shared
    last = seqs[-1]
    lost = [f for f in gamma if is_atomic(f) and f not in last.ante]
    lost += [f for f in delta if is_atomic(f) and f not in last.succ]
    bad["clause4"] = lost
    checks["clause4"] = not lost
    return HintikkaReport(gamma, delta, checks, {k: v for k, v in bad.items() if v})


def _eigen_instance(f: Forall, delta, seqs, first_seen) -> bool:
    """Some ``F[a]`` in the succedent set whose variable is new where it appears."""
    if not _binds(f):
        return f.body in delta
    for g in delta:
        got = match_instance(f, g)
        if got is None or not isinstance(got[0], FreeVar):
            continue
        a = got[0]
        k = first_seen[g]
        if all(a not in free_vars(h) for s in seqs[:k] for h in s.ante + s.succ):
            return True
    return False
