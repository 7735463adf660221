"""Command-line front end.

Exit status: 0 proved / true, 1 refuted / false, 2 unknown, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .calculus import (
    FigureSchemaError,
    SystemId,
    check_proof_figure,
    figure_from_json,
)
from .chain import NotReducibleNorCritical, chain_terminal, rchain_successors
from .engine import Budget, Proved, Refuted, build_tableau, dumps
from .rank import rank
from .semantics.models import MissingInterpretation, ModelError, falsifying_environment, load_model
from .sequent import Sequent
from .syntax.enumerate import DEFAULT_SIGNATURE, Signature
from .syntax.parser import ParseError, parse_term
from .syntax.terms import Term, atom, is_atomic

PROVED, REFUTED, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _atoms(spec: Optional[str]) -> tuple[dict[str, Term], bool]:
    """Declared atoms map to a0:1, a1:1, ...; without a declaration they are
    numbered in order of first occurrence."""
    if not spec:
        return {}, True
    names = [n.strip() for n in spec.split(",") if n.strip()]
    return {n: atom(i) for i, n in enumerate(names)}, False


def _signature(path: Optional[str]) -> Signature:
    if not path:
        return DEFAULT_SIGNATURE
    try:
        with open(path) as fh:
            data = json.load(fh)
        return Signature.make(data.get("objects", ["c"]), data.get("functions", {}))
    except (OSError, ValueError, AttributeError, TypeError) as exc:
        raise InputError(f"bad signature file {path}: {exc}") from None


def _sequent(text: str, args) -> tuple[Sequent, dict[str, Term]]:
    atoms, auto = _atoms(args.atoms)
    try:
        return Sequent.parse(text, atoms, auto), atoms
    except ParseError as exc:
        pointer = " " * exc.pos + "^"
        raise InputError(f"{exc}\n  {text}\n  {pointer}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _budget(args) -> Budget:
    try:
        return Budget(args.max_depth, args.max_nodes, args.critical_rounds)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _system(text: str, allowed: Sequence[SystemId]) -> SystemId:
    try:
        sysid = SystemId.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if sysid not in allowed:
        raise InputError(f"system {sysid.value} is not available here; use {', '.join(s.value for s in allowed)}")
    return sysid


def _legend(atoms: dict[str, Term]) -> str:
    return ", ".join(f"{n} = {t}" for n, t in atoms.items())


# -- commands -----------------------------------------------------------------


def cmd_prove(args, out) -> int:
    s, atoms = _sequent(args.sequent, args)
    sysid = _system(args.system, (SystemId.KCTT, SystemId.KCTT_H))
    v = build_tableau(s, sysid, _budget(args), _signature(args.signature))
    if args.format == "json":
        print(dumps(v), file=out)
    else:
        if atoms:
            print(f"atoms: {_legend(atoms)}", file=out)
        print(f"sequent: {s}", file=out)
        if isinstance(v, Proved):
            print(f"Proved (order {v.order}, {v.tableau.size()} nodes)", file=out)
        elif isinstance(v, Refuted):
            print("Refuted", file=out)
            print("open branch:", file=out)
            for st in v.branch.steps:
                print(f"  {st.label:<18} {st.sequent}", file=out)
            print(f"hintikka: {v.hintikka.summary()}", file=out)
            print(f"valuation: {v.valuation.show()}", file=out)
            atomic = [(f, b) for f, b in v.valuation.assignment.items() if is_atomic(f)]
            print("countermodel: " + ", ".join(f"{a} = {'t' if b else 'f'}" for a, b in atomic), file=out)
        else:
            print(f"Unknown: {v.reason}", file=out)
    return PROVED if isinstance(v, Proved) else REFUTED if isinstance(v, Refuted) else UNKNOWN


def cmd_chain(args, out) -> int:
    s, _ = _sequent(args.sequent, args)
    sysid = _system(args.system, (SystemId.KCTT, SystemId.KCTT_H))
    sig = _signature(args.signature)
    if sysid is SystemId.KCTT:
        cur = s
        for m in range(args.steps + 1):
            print(f"{m}: {cur}", file=out)
            if chain_terminal(cur, sysid):
                print("   terminal-axiom", file=out)
                return PROVED
            if m == args.steps:
                print("   unexpanded", file=out)
                return UNKNOWN
            try:
                opts = rchain_successors(cur, m, sig)
            except NotReducibleNorCritical:
                print("   terminal-primitive", file=out)
                return REFUTED
            for label, nxt, _ in opts:
                print(f"   {label} -> {nxt}", file=out)
            cur = opts[0][1]
        return UNKNOWN  # pragma: no cover
    v = build_tableau(s, sysid, Budget(max_depth=max(args.steps, 1), max_nodes=args.max_nodes,
                                       max_critical_rounds=args.critical_rounds), sig)
    node = v.tableau.root
    m = 0
    while True:
        print(f"{m}: {node.sequent}", file=out)
        if not node.children:
            print(f"   {node.step}", file=out)
            return {"terminal-axiom": PROVED, "terminal-primitive": REFUTED}.get(node.step or "", UNKNOWN)
        for b, c in enumerate(node.children):
            label = node.step if len(node.children) == 1 else ("R3.1a", "R3.1b")[b]
            print(f"   {label} -> {c.sequent}", file=out)
        node = node.children[0]
        m += 1


def cmd_check_proof(args, out) -> int:
    sysid = _system(args.system, (SystemId.KCT, SystemId.KCT_H))
    atoms, auto = _atoms(args.atoms)
    try:
        with open(args.figure) as fh:
            data = json.load(fh)
        pf = figure_from_json(data, atoms if (atoms or auto) else None)
    except (OSError, ValueError, FigureSchemaError) as exc:
        raise InputError(f"cannot read proof figure: {exc}") from None
    res = check_proof_figure(pf, sysid)
    if args.format == "json":
        print(json.dumps({"ok": res.ok, "path": list(res.path), "reason": res.reason}, sort_keys=True), file=out)
    elif res.ok:
        print(f"valid {sysid.value} proof figure", file=out)
    else:
        print(f"invalid at node {list(res.path)}: {res.reason}", file=out)
    return PROVED if res.ok else REFUTED


def cmd_rank(args, out) -> int:
    atoms, auto = _atoms(args.atoms)
    try:
        t = parse_term(args.term, atoms, auto)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    print(rank(t), file=out)
    return PROVED


def cmd_eval_model(args, out) -> int:
    s, _ = _sequent(args.sequent, args)
    try:
        with open(args.model) as fh:
            model = load_model(json.load(fh))
        env = falsifying_environment(model, s)
    except (OSError, ValueError, ModelError, MissingInterpretation) as exc:
        raise InputError(f"cannot evaluate in model: {exc}") from None
    if env is None:
        print("true", file=out)
        return PROVED
    shown = ", ".join(f"{v} = {model.name(e)}" for v, e in env.items())
    print("false" + (f" under {shown}" if shown else ""), file=out)
    return REFUTED


def cmd_selftest(args, out) -> int:
    from .acceptance import run_all

    results = run_all()
    for r in results:
        print(r.line(), file=out)
    return PROVED if all(r.passed for r in results) else REFUTED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ketonen", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, system="kctt_h"):
        sp.add_argument("--system", default=system)
        sp.add_argument("--atoms", help="comma-separated atom names, mapped to a0:1, a1:1, ...")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--signature", help="JSON file with 'objects' and 'functions'")
        sp.add_argument("--seed", type=int, default=None)

    def budget(sp):
        sp.add_argument("--max-depth", type=int, default=200)
        sp.add_argument("--max-nodes", type=int, default=10000)
        sp.add_argument("--critical-rounds", type=int, default=3)

    sp = sub.add_parser("prove", help="search for a proof or a countermodel")
    sp.add_argument("sequent")
    common(sp)
    budget(sp)
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("chain", help="print a reduction-chain prefix with step labels")
    sp.add_argument("sequent")
    sp.add_argument("--steps", type=int, default=10)
    common(sp, "kctt")
    budget(sp)
    sp.set_defaults(func=cmd_chain)

    sp = sub.add_parser("check-proof", help="check a JSON proof figure")
    sp.add_argument("figure")
    common(sp, "kct_h")
    sp.set_defaults(func=cmd_check_proof)

    sp = sub.add_parser("rank", help="print the rank of a term")
    sp.add_argument("term")
    common(sp)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("eval-model", help="evaluate a sequent in a finite model")
    sp.add_argument("model")
    sp.add_argument("sequent")
    common(sp)
    sp.set_defaults(func=cmd_eval_model)

    sp = sub.add_parser("selftest", help="run the acceptance suite")
    common(sp)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else PROVED
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
