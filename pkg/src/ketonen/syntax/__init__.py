"""Types, terms, printing, parsing, nominal forms and term enumeration."""

from .enumerate import DEFAULT_SIGNATURE, Signature, enumerate_terms, iter_terms, term_at
from .nominal import CaptureViolation, HoleMismatch, NominalForm, plug
from .parser import ParseError, parse_formula, parse_sequent_parts, parse_term, parse_type
from .printer import show
from .terms import (
    BOT,
    Apply,
    ArityMismatch,
    BoundRef,
    BoundVar,
    Forall,
    Formula,
    FreeRef,
    FreeVar,
    FunApp,
    Hole,
    IllTyped,
    Implies,
    Lambda,
    ObjectSym,
    Term,
    Type,
    TypeMismatch,
    UnboundBoundVariable,
    alpha_eq,
    atom,
    bot,
    canonical,
    contract,
    exists,
    forall,
    free_vars,
    free_vars_of,
    fresh_free_var,
    instantiate,
    is_atomic,
    is_bot,
    is_redex,
    is_type,
    lam,
    land,
    lor,
    loose_bound_vars,
    match_instance,
    neg,
    size,
    type_of,
    type_size,
    type_str,
)

__all__ = [name for name in dir() if not name.startswith("_")]
