"""Partial valuations, Hintikka sequents, finite models and the truth-table oracle."""

from .hintikka import HintikkaReport, hintikka_check
from .models import (
    ComprehensionGap,
    FiniteModel,
    MissingInterpretation,
    MAX_ENVIRONMENTS,
    ModelError,
    environments,
    eval_formula,
    falsifying_environment,
    load_model,
    random_model,
    sampled_environments,
    sequent_true_in_model,
)
from .oracle import OutOfFragment, eval_prop, falsifying_assignment, in_fragment, propositional_oracle
from .valuation import (
    Clash,
    PartialValuation,
    ValuationReport,
    check_partial_valuation,
    extract_partial_valuation,
    term_universe,
)

__all__ = [name for name in dir() if not name.startswith("_")]
