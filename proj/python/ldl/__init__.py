"""Disjunctive sequent calculi, logical states and finite L-domains."""

import json
from pathlib import Path

from ._ldl import (
    BudgetExceeded,
    Calculus,
    DisjointnessViolation,
    Error,
    InputError,
    NotAnLDomain,
    PreconditionViolated,
    SizeLimit,
    SyntaxError,
    UnknownAtom,
    domain_calculus,
    free_calculus,
    is_l_domain,
    roundtrip,
)
from ._ldl import run_suite as _run_suite

__all__ = [
    "BudgetExceeded",
    "Calculus",
    "DisjointnessViolation",
    "Error",
    "InputError",
    "NotAnLDomain",
    "PreconditionViolated",
    "SizeLimit",
    "SyntaxError",
    "UnknownAtom",
    "domain_calculus",
    "free_calculus",
    "is_l_domain",
    "load",
    "roundtrip",
    "run_suite",
]


def load(path):
    """Calculus of a `.dsb` or `.pos` file."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".dsb":
        return free_calculus(text)
    if path.suffix == ".pos":
        return domain_calculus(text)
    raise InputError(f"{path} is neither a .dsb basis nor a .pos poset")


def run_suite(fixtures, criteria=(), k=6, max_poset_size=5, seed=1):
    return json.loads(_run_suite(list(criteria), k, max_poset_size, str(fixtures), seed))
