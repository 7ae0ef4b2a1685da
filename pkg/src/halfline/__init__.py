"""Computational toolkit for recovering a lattice random walk from the
distributions of its positive part.

Modules: exact signed-measure algebra (measures), half-line trace identities
(traces), ladder/running-max/Wiener-Hopf reformulations (fluctuation), the
Blaschke/outer/singular factorization engine (factorization), and the
trace-inversion solver (reconstruct). The `halfline` CLI front-ends all of it.
"""

from .errors import (
    DomainError,
    HalflineError,
    IdentityViolationError,
    InsufficientDataError,
    InvalidInputError,
    NearSingularityError,
    NumericError,
)
from .measures import (
    LatticeMeasure,
    convolve,
    is_nondegenerate,
    linear_combine,
    power,
    restrict_nonpos,
    restrict_pos,
)
from .traces import (
    LemmaReport,
    TraceSet,
    binomial_check,
    mixed_trace,
    restriction_identity_check,
    traces,
    verify_lemma,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "HalflineError",
    "IdentityViolationError",
    "InsufficientDataError",
    "InvalidInputError",
    "NearSingularityError",
    "NumericError",
    "LatticeMeasure",
    "convolve",
    "is_nondegenerate",
    "linear_combine",
    "power",
    "restrict_nonpos",
    "restrict_pos",
    "LemmaReport",
    "TraceSet",
    "binomial_check",
    "mixed_trace",
    "restriction_identity_check",
    "traces",
    "verify_lemma",
    "__version__",
]
