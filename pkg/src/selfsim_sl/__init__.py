"""Certified eigenvalue bounds for Dirichlet problems -y'' = lam rho y whose
weight rho has a self-similar primitive P."""
from .certify import (
    CountingBounds,
    EigenvalueBracket,
    Status,
    Verdict,
    bracket_eigenvalue,
    counting_bounds,
    negative_eigenvalues,
    recheck,
    test_side,
)
from .inertia import InertiaResult, index_of, inertia
from .oracle import OracleEstimate, approx_eigenvalues
from .pencil import TridiagonalSymmetric, assemble
from .scalar import parse_scalar, to_float
from .selfsim import (
    CANTOR,
    INDEFINITE,
    LEBESGUE,
    MomentData,
    SampledFunction,
    SimilaritySet,
    compose,
    iterate,
    moments,
    reflect,
    sample,
    validate,
)

__version__ = "0.1.0"
