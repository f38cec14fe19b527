"""Search, congruence certificates and torsion checks for a·x^d − y² − z² + xyz − b = 0."""

from .diophantine import (
    EquationParams,
    HypothesisError,
    SearchConfig,
    SolutionTriple,
    Validation,
    eval_residual,
    make_params,
    search,
    solve_y,
)

__version__ = "0.1.0"
