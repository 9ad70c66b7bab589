"""factorlab: a deterministic integer-factorization laboratory.

Exact difference-of-squares searches with cycle accounting, partial-residue
bilinear factoring polynomials, an all-integer LLL with a certified property
checker, a bivariate small-root solver, and a reproducible experiment
harness around them.
"""

from .fermat import (
    DegenerateDenominator,
    Exhausted,
    FermatReport,
    compute_initial_u,
    fermat_factor,
    shifted_fermat,
)
from .harness import (
    Balance,
    BoundScanRow,
    FactorCaps,
    Factorization,
    GenerationExhausted,
    Method,
    PipelineFailure,
    SemiprimeSpec,
    TrialRecord,
    bound_scan,
    experiment_run,
    factor_auto,
    gen_semiprime,
    run_pipeline,
)
from .lattice import (
    BoundsTooLarge,
    CoppersmithResult,
    DependentRows,
    LatticeFailure,
    ReducibleInput,
    ReductionParams,
    check_reduction,
    coppersmith_bivariate,
    exhaustive_roots,
    gram_det,
    lll_reduce,
)
from .ntheory import (
    NotInvertible,
    PrimeModulus,
    SelectionExhausted,
    iroot,
    is_perfect_square,
    is_prime,
    isqrt,
    modinv,
    next_prime,
    select_modulus,
)
from .polybuild import (
    BilinearPoly,
    FactorCenter,
    PartialResidue,
    RootBounds,
    bound_margin,
    build_polynomial,
    derive_partial_residue,
    is_reducible,
    poly_height,
    recover_factor,
    solve_companion_residue,
)

__version__ = "0.1.0"

__all__ = [
    "Balance",
    "BilinearPoly",
    "BoundScanRow",
    "BoundsTooLarge",
    "CoppersmithResult",
    "DegenerateDenominator",
    "DependentRows",
    "Exhausted",
    "FactorCaps",
    "FactorCenter",
    "Factorization",
    "FermatReport",
    "GenerationExhausted",
    "LatticeFailure",
    "Method",
    "NotInvertible",
    "PartialResidue",
    "PipelineFailure",
    "PrimeModulus",
    "ReducibleInput",
    "ReductionParams",
    "RootBounds",
    "SelectionExhausted",
    "SemiprimeSpec",
    "TrialRecord",
    "bound_margin",
    "bound_scan",
    "build_polynomial",
    "check_reduction",
    "compute_initial_u",
    "coppersmith_bivariate",
    "derive_partial_residue",
    "exhaustive_roots",
    "experiment_run",
    "factor_auto",
    "fermat_factor",
    "gen_semiprime",
    "gram_det",
    "iroot",
    "is_perfect_square",
    "is_prime",
    "is_reducible",
    "isqrt",
    "lll_reduce",
    "modinv",
    "next_prime",
    "poly_height",
    "recover_factor",
    "run_pipeline",
    "select_modulus",
    "shifted_fermat",
    "solve_companion_residue",
]
