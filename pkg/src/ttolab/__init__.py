"""tto-lab: numerics for truncated Toeplitz operators on model spaces.

Build finite Blaschke products, certify Takenaka-Malmquist bases by
circle quadrature, realize truncated Toeplitz operators / Clark unitaries
/ Hankel blocks as dense matrices, verify the exact algebraic identities
they satisfy, and run spectral convergence experiments along families of
products whose zeros accumulate on the unit circle.
"""

from .blaschke import (
    BlaschkeProduct,
    TruncationFamily,
    accumulation_family,
    eval_inner,
    inner_spectrum,
    make_blaschke,
)
from .modelspace import (
    KernelValue,
    ModelBasis,
    boundary_kernel_norm_check,
    build_basis,
    circle_inner_product,
    kernel_density,
    reproducing_kernel,
    tm_values,
)
from .symbols import (
    JumpSymbol,
    TrigPolynomial,
    cesaro_mean,
    chi_symbol,
    eval_symbol,
    fourier_coefficients,
    pc_reduction_coefficients,
    trig_monomial,
)
from .operators import (
    ConjugationMatrix,
    HankelBlock,
    OperatorMatrix,
    clark_functional_gap,
    clark_unitary,
    compressed_shift,
    conjugation_matrix,
    hankel_operator,
    truncated_toeplitz,
)
from .spectral import (
    SpectralResult,
    VerificationReport,
    eigenvalues,
    numerical_rank,
    singular_values,
    verify_identity,
)
from .harness import ScanReport, Scenario, run_scenario
from . import errors

__version__ = "0.1.0"

__all__ = [
    "BlaschkeProduct",
    "TruncationFamily",
    "accumulation_family",
    "eval_inner",
    "inner_spectrum",
    "make_blaschke",
    "KernelValue",
    "ModelBasis",
    "boundary_kernel_norm_check",
    "build_basis",
    "circle_inner_product",
    "kernel_density",
    "reproducing_kernel",
    "tm_values",
    "JumpSymbol",
    "TrigPolynomial",
    "cesaro_mean",
    "chi_symbol",
    "eval_symbol",
    "fourier_coefficients",
    "pc_reduction_coefficients",
    "trig_monomial",
    "ConjugationMatrix",
    "HankelBlock",
    "OperatorMatrix",
    "clark_functional_gap",
    "clark_unitary",
    "compressed_shift",
    "conjugation_matrix",
    "hankel_operator",
    "truncated_toeplitz",
    "SpectralResult",
    "VerificationReport",
    "eigenvalues",
    "numerical_rank",
    "singular_values",
    "verify_identity",
    "ScanReport",
    "Scenario",
    "run_scenario",
    "errors",
]
