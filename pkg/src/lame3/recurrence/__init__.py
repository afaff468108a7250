"""Coefficient recursions: parameters, elliptic solutions, apparent and spectral polynomials."""
from .apparent import apparent_polynomial, obstruction_index, second_elliptic_polynomial
from .even import (
    EllipticSolution,
    apply_third_order,
    dual_even_elliptic_solution,
    even_elliptic_solution,
)
from .halfbasis import HalfBasisSolution, halfbasis_polynomial, halfbasis_solution
from .laurent import wp_laurent
from .params import ProblemParams, Regime, problem_params
from .spectral import (
    SpectralResult,
    expected_degree,
    lame_spectral_polynomial,
    spectral_polynomial,
    symmetric_product_coeffs,
)
from .zeros import elliptic_solution_zeros

__all__ = [
    "ProblemParams",
    "Regime",
    "problem_params",
    "wp_laurent",
    "EllipticSolution",
    "even_elliptic_solution",
    "dual_even_elliptic_solution",
    "apply_third_order",
    "apparent_polynomial",
    "second_elliptic_polynomial",
    "obstruction_index",
    "halfbasis_polynomial",
    "halfbasis_solution",
    "HalfBasisSolution",
    "symmetric_product_coeffs",
    "spectral_polynomial",
    "SpectralResult",
    "expected_degree",
    "lame_spectral_polynomial",
    "elliptic_solution_zeros",
]
