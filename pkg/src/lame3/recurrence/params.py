"""Parameterization of the equation by the integers (n, l)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from enum import Enum

from ..errors import DomainError


class Regime(str, Enum):
    ODD_ODD = "OddOdd"
    ODD_EVEN = "OddEven"
    EVEN_ANY = "EvenAny"


@dataclass(frozen=True)
class ProblemParams:
    n: int
    l: int
    alpha: int
    beta: Fraction
    exponents: tuple[int, int, int]
    dual_exponents: tuple[int, int, int]
    dual_beta: Fraction
    regime: Regime
    k: int | None
    m: int
    m0: int | None

    @property
    def gaps(self) -> tuple[int, int]:
        """Exponent gaps (s2 - s1 - 1, s3 - s2 - 1), equal to (n, n + 3l)."""
        s1, s2, s3 = self.exponents
        return (s2 - s1 - 1, s3 - s2 - 1)

    @property
    def dual_gaps(self) -> tuple[int, int]:
        d1, d2, d3 = self.dual_exponents
        return (d2 - d1 - 1, d3 - d2 - 1)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "alpha": self.alpha,
            "beta": str(self.beta),
            "exponents": list(self.exponents),
            "dual_exponents": list(self.dual_exponents),
            "dual_beta": str(self.dual_beta),
            "regime": self.regime.value,
            "k": self.k,
            "m": self.m,
            "m0": self.m0,
        }


def alpha_of(n: int, l: int) -> int:
    return n * n + 3 * n * l + 3 * l * l + 3 * l + 2 * n


def beta_of(n: int, l: int) -> Fraction:
    return Fraction((l - 1) * (n + l) * (n + 2 * l + 2), 2)


def problem_params(n: int, l: int) -> ProblemParams:
    if not (isinstance(n, int) and isinstance(l, int)) or n < 0 or l < 0:
        raise DomainError(f"n and l must be non-negative integers, got ({n}, {l})")
    if n == 0 and l == 0:
        raise DomainError("(n, l) = (0, 0): 0 is a regular point")
    alpha = alpha_of(n, l)
    beta = beta_of(n, l)
    dual_beta = -(alpha + beta)
    if n % 2 == 0:
        regime = Regime.EVEN_ANY
    elif l % 2:
        regime = Regime.ODD_ODD
    else:
        regime = Regime.ODD_EVEN
    if l % 2:
        k = (l - 1) // 2
    elif n % 2 == 0:
        k = (n + l) // 2
    else:
        k = None  # no even elliptic solution when n is odd and l even
    return ProblemParams(
        n=n,
        l=l,
        alpha=alpha,
        beta=beta,
        exponents=(-n - l, 1 - l, n + 2 * l + 2),
        dual_exponents=(-n - 2 * l, l + 1, n + l + 2),
        dual_beta=dual_beta,
        regime=regime,
        k=k,
        m=n + 2 * l,
        m0=(n + 2 * l) // 2 if n % 2 == 0 else None,
    )


def indicial_coefficients(alpha, beta) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coefficients (1, -3, 2 - alpha, -2 beta) of the indicial cubic in a."""
    return (Fraction(1), Fraction(-3), Fraction(2 - alpha), Fraction(-2 * beta))


def indicial_roots(alpha, beta) -> tuple[int, ...]:
    """Integer roots of the indicial cubic, sorted; raises if they are not all integers."""
    _, c2, c1, c0 = indicial_coefficients(alpha, beta)
    # candidates divide the constant term; bound the search by the Cauchy radius
    bound = int(1 + max(abs(c2), abs(c1), abs(c0))) + 1
    roots = []
    for a in range(-bound, bound + 1):
        val = a**3 + c2 * a * a + c1 * a + c0
        if val == 0:
            roots.append(a)
    found = []
    for a in roots:
        # multiplicity from derivatives
        mult = 1
        if 3 * a * a + 2 * c2 * a + c1 == 0:
            mult = 2 if 6 * a + 2 * c2 != 0 else 3
        found.extend([a] * mult)
    if len(found) != 3:
        raise DomainError(f"indicial cubic for alpha={alpha}, beta={beta} has non-integer roots")
    return tuple(sorted(found))


def dual_parameters(alpha, beta) -> tuple[int, Fraction]:
    """(alpha, beta) of the equation satisfied by Wronskians of solution pairs."""
    return alpha, -(Fraction(alpha) + Fraction(beta))
