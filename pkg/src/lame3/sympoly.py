"""Exact polynomials in B over Q[g2, g3] with weighted-homogeneity tracking.

Weights: B -> 1, g2 -> 2, g3 -> 3.  A ``WeightedPoly`` stores a sparse map
``(b_exp, g2_exp, g3_exp) -> Fraction`` plus an optional declared weight that
is validated on construction and propagated by the ring operations.

Polynomials in an auxiliary variable x with ``WeightedPoly`` coefficients are
plain lists (index = power of x); the ``x*`` helpers below implement the ring
operations and exact division by a monic divisor.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NonzeroRemainder

Monomial = tuple[int, int, int]

__all__ = [
    "WeightedPoly",
    "RationalWeightedPoly",
    "NumPoly",
    "wpoly_arith",
    "specialize",
    "monomial_weight",
    "XPoly",
    "xtrim",
    "xadd",
    "xsub",
    "xmul",
    "xscale",
    "xderiv",
    "xdivmod",
    "xdiv_exact",
    "xshift",
    "xeval",
    "xconst",
    "monic_normalize",
    "WPOLY_SCHEMA",
    "NUMPOLY_SCHEMA",
]


def monomial_weight(mono: Monomial) -> int:
    b, s, t = mono
    return b + 2 * s + 3 * t


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


class WeightedPoly:
    """Exact element of Q[B, g2, g3] with an optional homogeneity flag."""

    __slots__ = ("terms", "weight")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, weight: int | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = _frac(c)
            if c:
                if len(mono) != 3 or min(mono) < 0:
                    raise ValueError(f"bad monomial {mono}")
                clean[tuple(int(e) for e in mono)] = c
        if weight is not None:
            for mono in clean:
                if monomial_weight(mono) != weight:
                    raise ValueError(f"term {mono} violates declared weight {weight}")
        self.terms = clean
        self.weight = weight

    # constructors
    @classmethod
    def const(cls, c=1) -> "WeightedPoly":
        return cls({(0, 0, 0): c}, weight=0)

    @classmethod
    def zero(cls) -> "WeightedPoly":
        return cls({}, weight=None)

    @classmethod
    def B(cls) -> "WeightedPoly":
        return cls({(1, 0, 0): 1}, weight=1)

    @classmethod
    def g2(cls) -> "WeightedPoly":
        return cls({(0, 1, 0): 1}, weight=2)

    @classmethod
    def g3(cls) -> "WeightedPoly":
        return cls({(0, 0, 1): 1}, weight=3)

    @classmethod
    def _raw(cls, terms: dict, weight: int | None) -> "WeightedPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.weight = weight
        return obj

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def inferred_weight(self) -> int | None:
        """Weight if every term has the same weight, else None (None for zero too)."""
        ws = {monomial_weight(m) for m in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def check_weight(self) -> bool:
        """True when the declared flag is set and matches every term."""
        if self.weight is None:
            return False
        return all(monomial_weight(m) == self.weight for m in self.terms)

    def degree_b(self) -> int:
        return max((m[0] for m in self.terms), default=-1)

    def coeff_b(self, d: int) -> "WeightedPoly":
        """Coefficient of B^d as an element of Q[g2, g3]."""
        out = {(0, s, t): c for (b, s, t), c in self.terms.items() if b == d}
        w = None if self.weight is None else self.weight - d
        return WeightedPoly._raw(out, w if out else None)

    def is_constant(self) -> bool:
        return all(m == (0, 0, 0) for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0, 0, 0), Fraction(0))

    # arithmetic
    def __add__(self, other: "WeightedPoly") -> "WeightedPoly":
        other = _coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        w = self.weight if self.weight == other.weight else None
        return WeightedPoly._raw(out, w if out else None)

    __radd__ = __add__

    def __neg__(self) -> "WeightedPoly":
        return WeightedPoly._raw({m: -c for m, c in self.terms.items()}, self.weight)

    def __sub__(self, other: "WeightedPoly") -> "WeightedPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "WeightedPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "WeightedPoly":
        if not isinstance(other, WeightedPoly):
            return self.scale(other)
        if not self.terms or not other.terms:
            return WeightedPoly.zero()
        out: dict[Monomial, Fraction] = {}
        for (b1, s1, t1), c1 in self.terms.items():
            for (b2, s2, t2), c2 in other.terms.items():
                m = (b1 + b2, s1 + s2, t1 + t2)
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        out = {m: c for m, c in out.items() if c}
        w = None if self.weight is None or other.weight is None else self.weight + other.weight
        return WeightedPoly._raw(out, w if out else None)

    def __rmul__(self, other) -> "WeightedPoly":
        return self.scale(other)

    def scale(self, r) -> "WeightedPoly":
        r = _frac(r)
        if not r or not self.terms:
            return WeightedPoly.zero()
        return WeightedPoly._raw({m: c * r for m, c in self.terms.items()}, self.weight)

    def __truediv__(self, r) -> "WeightedPoly":
        return self.scale(1 / _frac(r))

    def __pow__(self, k: int) -> "WeightedPoly":
        out = WeightedPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedPoly):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # evaluation
    def evaluate(self, B: complex, g2: complex, g3: complex) -> complex:
        return complex(sum(float(c) * B**b * g2**s * g3**t for (b, s, t), c in self.terms.items()))

    def monic(self) -> tuple["WeightedPoly", Fraction]:
        """Divide by the leading B-coefficient, which must be a rational constant."""
        lead = self.coeff_b(self.degree_b())
        if not lead.is_constant():
            raise ValueError("leading coefficient is not a rational constant; use RationalWeightedPoly")
        c = lead.constant_value()
        return self.scale(1 / c), c

    # serialization
    def to_records(self) -> list[dict]:
        return [
            {"b": b, "g2": s, "g3": t, "num": c.numerator, "den": c.denominator}
            for (b, s, t), c in sorted(self.terms.items())
        ]

    @classmethod
    def from_records(cls, recs: Iterable[Mapping]) -> "WeightedPoly":
        terms: dict[Monomial, Fraction] = {}
        for r in recs:
            terms[(int(r["b"]), int(r["g2"]), int(r["g3"]))] = Fraction(int(r["num"]), int(r["den"]))
        p = cls(terms)
        p.weight = p.inferred_weight()
        return p

    def to_json(self) -> str:
        return json.dumps(self.to_records(), separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "WeightedPoly":
        return cls.from_records(json.loads(s))

    def __repr__(self) -> str:
        return f"WeightedPoly({self}, weight={self.weight})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (b, s, t), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][0], kv[0][1], kv[0][2])):
            fac = []
            if b:
                fac.append("B" if b == 1 else f"B^{b}")
            if s:
                fac.append("g2" if s == 1 else f"g2^{s}")
            if t:
                fac.append("g3" if t == 1 else f"g3^{t}")
            mono = "*".join(fac)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(x) -> WeightedPoly:
    if isinstance(x, WeightedPoly):
        return x
    return WeightedPoly.const(_frac(x))


@dataclass(frozen=True)
class RationalWeightedPoly:
    """A WeightedPoly divided by a nonzero element of Q[g2, g3].

    Used only when a monic normalization meets a leading coefficient that is
    not a rational constant.
    """

    num: WeightedPoly
    den: WeightedPoly

    def __post_init__(self):
        if self.den.is_zero() or self.den.degree_b() > 0:
            raise ValueError("denominator must be a nonzero element of Q[g2, g3]")

    def specialize(self, g2: complex, g3: complex) -> "NumPoly":
        d = self.den.evaluate(0, g2, g3)
        return specialize(self.num, g2, g3).scale(1 / d)


def monic_normalize(p: WeightedPoly) -> tuple[WeightedPoly | RationalWeightedPoly, WeightedPoly]:
    """Return (monic form, leading coefficient) allowing rational-function coefficients."""
    lead = p.coeff_b(p.degree_b())
    if lead.is_constant():
        q, c = p.monic()
        return q, WeightedPoly.const(c)
    return RationalWeightedPoly(p, lead), lead


def wpoly_arith(a: WeightedPoly, b, op: str) -> WeightedPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------- numeric

@dataclass(frozen=True)
class NumPoly:
    """Numeric polynomial in B, coefficients in ascending powers."""

    coeffs: np.ndarray
    trimmed: int = 0

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex], rtol: float = 0.0) -> "NumPoly":
        c = np.asarray(coeffs, dtype=complex).copy()
        if c.ndim != 1 or c.size == 0:
            c = np.zeros(1, dtype=complex)
        scale = float(np.max(np.abs(c))) if c.size else 0.0
        k = 0
        while c.size > 1 and abs(c[-1]) <= rtol * scale:
            c = c[:-1]
            k += 1
        c.setflags(write=False)
        return cls(c, k)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, B):
        return np.polynomial.polynomial.polyval(B, self.coeffs)

    def deriv(self) -> "NumPoly":
        return NumPoly.from_coeffs(np.polynomial.polynomial.polyder(self.coeffs))

    def monic(self) -> "NumPoly":
        return NumPoly.from_coeffs(self.coeffs / self.coeffs[-1])

    def scale(self, s: complex) -> "NumPoly":
        return NumPoly.from_coeffs(self.coeffs * s)

    def __add__(self, other: "NumPoly") -> "NumPoly":
        return NumPoly.from_coeffs(np.polynomial.polynomial.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "NumPoly") -> "NumPoly":
        return NumPoly.from_coeffs(np.polynomial.polynomial.polysub(self.coeffs, other.coeffs))

    def __mul__(self, other: "NumPoly") -> "NumPoly":
        return NumPoly.from_coeffs(np.polynomial.polynomial.polymul(self.coeffs, other.coeffs))

    def norm(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def to_dict(self) -> dict:
        return {
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
            "degree": self.degree,
            "trimmed": self.trimmed,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "NumPoly":
        return cls.from_coeffs([complex(re, im) for re, im in d["coeffs"]])


def specialize(p: WeightedPoly | RationalWeightedPoly, g2: complex, g3: complex, rtol: float = 1e-14) -> NumPoly:
    """Substitute numeric g2, g3; trailing B-coefficients below rtol*max are trimmed."""
    if isinstance(p, RationalWeightedPoly):
        return p.specialize(g2, g3)
    deg = p.degree_b()
    c = np.zeros(max(deg, 0) + 1, dtype=complex)
    for (b, s, t), v in p.terms.items():
        c[b] += float(v) * g2**s * g3**t
    return NumPoly.from_coeffs(c, rtol=rtol)


# ---------------------------------------------------------------- x-polynomials

XPoly = list  # list[WeightedPoly], index = power of x


def xconst(c) -> XPoly:
    return [_coerce(c)]


def xtrim(a: XPoly) -> XPoly:
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def xadd(a: XPoly, b: XPoly) -> XPoly:
    n = max(len(a), len(b))
    z = WeightedPoly.zero()
    return xtrim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)])


def xsub(a: XPoly, b: XPoly) -> XPoly:
    return xadd(a, xscale(b, -1))


def xscale(a: XPoly, c) -> XPoly:
    if isinstance(c, WeightedPoly):
        return xtrim([ai * c for ai in a])
    return xtrim([ai.scale(c) for ai in a])


def xmul(a: XPoly, b: XPoly) -> XPoly:
    if not a or not b:
        return []
    out = [WeightedPoly.zero() for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return xtrim(out)


def xderiv(a: XPoly) -> XPoly:
    return xtrim([a[i].scale(i) for i in range(1, len(a))])


def xshift(a: XPoly, k: int = 1) -> XPoly:
    """Multiply by x^k."""
    return xtrim([WeightedPoly.zero()] * k + list(a)) if a else []


def xdivmod(num: XPoly, den: XPoly) -> tuple[XPoly, XPoly]:
    """Long division in x by a divisor whose leading x-coefficient is 1."""
    den = xtrim(den)
    if not den or den[-1] != WeightedPoly.const(1):
        raise ValueError("divisor must be monic in x")
    rem = list(xtrim(num))
    dq = len(den) - 1
    if len(rem) - 1 < dq:
        return [], rem
    quo = [WeightedPoly.zero() for _ in range(len(rem) - dq)]
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c.is_zero():
            continue
        quo[k - dq] = c
        for j, dj in enumerate(den):
            if not dj.is_zero():
                rem[k - dq + j] = rem[k - dq + j] - c * dj
    return xtrim(quo), xtrim(rem[:dq])


def xdiv_exact(num: XPoly, den: XPoly) -> XPoly:
    quo, rem = xdivmod(num, den)
    if rem:
        raise NonzeroRemainder(f"division left a remainder of x-degree {len(rem) - 1}")
    return quo


def xeval(a: XPoly, x: complex, B: complex, g2: complex, g3: complex) -> complex:
    out = 0j
    for c in reversed(a):
        out = out * x + c.evaluate(B, g2, g3)
    return out


# ---------------------------------------------------------------- JSON schemas

WPOLY_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["b", "g2", "g3", "num", "den"],
        "additionalProperties": False,
        "properties": {
            "b": {"type": "integer", "minimum": 0},
            "g2": {"type": "integer", "minimum": 0},
            "g3": {"type": "integer", "minimum": 0},
            "num": {"type": "integer"},
            "den": {"type": "integer", "minimum": 1},
        },
    },
}

NUMPOLY_SCHEMA = {
    "type": "object",
    "required": ["coeffs"],
    "properties": {
        "coeffs": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        },
        "degree": {"type": "integer"},
        "trimmed": {"type": "integer"},
    },
}
