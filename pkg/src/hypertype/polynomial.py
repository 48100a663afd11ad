"""Dense univariate polynomials over float, complex or Fraction scalars.

Coefficients are stored lowest degree first, ``coeffs[k]`` multiplying ``s**k``.
Arithmetic never converts scalars, so a polynomial built from ``Fraction``
coefficients stays exact through every operation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number
from typing import Iterable


def _is_zero(c) -> bool:
    return c == 0


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> Polynomial:
        if isinstance(other, Number):
            other = Polynomial([other])
        n = max(len(self), len(other))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        if isinstance(other, Number):
            other = Polynomial([other])
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, Number):
            return Polynomial(c * other for c in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> Polynomial:
        return Polynomial(c / scalar for c in self.coeffs)

    def __pow__(self, n: int) -> Polynomial:
        out = Polynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self, order: int = 1) -> Polynomial:
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [k * cs[k] for k in range(1, len(cs))]
        return Polynomial(cs)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def monic(self) -> Polynomial:
        lead = self.leading()
        if _is_zero(lead):
            raise ZeroDivisionError("zero polynomial has no monic normalisation")
        return Polynomial(c / lead for c in self.coeffs)

    def compose_linear(self, a, b) -> Polynomial:
        """Return ``p(a*s + b)`` as a polynomial in ``s``."""
        lin = Polynomial([b, a])
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def map(self, fn) -> Polynomial:
        return Polynomial(fn(c) for c in self.coeffs)

    def to_float(self) -> Polynomial:
        return self.map(float)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)


def max_coeff_error(p: Polynomial, q: Polynomial) -> float:
    """Largest absolute coefficient difference between two polynomials."""
    n = max(len(p), len(q))
    return max((abs(p[k] - q[k]) for k in range(n)), default=0.0)


def relative_coeff_error(p: Polynomial, q: Polynomial) -> float:
    """Coefficientwise difference scaled by the largest coefficient of ``q``."""
    scale = max(p.max_abs(), q.max_abs())
    if scale == 0:
        return 0.0
    return float(max_coeff_error(p, q)) / float(scale)


def proportionality_spread(p: Polynomial, q: Polynomial, floor: float = 1e-12) -> float:
    """Spread of the coefficient ratios ``q_k / p_k`` about the leading ratio.

    Coefficients of ``p`` below ``floor`` times its largest coefficient are
    treated as structural zeros; the matching ``q_k`` must then vanish
    relative to ``q``'s scale, and the returned spread accounts for it.
    """
    if p.degree != q.degree:
        return math.inf
    c = q.leading() / p.leading()
    pmax = float(p.max_abs())
    qmax = float(abs(c)) * pmax
    spread = 0.0
    for k in range(len(p)):
        pk, qk = p[k], q[k]
        if abs(pk) > floor * pmax:
            spread = max(spread, abs(qk / (c * pk) - 1))
        else:
            spread = max(spread, abs(qk) / qmax)
    return float(spread)
