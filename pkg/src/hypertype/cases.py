"""The six canonical sigma-cases of hypergeometric-type equations.

Every equation ``sigma*y'' + tau*y' + lambda*y = 0`` with ``deg sigma <= 2`` and
``tau(s) = alpha*s + beta`` reduces, after an affine change of variable, to one
of six normal forms for ``sigma``.  Each form comes with an interval on which
``sigma > 0``, a weight ``rho`` solving the Pearson equation
``(sigma*rho)' = tau*rho``, and inequalities on ``(alpha, beta)`` that make the
boundary terms vanish.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import ConstraintViolation, IndexOutOfRange, OutOfDomain
from .polynomial import Polynomial

Scalar = Union[float, Fraction]

INF = math.inf


class CaseKind(enum.Enum):
    """Normal form of sigma; the value is the CLI label."""

    SigmaOne = "1"
    SigmaS = "s"
    SigmaOneMinusS2 = "1-s2"
    SigmaS2Minus1 = "s2-1"
    SigmaS2 = "s2"
    SigmaS2Plus1 = "s2+1"

    @property
    def label(self) -> str:
        return _PRETTY[self]

    @property
    def sigma_coeffs(self) -> tuple[int, int, int]:
        """``(a2, a1, a0)`` with ``sigma(s) = a2*s**2 + a1*s + a0``."""
        return _SIGMA[self]

    @property
    def sigma_second(self) -> int:
        return 2 * _SIGMA[self][0]

    @property
    def is_finite(self) -> bool:
        """True for the three cases with finitely many orthogonal polynomials."""
        return self in _FINITE

    @property
    def interval(self) -> tuple[float, float]:
        return _INTERVAL[self]

    @classmethod
    def parse(cls, text: str) -> CaseKind:
        key = text.strip().replace(" ", "").replace("^", "").replace("²", "2")
        key = key.replace("−", "-")
        for kind in cls:
            if kind.value == key or kind.name == text:
                return kind
        raise ValueError(f"unknown sigma-case {text!r}; expected one of "
                         f"{', '.join(k.value for k in cls)}")


_SIGMA = {
    CaseKind.SigmaOne: (0, 0, 1),
    CaseKind.SigmaS: (0, 1, 0),
    CaseKind.SigmaOneMinusS2: (-1, 0, 1),
    CaseKind.SigmaS2Minus1: (1, 0, -1),
    CaseKind.SigmaS2: (1, 0, 0),
    CaseKind.SigmaS2Plus1: (1, 0, 1),
}

_INTERVAL = {
    CaseKind.SigmaOne: (-INF, INF),
    CaseKind.SigmaS: (0.0, INF),
    CaseKind.SigmaOneMinusS2: (-1.0, 1.0),
    CaseKind.SigmaS2Minus1: (1.0, INF),
    CaseKind.SigmaS2: (0.0, INF),
    CaseKind.SigmaS2Plus1: (-INF, INF),
}

_PRETTY = {
    CaseKind.SigmaOne: "1",
    CaseKind.SigmaS: "s",
    CaseKind.SigmaOneMinusS2: "1-s^2",
    CaseKind.SigmaS2Minus1: "s^2-1",
    CaseKind.SigmaS2: "s^2",
    CaseKind.SigmaS2Plus1: "s^2+1",
}

_FINITE = frozenset({CaseKind.SigmaS2Minus1, CaseKind.SigmaS2, CaseKind.SigmaS2Plus1})

# (readable inequality, predicate) pairs per case
_CONSTRAINTS = {
    CaseKind.SigmaOne: [("alpha < 0", lambda a, b: a < 0)],
    CaseKind.SigmaS: [("alpha < 0", lambda a, b: a < 0),
                      ("beta > 0", lambda a, b: b > 0)],
    CaseKind.SigmaOneMinusS2: [("alpha < beta", lambda a, b: a < b),
                               ("alpha + beta < 0", lambda a, b: a + b < 0)],
    CaseKind.SigmaS2Minus1: [("alpha + beta > 0", lambda a, b: a + b > 0),
                             ("alpha < 0", lambda a, b: a < 0)],
    CaseKind.SigmaS2: [("alpha < 0", lambda a, b: a < 0),
                       ("beta > 0", lambda a, b: b > 0)],
    CaseKind.SigmaS2Plus1: [("alpha < 0", lambda a, b: a < 0)],
}


@dataclass(frozen=True)
class CaseSpec:
    """A validated sigma-case.  Build it with :func:`validate`."""

    kind: CaseKind
    alpha: Scalar
    beta: Scalar
    interval: tuple[float, float] = field(default=(-INF, INF))

    @property
    def exact(self) -> bool:
        return isinstance(self.alpha, Fraction)

    @property
    def is_finite(self) -> bool:
        return self.kind.is_finite

    @property
    def sigma_poly(self) -> Polynomial:
        a2, a1, a0 = self.kind.sigma_coeffs
        return Polynomial([a0, a1, a2])

    @property
    def tau_poly(self) -> Polynomial:
        return Polynomial([self.beta, self.alpha])

    def sigma(self, s):
        a2, a1, a0 = self.kind.sigma_coeffs
        return (a2 * s + a1) * s + a0

    def dsigma(self, s):
        a2, a1, _ = self.kind.sigma_coeffs
        return 2 * a2 * s + a1

    def tau(self, s):
        return self.alpha * s + self.beta

    def contains(self, s: float) -> bool:
        a, b = self.interval
        return a < s < b

    def label(self) -> str:
        return f"sigma={self.kind.label}, alpha={self.alpha}, beta={self.beta}"


@dataclass(frozen=True)
class SpectralIndexBound:
    capital_lambda: Scalar  # math.inf for the infinite cases
    finite_L: Optional[int] = None


def _coerce(x, exact: bool) -> Scalar:
    if exact:
        if isinstance(x, float):
            return Fraction(repr(x))
        return Fraction(x)
    if isinstance(x, str):
        return float(Fraction(x))
    return float(x)


def validate(kind: CaseKind | str, alpha, beta, exact: bool = False) -> CaseSpec:
    """Check the admissibility constraints and return an immutable :class:`CaseSpec`.

    With ``exact=True`` the parameters are stored as :class:`fractions.Fraction`
    and every polynomial quantity derived from the returned CaseSpec is computed exactly.
    """
    if isinstance(kind, str):
        kind = CaseKind.parse(kind)
    a, b = _coerce(alpha, exact), _coerce(beta, exact)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("alpha and beta must be finite")
    for text, ok in _CONSTRAINTS[kind]:
        if not ok(a, b):
            raise ConstraintViolation(kind, text, a, b)
    return CaseSpec(kind, a, b, kind.interval)


def weight(spec: CaseSpec, s: float) -> float:
    """Weight function rho(s) of the case, evaluated strictly inside the interval."""
    if not spec.contains(s):
        raise OutOfDomain(f"s={s} outside {spec.interval} for sigma={spec.kind.label}")
    a, b = float(spec.alpha), float(spec.beta)
    k = spec.kind
    if k is CaseKind.SigmaOne:
        return math.exp(0.5 * a * s * s + b * s)
    if k is CaseKind.SigmaS:
        return s ** (b - 1) * math.exp(a * s)
    if k is CaseKind.SigmaOneMinusS2:
        return (1 + s) ** (-(a - b) / 2 - 1) * (1 - s) ** (-(a + b) / 2 - 1)
    if k is CaseKind.SigmaS2Minus1:
        return (s + 1) ** ((a - b) / 2 - 1) * (s - 1) ** ((a + b) / 2 - 1)
    if k is CaseKind.SigmaS2:
        return s ** (a - 2) * math.exp(-b / s)
    return (1 + s * s) ** (a / 2 - 1) * math.exp(b * math.atan(s))


def lambda_l(spec: CaseSpec, l: int) -> Scalar:
    """Eigenvalue ``-(sigma''/2) l(l-1) - alpha l`` attached to degree ``l``."""
    a2 = spec.kind.sigma_coeffs[0]
    return -a2 * l * (l - 1) - spec.alpha * l


def index_bound(spec: CaseSpec) -> SpectralIndexBound:
    if not spec.is_finite:
        return SpectralIndexBound(INF, None)
    cap = (1 - spec.alpha) / 2
    return SpectralIndexBound(cap, math.ceil(cap) - 1)


def max_degree(spec: CaseSpec) -> Optional[int]:
    """Largest admissible polynomial degree, ``None`` when unbounded."""
    return index_bound(spec).finite_L


def check_degree(spec: CaseSpec, l: int) -> None:
    if l < 0:
        raise IndexOutOfRange(f"negative degree {l}")
    L = max_degree(spec)
    if L is not None and l > L:
        raise IndexOutOfRange(
            f"degree {l} >= Lambda={index_bound(spec).capital_lambda} for {spec.label()}"
        )


def moment_order_limit(spec: CaseSpec) -> Optional[float]:
    """Strict upper bound on k for which the k-th moment of rho converges.

    The finite cases all decay like ``|s|**(alpha-2)`` at infinity, so
    ``int s**k rho`` exists exactly for ``k < 1 - alpha``.
    """
    if not spec.is_finite:
        return None
    return 1 - float(spec.alpha)


def interior_points(spec: CaseSpec, n: int, inner: float = 0.9) -> list[float]:
    """``n`` points covering the central ``inner`` fraction of the interval.

    Unbounded ends are pulled in by a Moebius map of (0, 1) so the sample
    stays away from the regions where sigma or rho under- or overflow.
    """
    lo = (1 - inner) / 2
    us = [lo + inner * (j + 0.5) / n for j in range(n)]
    a, b = spec.interval
    if math.isfinite(a) and math.isfinite(b):
        return [a + (b - a) * u for u in us]
    if math.isfinite(a):
        return [a + 4 * u / (1 - u) for u in us]
    return [math.tan(math.pi * (u - 0.5)) for u in us]
