"""Analytic (Bargmann-type) representation of the infinite-case state spaces.

A state ``phi = sum_n phi_n |n>`` is sent to the entire series
``f(z) = sum_n phi_n exp(i gamma e_n) / sqrt(eps_n) z^n``.  With the inner
product ``(f, g) = sum_n eps_n conj(c_n) d_n`` the map is an isometry, and
the ladder operators become differential operators in ``z``.

Coefficients are kept as plain Python numbers so integer or rational input
stays exact through the monomial and differential rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cases import CaseKind, CaseSpec
from .coherent import RadialMeasure, epsilon, phases
from .errors import PowerMismatch, UnsupportedCase
from .ladder import energy

OPERATORS = ("a", "a_plus", "R")


def _require_infinite(spec: CaseSpec) -> None:
    if spec.is_finite:
        raise UnsupportedCase("the analytic representation is built for sigma in {1, s, 1-s^2}")


@dataclass(frozen=True)
class AnalyticSeries:
    """``f(z) = sum c_n z^n`` attached to the space ``F_m`` of a spec."""

    spec: CaseSpec
    m: int
    coeffs: tuple
    gamma: float = 0.0
    tail_bound: float = 0.0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def _check(self, other: AnalyticSeries) -> None:
        if other.spec != self.spec or other.m != self.m:
            raise PowerMismatch("series belong to different spaces F_m")

    def __add__(self, other: AnalyticSeries) -> AnalyticSeries:
        self._check(other)
        n = max(len(self), len(other))
        return AnalyticSeries(self.spec, self.m, tuple(self[k] + other[k] for k in range(n)),
                              self.gamma, self.tail_bound + other.tail_bound)

    def __mul__(self, c) -> AnalyticSeries:
        return AnalyticSeries(self.spec, self.m, tuple(c * x for x in self.coeffs),
                              self.gamma, abs(c) ** 2 * self.tail_bound)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnalyticSeries):
            return NotImplemented
        n = max(len(self), len(other))
        return (self.spec == other.spec and self.m == other.m
                and all(self[k] == other[k] for k in range(n)))

    __hash__ = None

    def max_diff(self, other: AnalyticSeries) -> float:
        n = max(len(self), len(other))
        return max((abs(self[k] - other[k]) for k in range(n)), default=0.0)


def monomial(spec: CaseSpec, m: int, n: int, c=1) -> AnalyticSeries:
    """``c z^n``."""
    _require_infinite(spec)
    return AnalyticSeries(spec, m, (0,) * n + (c,))


def to_analytic(state_coeffs, spec: CaseSpec, m: int, gamma: float = 0.0,
                tail_bound: float = 0.0) -> AnalyticSeries:
    """``f(z) = sum_n z^n exp(i gamma e_n) / sqrt(eps_n) <n|phi>``.

    ``tail_bound`` bounds ``sum_{n > N} |<n|phi>|^2`` for the truncated input;
    it is also the bound on the omitted part of ``sum eps_n |c_n|^2``.
    """
    _require_infinite(spec)
    v = np.asarray(state_coeffs, dtype=complex)
    e = np.array([float(energy(spec, m, n)) for n in range(len(v))])
    ph = np.conj(phases(gamma, e))
    eps = np.array([epsilon(spec, m, n) for n in range(len(v))])
    c = v * ph / np.sqrt(eps)
    return AnalyticSeries(spec, m, tuple(complex(x) for x in c), float(gamma), tail_bound)


def basis_u(spec: CaseSpec, m: int, n: int, gamma: float = 0.0) -> AnalyticSeries:
    """``u_n(z) = z^n exp(i gamma e_n) / sqrt(eps_n)``, the image of ``|n>``."""
    v = np.zeros(n + 1, dtype=complex)
    v[n] = 1.0
    return to_analytic(v, spec, m, gamma)


def fock_inner(f: AnalyticSeries, g: AnalyticSeries) -> complex:
    """``(f, g) = sum_n eps_n conj(c_n) d_n``."""
    f._check(g)
    n = min(len(f), len(g))
    terms = [epsilon(f.spec, f.m, k) * np.conj(f[k]) * g[k] for k in range(n)]
    re = math.fsum(complex(t).real for t in terms)
    im = math.fsum(complex(t).imag for t in terms)
    return complex(re, im)


def evaluate(f: AnalyticSeries, z: complex) -> complex:
    """``f(z)`` by Horner's rule."""
    acc = 0j
    for c in reversed(f.coeffs):
        acc = acc * z + c
    return acc


# ---------------------------------------------------------------------------
# operators


def _e(spec: CaseSpec, m: int, n: int):
    return energy(spec, m, n)


def op_on_series(which: str, f: AnalyticSeries) -> AnalyticSeries:
    """Monomial rules ``a z^n = e_n z^(n-1)``, ``a^+ z^n = z^(n+1)``, ``R z^n = (e_n - e_(n+1)) z^n``."""
    spec, m, c = f.spec, f.m, f.coeffs
    if which == "a":
        out = tuple(_e(spec, m, n) * c[n] for n in range(1, len(c)))
    elif which == "a_plus":
        out = (0,) + c
    elif which == "R":
        out = tuple((_e(spec, m, n) - _e(spec, m, n + 1)) * c[n] for n in range(len(c)))
    else:
        raise ValueError(f"unknown operator {which!r}; expected one of {OPERATORS}")
    return AnalyticSeries(spec, m, out, f.gamma, f.tail_bound)


# coefficient-level primitives: d/dz, multiplication by z, scaling

def _ddz(c: tuple) -> tuple:
    return tuple(n * c[n] for n in range(1, len(c)))


def _times_z(c: tuple) -> tuple:
    return (0,) + c


def _add(*seqs: tuple) -> tuple:
    n = max(len(s) for s in seqs)
    return tuple(sum(s[k] for s in seqs if k < len(s)) for k in range(n))


def _scale(k, c: tuple) -> tuple:
    return tuple(k * x for x in c)


def op_differential(which: str, f: AnalyticSeries) -> AnalyticSeries:
    """The same operators written as differential operators in ``z``.

    sigma in {1, s}: ``a = -alpha d/dz``, ``a^+ = z``, ``R = alpha``.
    sigma = 1 - s^2: ``a = z d^2/dz^2 + (2m - alpha) d/dz``, ``a^+ = z``,
    ``R = -2 z d/dz - 2m + alpha``.
    """
    spec, m, c = f.spec, f.m, f.coeffs
    _require_infinite(spec)
    al = spec.alpha
    if which == "a_plus":
        out = _times_z(c)
    elif spec.kind in (CaseKind.SigmaOne, CaseKind.SigmaS):
        if which == "a":
            out = _scale(-al, _ddz(c))
        elif which == "R":
            out = _scale(al, c)
        else:
            raise ValueError(f"unknown operator {which!r}")
    else:
        d1 = _ddz(c)
        if which == "a":
            out = _add(_times_z(_ddz(d1)), _scale(2 * m - al, d1))
        elif which == "R":
            out = _add(_scale(-2, _times_z(d1)), _scale(-2 * m + al, c))
        else:
            raise ValueError(f"unknown operator {which!r}")
    return AnalyticSeries(spec, m, out, f.gamma, f.tail_bound)


# ---------------------------------------------------------------------------
# measure side


def monomial_measure_inner(spec: CaseSpec, m: int, n: int, k: int, angles: int = 64) -> complex:
    """``int conj(z^n) z^k d mu`` by radial quadrature and an angular trapezoid rule."""
    _require_infinite(spec)
    if angles <= abs(n - k):
        raise ValueError("angular rule too coarse for this pair")
    theta = 2 * np.pi * np.arange(angles) / angles
    ang = np.mean(np.exp(1j * (k - n) * theta))
    if abs(ang) < 1e-15:
        return 0j
    return complex(RadialMeasure(spec, m).radial_integral(n + k) * ang)


def measure_inner(f: AnalyticSeries, g: AnalyticSeries) -> complex:
    """``int conj(f) g d mu`` expanded over monomial pairs."""
    f._check(g)
    total = 0j
    for n, cn in enumerate(f.coeffs):
        if cn == 0:
            continue
        for k, dk in enumerate(g.coeffs):
            if dk == 0:
                continue
            total += np.conj(cn) * dk * monomial_measure_inner(f.spec, f.m, n, k)
    return complex(total)
