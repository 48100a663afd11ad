"""Gazeau-Klauder type coherent states for the ladder operators of :mod:`ladder`.

``|z, gamma> = sum_n z^n exp(-i gamma e_n) / sqrt(eps_n) |n>`` with
``eps_n = w_1 w_2 ... w_n`` and ``w_n`` the ladder weights (``e_n`` in the
infinite cases, ``n (Lt - n + 1)`` in the finite ones).  Infinite series are
cut where the omitted tail is certified negligible; finite ones are exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import mpmath
import numpy as np
import scipy.linalg
import scipy.special

from .cases import CaseKind, CaseSpec
from .errors import IntegrationFailure, TruncationError, UnsupportedCase
from .ladder import build_ladder, energy, ladder_weight, level_count
from .quadrature import tanh_sinh
from .special import bessel_k, hyp0f1

#: truncation threshold on |z|^(2N)/eps_N, i.e. on |c_N|^2
TRUNCATION_TOL = 1e-32
MAX_TERMS = 5000


@dataclass(frozen=True)
class CoherentState:
    """Coefficient vector of ``|z, gamma>`` in the basis ``|n> = phi_{m+n,m}``.

    Attributes
    ----------
    coeffs : ndarray of complex
        ``c_0 .. c_N``.
    tail_bound : float
        Upper bound on ``sum_{n > N} |c_n|^2``; zero in the finite cases.
    """

    spec: CaseSpec
    m: int
    z: complex
    gamma: float
    coeffs: np.ndarray
    tail_bound: float
    finite: bool

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def norm_sq(self) -> float:
        return float(math.fsum(np.abs(self.coeffs) ** 2))

    def vector(self, dim: int | None = None) -> np.ndarray:
        """Coefficients zero-padded to ``dim``."""
        if dim is None or dim == self.dim:
            return self.coeffs.copy()
        if dim < self.dim:
            raise TruncationError(f"state needs {self.dim} components, {dim} requested")
        out = np.zeros(dim, dtype=complex)
        out[: self.dim] = self.coeffs
        return out


def _weights(spec: CaseSpec, m: int, count: int) -> np.ndarray:
    return np.array([float(ladder_weight(spec, m, n)) for n in range(count)])


def _energies(spec: CaseSpec, m: int, count: int) -> np.ndarray:
    return np.array([float(energy(spec, m, n)) for n in range(count)])


def phases(gamma: float, e: np.ndarray) -> np.ndarray:
    """``exp(-i gamma e_n)`` with the argument formed and reduced in extended precision.

    ``gamma * e_n`` is exact at 120 bits, so each phase is correctly rounded
    even when ``e_n`` is in the thousands.
    """
    out = np.empty(len(e), dtype=complex)
    with mpmath.workprec(160):
        g = mpmath.mpf(float(gamma))
        for n, en in enumerate(e):
            ang = g * mpmath.mpf(float(en))
            out[n] = complex(float(mpmath.cos(ang)), -float(mpmath.sin(ang)))
    return out


def epsilon(spec: CaseSpec, m: int, n: int) -> float:
    """``eps_n``: product of the first ``n`` ladder weights."""
    out = 1.0
    for k in range(1, n + 1):
        out *= float(ladder_weight(spec, m, k))
    return out


def epsilon_closed(spec: CaseSpec, m: int, n: int) -> float:
    """Gamma-function form of ``eps_n``; an independent route to :func:`epsilon`."""
    al = float(spec.alpha)
    if spec.kind in (CaseKind.SigmaOne, CaseKind.SigmaS):
        return math.factorial(n) * (-al) ** n
    if spec.kind is CaseKind.SigmaOneMinusS2:
        c = 2 * m - al
        return math.exp(math.lgamma(n + 1) + math.lgamma(n + c) - math.lgamma(c))
    top = level_count(spec, m)
    return math.factorial(n) * math.factorial(top) / math.factorial(top - n)


def _truncation(spec: CaseSpec, m: int, r2: float, tol: float) -> tuple[int, float]:
    """Smallest ``N`` with ``t_N = r2^N / eps_N <= tol`` past the peak, and a tail bound.

    The ratio ``t_{n+1} / t_n = r2 / e_{n+1}`` decreases in ``n``, so once it
    is below one the remainder after ``N`` is at most ``t_{N+1} / (1 - q)``.
    """
    if r2 == 0:
        return 0, 0.0
    t, n = 1.0, 0
    while n < MAX_TERMS:
        q = r2 / float(ladder_weight(spec, m, n + 1))
        if q < 0.5 and t <= tol:
            nxt = t * q
            return n, nxt / (1 - q)
        t *= q
        n += 1
    raise TruncationError(f"|z|^2={r2} needs more than {MAX_TERMS} terms")


def coherent_state(spec: CaseSpec, m: int, z: complex, gamma: float = 0.0,
                   tol: float = TRUNCATION_TOL) -> CoherentState:
    """Build ``|z, gamma>``.

    In the infinite cases the series is cut at the first ``N`` past the
    largest term with ``|c_N|^2 <= tol``; the remainder bound is stored in
    ``tail_bound``.  In the finite cases all ``Lt + 1`` components are kept.
    """
    z = complex(z)
    top = level_count(spec, m)
    if top is None:
        N, tail = _truncation(spec, m, abs(z) ** 2, tol)
    else:
        N, tail = top, 0.0
    w = _weights(spec, m, N + 1)
    e = _energies(spec, m, N + 1)
    amp = np.empty(N + 1, dtype=complex)
    amp[0] = 1.0
    for n in range(1, N + 1):
        amp[n] = amp[n - 1] * z / math.sqrt(w[n])
    coeffs = amp * phases(gamma, e)
    return CoherentState(spec, m, z, float(gamma), coeffs, tail, top is not None)


def overlap(state: CoherentState) -> float:
    """``<z,gamma|z,gamma>`` from the stored coefficients."""
    return state.norm_sq()


def overlap_series(spec: CaseSpec, m: int, z: complex, terms: int | None = None) -> float:
    """``sum |z|^(2n) / eps_n`` summed term by term."""
    r2 = abs(z) ** 2
    top = level_count(spec, m)
    if terms is None:
        terms = top + 1 if top is not None else _truncation(spec, m, r2, TRUNCATION_TOL)[0] + 1
    t, acc = 1.0, [1.0]
    for n in range(1, terms):
        t *= r2 / float(ladder_weight(spec, m, n))
        acc.append(t)
    return math.fsum(acc)


def overlap_closed(spec: CaseSpec, m: int, z: complex) -> float:
    """Closed form of ``<z,gamma|z,gamma>``.

    ``exp(-|z|^2/alpha)`` for sigma in {1, s}, ``0F1(2m - alpha; |z|^2)`` for
    sigma = 1 - s^2 and the finite sum over ``n <= Lt`` otherwise.
    """
    r2 = abs(z) ** 2
    al = float(spec.alpha)
    if spec.kind in (CaseKind.SigmaOne, CaseKind.SigmaS):
        return math.exp(-r2 / al)
    if spec.kind is CaseKind.SigmaOneMinusS2:
        return hyp0f1(2 * m - al, r2)
    top = level_count(spec, m)
    return math.fsum(r2 ** n / epsilon_closed(spec, m, n) for n in range(top + 1))


def evolve(state: CoherentState, t: float) -> CoherentState:
    """``exp(-i t H) |z,gamma>`` with ``H = sum e_n |n><n|``.

    The result agrees with ``coherent_state(..., gamma + t)`` to rounding of
    the final products whenever ``gamma + t`` is itself a double (e.g. dyadic
    ``gamma`` and ``t``); otherwise the rounding of ``gamma + t`` shifts the
    phases by up to ``e_n`` ulps.
    """
    e = _energies(state.spec, state.m, state.dim)
    return replace(state, coeffs=state.coeffs * phases(t, e), gamma=state.gamma + t)


def eigen_residual(state: CoherentState) -> float:
    """``||a |z,gamma> - z |z,gamma>|| / |||z,gamma>||`` for the truncated vector."""
    # one padding state keeps z = 0 (a single component) a valid truncation
    dim = None if state.finite else state.dim + 1
    a, _ = build_ladder(state.spec, state.m, state.gamma, dim)
    v = state.vector(dim)
    r = a.matrix @ v - state.z * v
    return float(np.linalg.norm(r) / np.linalg.norm(v))


# ---------------------------------------------------------------------------
# displacement operator


def a_perp(spec: CaseSpec, m: int, gamma: float, dim: int) -> np.ndarray:
    """``(N / H) a^+``: sends ``|n>`` to ``(n+1)/sqrt(e_{n+1}) * phase |n+1>``."""
    if spec.is_finite:
        raise UnsupportedCase("a_perp is defined for the infinite cases only")
    _, ap = build_ladder(spec, m, gamma, dim)
    e = _energies(spec, m, dim)
    scale = np.zeros(dim)
    scale[1:] = np.arange(1, dim) / e[1:]
    return scale[:, None] * ap.matrix


def displacement_apply(spec: CaseSpec, m: int, z: complex, dim: int = 24,
                       gamma: float = 0.0, tail_tol: float = 1e-8) -> CoherentState:
    """``D(z)|0>`` from ``exp(-|z|^2/2) exp(z a_perp) exp(-conj(z) a) |0>``.

    Since ``[a, a_perp] = I`` the factorisation is exact, and the result is
    ``exp(-|z|^2/2) |z, gamma>``: the displacement carries the Gaussian factor
    and differs from the unnormalised state by that scalar only.

    Raises
    ------
    TruncationError
        If the part of ``|z, gamma>`` beyond ``dim`` exceeds ``tail_tol``
        relative to its squared norm.
    """
    if spec.is_finite:
        raise UnsupportedCase("the displacement operator is defined for the infinite cases only")
    z = complex(z)
    full = coherent_state(spec, m, z, gamma)
    if full.dim > dim:
        cut = float(np.sum(np.abs(full.coeffs[dim:]) ** 2)) + full.tail_bound
        if cut > tail_tol * full.norm_sq():
            raise TruncationError(
                f"dim={dim} leaves relative tail {cut / full.norm_sq():.2e} at |z|={abs(z)}")
    a, _ = build_ladder(spec, m, gamma, dim)
    ket0 = np.zeros(dim, dtype=complex)
    ket0[0] = 1.0
    v = scipy.linalg.expm(-np.conj(z) * a.matrix) @ ket0
    v = scipy.linalg.expm(z * a_perp(spec, m, gamma, dim)) @ v
    v *= math.exp(-0.5 * abs(z) ** 2)
    return CoherentState(spec, m, z, float(gamma), v, 0.0, False)


# ---------------------------------------------------------------------------
# uncertainty


@dataclass(frozen=True)
class Uncertainty:
    var_x: float
    var_p: float
    bound: float
    mean_x: complex
    mean_p: complex

    @property
    def product(self) -> float:
        return self.var_x * self.var_p


def uncertainty(state: CoherentState, pad: int = 2) -> Uncertainty:
    """Variances of ``X = (a^+ + a)/sqrt 2`` and ``P = i(a^+ - a)/sqrt 2``.

    The state is padded by ``pad`` zeros so that the quadratic expressions
    never touch the truncated last row.  ``bound`` is ``<i[X,P]>^2 / 4``.
    """
    dim = state.dim if state.finite else state.dim + pad
    a, ap = build_ladder(state.spec, state.m, state.gamma, None if state.finite else dim)
    A, Ap = a.matrix, ap.matrix
    X = (Ap + A) / math.sqrt(2)
    P = 1j * (Ap - A) / math.sqrt(2)
    v = state.vector(dim)
    v = v / np.linalg.norm(v)

    def expect(M):
        return np.vdot(v, M @ v)

    mx, mp = expect(X), expect(P)
    vx = (expect(X @ X) - mx ** 2).real
    vp = (expect(P @ P) - mp ** 2).real
    c = expect(1j * (X @ P - P @ X)).real
    return Uncertainty(float(vx), float(vp), 0.25 * c * c, mx, mp)


# ---------------------------------------------------------------------------
# resolution of identity


class MeasureFamily(enum.Enum):
    Gaussian = "gaussian"
    BesselK = "bessel-k"


@dataclass(frozen=True)
class RadialMeasure:
    """``d mu = mu(r) dr dtheta`` for the infinite cases.

    sigma in {1, s}: ``mu(r) = -r exp(r^2/alpha) / (pi alpha)`` (the planar
    density times the polar Jacobian).  sigma = 1 - s^2:
    ``mu(r) = 2 r^(2m-alpha) K_nu(2r) / (pi Gamma(2m-alpha))`` with
    ``nu = alpha + 1 - 2m``.  That order is the one fixed by the Mellin
    transform ``int 2 x^((a+b)/2) K_(a-b)(2 sqrt x) x^(s-1) dx = Gamma(s+a) Gamma(s+b)``
    with ``a = 1``, ``b = 2m - alpha``; the half-size order
    ``(alpha+1)/2 - m`` does not reproduce ``eps_n`` and is kept only behind
    ``halved_order=True`` so the discrepancy stays demonstrable.

    All moments up to ``reference_n`` are integrated over a common cut-off
    radius, so they share quadrature nodes and Bessel evaluations.
    """

    spec: CaseSpec
    m: int
    halved_order: bool = False
    reference_n: int = 10

    @property
    def family(self) -> MeasureFamily:
        if self.spec.kind in (CaseKind.SigmaOne, CaseKind.SigmaS):
            return MeasureFamily.Gaussian
        if self.spec.kind is CaseKind.SigmaOneMinusS2:
            return MeasureFamily.BesselK
        raise UnsupportedCase("no resolution-of-identity measure for the finite cases")

    @property
    def order(self) -> float:
        nu = float(self.spec.alpha) + 1 - 2 * self.m
        return nu / 2 if self.halved_order else nu

    @property
    def shape(self) -> float:
        """``2m - alpha`` for the Bessel family."""
        return 2 * self.m - float(self.spec.alpha)

    def density(self, r: float) -> float:
        al = float(self.spec.alpha)
        if self.family is MeasureFamily.Gaussian:
            return -r * math.exp(r * r / al) / (math.pi * al)
        if r == 0:
            return 0.0
        c = self.shape
        return 2 * r ** c * bessel_k(self.order, 2 * r) / (math.pi * math.gamma(c))

    def radial_moment_exact(self, n: float) -> float:
        """``2 pi int r^(2n) mu(r) dr`` from the Gamma-function identities (any real ``n >= 0``)."""
        al = float(self.spec.alpha)
        if self.family is MeasureFamily.Gaussian:
            return math.exp(math.lgamma(n + 1) + n * math.log(-al))
        c = self.shape
        return math.exp(math.lgamma(n + 1) + math.lgamma(n + c) - math.lgamma(c))

    def tail(self, power: float, R: float) -> float:
        """Bound on ``2 pi int_R^inf r^power mu(r) dr``."""
        al = float(self.spec.alpha)
        if self.family is MeasureFamily.Gaussian:
            # -2/alpha int r^(p+1) e^(r^2/alpha) = |alpha|^(p/2) Gamma(p/2+1, R^2/|alpha|)
            s = power / 2 + 1
            return (-al) ** (power / 2) * math.gamma(s) * scipy.special.gammaincc(s, R * R / -al)
        # K_nu(x) <= C x^(-1/2) e^(-x) for x >= 2
        nu = self.order
        C = max(math.sqrt(math.pi / 2), bessel_k(nu, 2.0) * math.sqrt(2.0) * math.exp(2.0))
        c = self.shape
        s = power + c + 0.5
        integral = math.gamma(s) * scipy.special.gammaincc(s, 2 * R) / 2 ** s
        return 4 * C / (math.sqrt(2.0) * math.gamma(c)) * integral

    def radius(self, power: float, rel_tol: float = 1e-13) -> float:
        """Cut-off ``R >= 1`` on a grid of 8 so that the tail is below ``rel_tol``.

        Rounding to the grid lets moments of different order share nodes.
        """
        scale = self.radial_moment_exact(power / 2)
        R = 8.0
        while self.tail(power, R) > rel_tol * scale:
            R += 8.0
            if R > 340.0:
                raise IntegrationFailure("radial cut-off exceeds the Bessel argument range")
        return R

    def radial_integral(self, power: float, rel_tol: float = 1e-12) -> float:
        """``2 pi int_0^R r^power mu(r) dr`` with ``R`` from :meth:`radius`."""
        R = max(self.radius(power, rel_tol * 1e-1),
                self.radius(2 * self.reference_n, rel_tol * 1e-1))
        al = float(self.spec.alpha)
        if self.family is MeasureFamily.Gaussian:
            res = tanh_sinh(lambda r, dl, dr: math.exp(r * r / al), 0.0, R,
                            left_exp=power + 1, rel_tol=rel_tol, abs_tol=0.0)
            return -2.0 / al * res.value
        c, nu = self.shape, self.order
        p = power + c
        r0 = self.inner_radius(p, rel_tol * 1e-2 * self.radial_moment_exact(power / 2))
        res = tanh_sinh(lambda r, dl, dr: r ** p * bessel_k(nu, 2 * r), r0, R,
                        rel_tol=rel_tol, abs_tol=0.0)
        return 4.0 / math.gamma(c) * res.value

    def inner_radius(self, p: float, tol: float) -> float:
        """``r0`` with ``4 / Gamma(c) int_0^r0 r^p K_nu(2r) dr <= tol``.

        ``x^mu K_mu(x)`` decreases from ``Gamma(mu) 2^(mu-1)`` and ``K`` grows
        with its order, so ``K_nu(x) <= Gamma(mu) 2^(mu-1) x^(-mu)`` with
        ``mu = max(|nu|, 1/2)``; the excluded piece is then a power of ``r0``.
        """
        mu = max(abs(self.order), 0.5)
        e = p - mu + 1
        const = 4.0 / math.gamma(self.shape) * math.gamma(mu) / 2 / e
        return min(1.0, (tol / const) ** (1.0 / e))


def measure_moment(spec: CaseSpec, m: int, n: int, rel_tol: float = 1e-8,
                   halved_order: bool = False) -> float:
    """``2 pi int r^(2n) mu(r) dr``; equals ``eps_n`` when the measure resolves the identity.

    Raises
    ------
    IntegrationFailure
        If the integrator cannot reach ``rel_tol`` (tightened internally by
        a factor 1e-4).
    """
    return _measure_moment(spec, m, n, rel_tol, halved_order)


@lru_cache(maxsize=1024)
def _measure_moment(spec: CaseSpec, m: int, n: int, rel_tol: float, halved: bool) -> float:
    meas = RadialMeasure(spec, m, halved_order=halved)
    return meas.radial_integral(2 * n, rel_tol=min(rel_tol * 1e-4, 1e-10))


def measure_matrix_element(spec: CaseSpec, m: int, n: int, k: int, gamma: float = 0.0,
                           angles: int = 64) -> complex:
    """``<n| int d mu |z,gamma><z,gamma| |k>`` by radial quadrature and an angular trapezoid rule.

    The trapezoid rule with ``angles > |n - k|`` points integrates
    ``exp(i (n-k) theta)`` exactly, so off-diagonal elements vanish up to
    rounding and diagonal ones equal one.
    """
    meas = RadialMeasure(spec, m)
    theta = 2 * np.pi * np.arange(angles) / angles
    ang = np.mean(np.exp(1j * (n - k) * theta))  # (1/2pi) int d theta
    radial = meas.radial_integral(n + k)
    e = _energies(spec, m, max(n, k) + 1)
    phase = np.exp(-1j * gamma * (e[n] - e[k]))
    return complex(radial * ang * phase / math.sqrt(epsilon(spec, m, n) * epsilon(spec, m, k)))


# ---------------------------------------------------------------------------
# finite-case overcompleteness


def coefficient_matrix(spec: CaseSpec, m: int, zs, gamma: float = 0.0) -> np.ndarray:
    return np.array([coherent_state(spec, m, z, gamma).coeffs for z in zs])


def overcomplete_rank(spec: CaseSpec, m: int, zs, gamma: float = 0.0,
                      rtol: float = 1e-8) -> int:
    """Numerical rank of the matrix whose rows are ``|z_j, gamma>``."""
    if not spec.is_finite:
        raise UnsupportedCase("rank check is meant for the finite cases")
    M = coefficient_matrix(spec, m, zs, gamma)
    sv = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(sv > rtol * sv[0]))
