"""Weighted scalar product of polynomials via the moments of rho.

``<f, g> = int_a^b f(s) g(s) rho(s) ds`` is expanded bilinearly into the
moments ``m_k = int s^k rho``; no pointwise quadrature of products is done.
Moments come from closed forms where the case has one and otherwise from a
double-exponential integrator on a transformed finite or half-line integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .cases import CaseKind, CaseSpec, moment_order_limit
from .errors import DivergentMoment, IntegrationFailure
from .polynomial import Polynomial

HALF_PI = 0.5 * math.pi

# ---------------------------------------------------------------------------
# double-exponential integrators


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evaluations: int
    levels: int


def _refine(term: Callable[[float], float], t_max: float, rel_tol: float,
            abs_tol: float, max_evals: int, min_levels: int = 3) -> QuadResult:
    """Trapezoidal sums of a transformed integrand, halving the step each level.

    Convergence is declared once successive levels agree to ``rel_tol`` of the
    estimate or, for integrals that cancel to (near) zero, to a few ulps of
    the integral of the absolute value.
    """
    h = 0.5
    n = int(t_max / h)
    vals = [term(0.0)]
    for k in range(1, n + 1):
        vals += (term(k * h), term(-k * h))
    total, total_abs = math.fsum(vals), math.fsum(map(abs, vals))
    evals = len(vals)
    estimate = h * total
    level = 0
    err = math.inf
    while evals < max_evals:
        level += 1
        h /= 2
        n = int(t_max / h)
        vals = []
        for k in range(1, n + 1, 2):
            vals += (term(k * h), term(-k * h))
        evals += len(vals)
        total += math.fsum(vals)
        total_abs += math.fsum(map(abs, vals))
        prev, estimate = estimate, h * total
        err = abs(estimate - prev)
        floor = 64 * 2.2e-16 * h * total_abs
        if level >= min_levels and err <= max(abs_tol, rel_tol * abs(estimate), floor):
            return QuadResult(estimate, err, evals, level)
    raise IntegrationFailure(
        f"double-exponential rule did not converge: estimate={estimate!r}, "
        f"last difference={err:.3e}, evaluations={evals}"
    )


def tanh_sinh(f: Callable[[float, float, float], float], a: float, b: float,
              left_exp: float = 0.0, right_exp: float = 0.0,
              rel_tol: float = 1e-12, abs_tol: float = 1e-12,
              max_evals: int = 2 ** 20) -> QuadResult:
    """Integrate ``(x-a)**left_exp * (b-x)**right_exp * f(x, x-a, b-x)`` over [a, b].

    ``f`` receives the node together with its distances to both endpoints,
    computed without cancellation, so integrands with algebraic endpoint
    behaviour stay accurate arbitrarily close to the ends.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise ValueError("tanh_sinh needs a finite interval a < b")
    hw = 0.5 * (b - a)

    def term(t: float) -> float:
        u = HALF_PI * math.sinh(t)
        if abs(u) > 350.0:
            return 0.0
        e = math.exp(-2.0 * abs(u))
        near = 2.0 * hw * e / (1.0 + e)
        far = 2.0 * hw / (1.0 + e)
        if u < 0:
            x, dl, dr = a + near, near, far
        else:
            x, dl, dr = b - near, far, near
        if dl == 0.0 or dr == 0.0:
            return 0.0
        w = hw * HALF_PI * math.cosh(t) * 4.0 * e / (1.0 + e) ** 2
        val = f(x, dl, dr)
        if val == 0.0:
            return 0.0
        return w * val * dl ** left_exp * dr ** right_exp

    return _refine(term, 6.0, rel_tol, abs_tol, max_evals)


def exp_sinh(f: Callable[[float], float], a: float = 0.0, rel_tol: float = 1e-12,
             abs_tol: float = 1e-12, max_evals: int = 2 ** 20) -> QuadResult:
    """Integrate ``f(x - a)`` over ``[a, inf)``; ``f`` receives the offset ``x - a``.

    Suited to integrands with an algebraic singularity at ``a`` and
    exponential decay at infinity.
    """

    def term(t: float) -> float:
        u = HALF_PI * math.sinh(t)
        if abs(u) > 700.0:
            return 0.0
        y = math.exp(u)
        val = f(y)
        if val == 0.0:
            return 0.0
        return HALF_PI * math.cosh(t) * y * val

    return _refine(term, 6.5, rel_tol, abs_tol, max_evals)


def sinh_sinh(f: Callable[[float], float], center: float = 0.0, scale: float = 1.0,
              rel_tol: float = 1e-12, abs_tol: float = 1e-12,
              max_evals: int = 2 ** 20) -> QuadResult:
    """Integrate ``f`` over the real line after ``x = center + scale*sinh(pi/2 sinh t)``."""

    def term(t: float) -> float:
        u = HALF_PI * math.sinh(t)
        if abs(u) > 700.0:
            return 0.0
        y = scale * math.sinh(u)
        val = f(center + y)
        if val == 0.0:
            return 0.0
        return scale * HALF_PI * math.cosh(t) * math.cosh(u) * val

    return _refine(term, 6.5, rel_tol, abs_tol, max_evals)


# ---------------------------------------------------------------------------
# moments


def check_moment(spec: CaseSpec, k: int) -> None:
    if k < 0:
        raise ValueError("moment order must be non-negative")
    bound = moment_order_limit(spec)
    if bound is not None and not k < bound:
        raise DivergentMoment(
            f"int s^{k} rho diverges for {spec.label()} (need k < 1 - alpha = {bound:g})"
        )


def _beta(x: float, y: float) -> float:
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def pearson_moments(spec: CaseSpec, m0: float, count: int) -> list[float]:
    """Moments ``m_0 .. m_{count-1}`` from ``m_0`` via the Pearson recursion.

    Integrating ``s^k (sigma rho)' = s^k tau rho`` by parts gives
    ``(alpha + k a2) m_{k+1} = -(beta + k a1) m_k - k a0 m_{k-1}``.
    """
    a2, a1, a0 = spec.kind.sigma_coeffs
    al, be = float(spec.alpha), float(spec.beta)
    ms = [m0]
    for k in range(count - 1):
        prev = ms[k - 1] if k > 0 else 0.0
        ms.append(-math.fsum(((be + k * a1) * ms[k], k * a0 * prev)) / (al + k * a2))
    return ms


def moment_closed(spec: CaseSpec, k: int) -> float | None:
    """Closed-form moment, or ``None`` for the cases that have none."""
    check_moment(spec, k)
    al, be = float(spec.alpha), float(spec.beta)
    kind = spec.kind
    if kind is CaseKind.SigmaS:
        return math.exp(math.lgamma(k + be) - (k + be) * math.log(-al))
    if kind is CaseKind.SigmaS2:
        return math.exp(math.lgamma(1 - k - al) + (k + al - 1) * math.log(be))
    if kind is CaseKind.SigmaOne:
        # Gaussian with mean -beta/alpha and variance -1/alpha
        mean, var = -be / al, -1.0 / al
        ms = [math.sqrt(2 * math.pi * var) * math.exp(-be * be / (2 * al))]
        for j in range(k):
            prev = ms[j - 1] if j > 0 else 0.0
            ms.append(math.fsum((mean * ms[j], j * var * prev)))
        return ms[k]
    if kind is CaseKind.SigmaOneMinusS2:
        p, q = -(al - be) / 2 - 1, -(al + be) / 2 - 1
        m0 = 2.0 ** (p + q + 1) * _beta(p + 1, q + 1)
        return pearson_moments(spec, m0, k + 1)[k]
    return None


def moment_adaptive(spec: CaseSpec, k: int, rel_tol: float = 1e-12,
                    abs_tol: float = 0.0) -> float:
    """Moment by double-exponential quadrature on a smooth transformed integral."""
    check_moment(spec, k)
    al, be = float(spec.alpha), float(spec.beta)
    kind = spec.kind
    opts = dict(rel_tol=rel_tol, abs_tol=abs_tol)

    if kind is CaseKind.SigmaOne:
        mean, sd = -be / al, math.sqrt(-1.0 / al)
        shift = -be * be / (2 * al)

        def g(x: float) -> float:
            y = x - mean
            if abs(y) > 60 * sd:
                return 0.0
            return x ** k * math.exp(0.5 * al * y * y + shift)

        return sinh_sinh(g, center=mean, scale=sd, **opts).value

    if kind is CaseKind.SigmaS:
        def g(x: float) -> float:
            return math.exp((k + be - 1) * math.log(x) + al * x)

        return exp_sinh(g, **opts).value

    if kind is CaseKind.SigmaS2:
        # u = 1/s turns s^(k+alpha-2) e^(-beta/s) ds into u^(-k-alpha) e^(-beta u) du
        def g(u: float) -> float:
            return math.exp((-k - al) * math.log(u) - be * u)

        return exp_sinh(g, **opts).value

    if kind is CaseKind.SigmaOneMinusS2:
        p, q = -(al - be) / 2 - 1, -(al + be) / 2 - 1
        return tanh_sinh(lambda x, dl, dr: x ** k, -1.0, 1.0, p, q, **opts).value

    if kind is CaseKind.SigmaS2Minus1:
        # u = 1/s maps (1, inf) to (0, 1): u^(-k-alpha) (1+u)^p (1-u)^q
        p, q = (al - be) / 2 - 1, (al + be) / 2 - 1
        return tanh_sinh(lambda u, dl, dr: (1 + u) ** p, 0.0, 1.0, -k - al, q, **opts).value

    # s = tan(theta): cos^(-alpha-k) sin^k e^(beta theta) on (-pi/2, pi/2)
    c = -al - k

    def g(th: float, dl: float, dr: float) -> float:
        d = min(dl, dr)
        smooth = math.sin(d) / (dl * dr)  # cos(theta)/(dl*dr), accurate near both ends
        return smooth ** c * math.sin(th) ** k * math.exp(be * th)

    return tanh_sinh(g, -HALF_PI, HALF_PI, c, c, **opts).value


@lru_cache(maxsize=4096)
def _moment(spec: CaseSpec, k: int) -> float:
    value = moment_closed(spec, k)
    if value is None:
        value = moment_adaptive(spec, k)
    return value


def moment(spec: CaseSpec, k: int) -> float:
    """``int_a^b s^k rho(s) ds``; raises :class:`DivergentMoment` if it diverges."""
    check_moment(spec, k)
    return _moment(spec, k)


@dataclass(frozen=True)
class MomentTable:
    spec: CaseSpec
    moments: tuple[float, ...]

    @property
    def k_max(self) -> int:
        return len(self.moments) - 1

    def __getitem__(self, k: int) -> float:
        return self.moments[k]


def moment_table(spec: CaseSpec, k_max: int) -> MomentTable:
    return MomentTable(spec, tuple(moment(spec, k) for k in range(k_max + 1)))


# ---------------------------------------------------------------------------
# scalar product


def _as_float_coeffs(p: Polynomial) -> list[float]:
    return [float(c) for c in p.coeffs]


def integrate_poly(spec: CaseSpec, p: Polynomial) -> float:
    """``int p(s) rho(s) ds``."""
    cs = _as_float_coeffs(p)
    return math.fsum(c * moment(spec, k) for k, c in enumerate(cs) if c != 0.0)


def inner_product(spec: CaseSpec, f: Polynomial, g: Polynomial,
                  sigma_power: int = 0) -> float:
    """``<f, g>`` with weight ``sigma**sigma_power * rho`` (real polynomials).

    The product is never formed: every term ``f_i g_j m_(i+j)`` is summed with
    :func:`math.fsum`, so the result is as accurate as the moments allow.
    """
    if sigma_power:
        f = f * spec.sigma_poly ** sigma_power
    fc, gc = _as_float_coeffs(f), _as_float_coeffs(g)
    if not fc or not gc:
        return 0.0
    check_moment(spec, len(fc) + len(gc) - 2)
    terms = []
    for i, a in enumerate(fc):
        if a == 0.0:
            continue
        for j, b in enumerate(gc):
            if b != 0.0:
                terms.append(a * b * moment(spec, i + j))
    return math.fsum(terms)


def norm(spec: CaseSpec, f: Polynomial, sigma_power: int = 0) -> float:
    return math.sqrt(inner_product(spec, f, f, sigma_power))
