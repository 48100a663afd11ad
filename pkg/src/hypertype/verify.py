"""Invariant checks grouped into suites, as run by ``hypertype verify``.

Every check returns the largest deviation it measured; it passes when that
deviation is at most its tolerance.  Checks whose outcome is a count of
exact mismatches use tolerance 0.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np
from scipy import integrate

from . import assocfun as af
from . import bargmann as bg
from . import coherent as co
from . import ladder as ld
from .cases import CaseKind, CaseSpec, interior_points, lambda_l, max_degree, validate, weight
from .errors import ConstraintViolation
from .polyengine import (classical_ref, classical_ref_complex, imaginary_residue, ode_residual,
                         phi, rodrigues)
from .polynomial import Polynomial, proportionality_spread, relative_coeff_error
from .quadrature import inner_product, moment, moment_adaptive, moment_closed, pearson_moments
from .special import bessel, hyp0f1

DEFAULT_GRID = (
    ("1", -2, 0),
    ("s", -1, 2),
    ("1-s2", -3, 0),
    ("s2-1", -4, 5),
    ("s2", -9, 1),
    ("s2+1", -4, 1),
)

SUITES = ("core", "poly", "assoc", "ladder", "coherent", "bargmann")


@dataclass
class Context:
    grid: tuple = DEFAULT_GRID
    zmax: float = 3.0
    seed: int = 42

    def specs(self, exact: bool = False) -> list[CaseSpec]:
        return [validate(k, a, b, exact=exact) for k, a, b in self.grid]

    def infinite(self) -> list[CaseSpec]:
        return [s for s in self.specs() if not s.is_finite]

    def finite(self) -> list[CaseSpec]:
        return [s for s in self.specs() if s.is_finite]

    def z_samples(self) -> list[complex]:
        r = self.zmax
        return [0.0, 0.5, 1 + 1j, 2j, complex(r / math.sqrt(2), -r / math.sqrt(2)), -r]


@dataclass(frozen=True)
class CheckResult:
    id: str
    passed: bool
    error: float
    tolerance: float
    worst: str = ""
    seconds: float = 0.0


@dataclass
class RunReport:
    suite: str
    results: list[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def worst_offender(self) -> CheckResult | None:
        failed = [r for r in self.results if not r.passed]
        if not failed:
            return None
        return max(failed, key=lambda r: r.error / r.tolerance if r.tolerance > 0 else math.inf)

    def as_dict(self) -> dict:
        return {
            "schema_version": 1,
            "suite": self.suite,
            "passed": self.passed,
            "wall_time": round(self.wall_time, 3),
            "checks": [
                {"id": r.id, "status": "pass" if r.passed else "fail", "error": r.error,
                 "tolerance": r.tolerance, "worst": r.worst}
                for r in self.results
            ],
        }


class _Tracker:
    """Running maximum of a deviation together with where it occurred."""

    def __init__(self) -> None:
        self.value = 0.0
        self.where = ""

    def update(self, value: float, where: str) -> None:
        value = float(value)
        if math.isnan(value):
            value = math.inf
        if value > self.value or not self.where:
            self.value, self.where = value, where


def _tag(spec: CaseSpec, **extra) -> str:
    s = f"({spec.kind.value}, {spec.alpha}, {spec.beta})"
    if extra:
        s += " " + " ".join(f"{k}={v}" for k, v in extra.items())
    return s


def _lmax(spec: CaseSpec, cap: int) -> int:
    L = max_degree(spec)
    return cap if L is None else min(cap, L)


# ---------------------------------------------------------------------------
# core


def check_constraints(ctx: Context, t: _Tracker) -> None:
    bad_params = {
        CaseKind.SigmaOne: (1.0, 0.0),
        CaseKind.SigmaS: (-1.0, 0.0),
        CaseKind.SigmaOneMinusS2: (1.0, -3.0),
        CaseKind.SigmaS2Minus1: (-4.0, 2.0),
        CaseKind.SigmaS2: (-9.0, -1.0),
        CaseKind.SigmaS2Plus1: (0.5, 1.0),
    }
    for spec in ctx.specs():
        sigma_ok = all(spec.sigma(s) > 0 for s in interior_points(spec, 50))
        t.update(0.0 if sigma_ok and spec.interval == spec.kind.interval else 1.0, _tag(spec))
        try:
            validate(spec.kind, *bad_params[spec.kind])
            t.update(1.0, f"{spec.kind.value} accepted invalid parameters")
        except ConstraintViolation:
            pass


def check_pearson(ctx: Context, t: _Tracker) -> None:
    # 8th-order central difference of sigma*rho
    coef = [4 / 5, -1 / 5, 4 / 105, -1 / 280]
    for spec in ctx.specs():
        pts = interior_points(spec, 200)
        a, b = spec.interval
        for s in pts:
            dist = min(s - a, b - s)
            h = 1e-3 * min(max(1.0, abs(s)), dist)
            g = lambda x: spec.sigma(x) * weight(spec, x)
            d = sum(c * (g(s + (k + 1) * h) - g(s - (k + 1) * h)) for k, c in enumerate(coef)) / h
            ref = float(spec.tau(s)) * weight(spec, s)
            scale = max(abs(ref), abs(d), 1e-300)
            t.update(abs(d - ref) / scale, _tag(spec, s=f"{s:.4g}"))


def _boundary_sequence(spec: CaseSpec, end: float, toward_left: bool) -> list:
    # finite ends are approached in mpmath so distances below the double
    # spacing near the endpoint stay representable
    if math.isfinite(end):
        e = mpmath.mpf(end)
        return [e + d if toward_left else e - d for d in (mpmath.mpf(2) ** -k for k in range(4, 400))]
    s0 = 10.0 * (1 + abs(float(spec.beta)))
    return [(s0 if end > 0 else -s0) * 1.5 ** k for k in range(0, 400)]


def check_boundary_decay(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        g = lambda x: spec.sigma(x) * weight(spec, x)
        peak = max(g(s) for s in interior_points(spec, 200))
        a, b = spec.interval
        for end, left in ((a, True), (b, False)):
            vals = []
            with mpmath.workdps(150):
                for s in _boundary_sequence(spec, end, left):
                    vals.append(float(g(s)))
                    if vals[-1] < 1e-10 * peak:
                        break
            monotone = all(v2 <= v1 for v1, v2 in zip(vals, vals[1:]))
            # a failure scores above the 1e-8 tolerance
            t.update(vals[-1] / peak if monotone else 1.0, _tag(spec, end=end))


def check_lambda_monotone(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        top = _lmax(spec, 30)
        lam = [lambda_l(spec, l) for l in range(top + 1)]
        bad = sum(1 for x, y in zip(lam, lam[1:]) if not y > x)
        t.update(bad, _tag(spec))


# ---------------------------------------------------------------------------
# poly


def check_ode_residual(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        scale_ab = max(1.0, abs(spec.alpha), abs(spec.beta)) ** 2
        for l in range(_lmax(spec, 10) + 1):
            p = phi(spec, l)
            r = ode_residual(spec, p, lambda_l(spec, l))
            t.update(r.max_abs() / (p.max_abs() * scale_ab), _tag(spec, l=l))


def check_rodrigues_exact(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs(exact=True):
        for l in range(_lmax(spec, 10) + 1):
            t.update(0 if rodrigues(spec, l) == phi(spec, l) else 1, _tag(spec, l=l))


def check_rodrigues_float(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for l in range(_lmax(spec, 10) + 1):
            t.update(relative_coeff_error(rodrigues(spec, l), phi(spec, l)), _tag(spec, l=l))


def check_classical(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for l in range(_lmax(spec, 10) + 1):
            t.update(proportionality_spread(phi(spec, l).to_float(), classical_ref(spec, l)),
                     _tag(spec, l=l))


def check_degree(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for l in range(_lmax(spec, 10) + 1):
            t.update(0 if phi(spec, l).degree == l else 1, _tag(spec, l=l))


def check_real_valued(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        if spec.kind is CaseKind.SigmaS2Plus1:
            for l in range(_lmax(spec, 12) + 1):
                t.update(imaginary_residue(classical_ref_complex(spec, l)), _tag(spec, l=l))


def check_orthogonality(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        top = _lmax(spec, 8)
        ps = [phi(spec, l) for l in range(top + 1)]
        norms = [math.sqrt(inner_product(spec, p, p)) for p in ps]
        for i in range(top + 1):
            for j in range(i):
                g = inner_product(spec, ps[i], ps[j])
                t.update(abs(g) / (norms[i] * norms[j]), _tag(spec, l=i, k=j))


def check_positivity(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for l in range(_lmax(spec, 8) + 1):
            p = phi(spec, l)
            t.update(0 if inner_product(spec, p, p) > 0 else 1, _tag(spec, l=l))


def check_moments(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        limit = 2 * _lmax(spec, 8)
        for k in range(limit + 1):
            closed = moment_closed(spec, k)
            if closed is None:
                continue
            adaptive = moment_adaptive(spec, k)
            # odd moments of symmetric weights vanish; scale those by m_0
            scale = abs(closed) if closed else moment(spec, 0)
            t.update(abs(adaptive - closed) / scale, _tag(spec, k=k))


def check_pearson_moments(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        count = 2 * _lmax(spec, 8) + 1
        rec = pearson_moments(spec, moment(spec, 0), count)
        ref = [moment(spec, k) for k in range(count)]
        scale = max(abs(x) for x in ref)
        for k, (x, y) in enumerate(zip(rec, ref)):
            t.update(abs(x - y) / max(abs(y), 1e-12 * scale), _tag(spec, k=k))


# ---------------------------------------------------------------------------
# assoc


def _pairs(spec: CaseSpec, cap: int):
    for l in range(_lmax(spec, cap) + 1):
        for m in range(l + 1):
            yield l, m


def check_ladder_exact(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs(exact=True):
        for l, m in _pairs(spec, 8):
            f = af.assoc(spec, l, m)
            down = af.apply_A(spec, m, f)
            ok = down.is_zero() if l == m else down == af.assoc(spec, l, m + 1)
            if l > m:
                up = af.apply_Aplus(spec, m, af.assoc(spec, l, m + 1))
                ok = ok and up == f * (lambda_l(spec, l) - lambda_l(spec, m))
            t.update(0 if ok else 1, _tag(spec, l=l, m=m))


def check_ladder_float(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for l, m in _pairs(spec, 8):
            if l == m:
                continue
            f = af.assoc(spec, l, m)
            up = af.apply_Aplus(spec, m, af.assoc(spec, l, m + 1))
            ref = f * (lambda_l(spec, l) - lambda_l(spec, m))
            t.update(relative_coeff_error(up.poly, ref.poly), _tag(spec, l=l, m=m))


def check_chain(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs(exact=True):
        for l, m in _pairs(spec, 8):
            t.update(0 if af.chain_from_top(spec, l, m) == af.assoc(spec, l, m) else 1,
                     _tag(spec, l=l, m=m))


def _monomial_basis(m: int, deg: int = 8):
    for d in range(deg + 1):
        yield af.AssocFunction(m, Polynomial.monomial(d))


def check_factorization(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for m in range(1, 4):
            for f in _monomial_basis(m):
                lhs = af.apply_H(spec, m, f)
                rhs = af.apply_H_partner(spec, m - 1, f)
                scale = max(lhs.poly.max_abs(), 1.0)
                t.update((lhs - rhs).poly.max_abs() / scale, _tag(spec, m=m, deg=f.poly.degree))


def check_intertwining(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for m in range(0, 3):
            for g in _monomial_basis(m + 1):
                lhs = af.apply_H(spec, m, af.apply_Aplus(spec, m, g))
                rhs = af.apply_Aplus(spec, m, af.apply_H(spec, m + 1, g))
                scale = max(lhs.poly.max_abs(), 1.0)
                t.update((lhs - rhs).poly.max_abs() / scale, _tag(spec, m=m, deg=g.poly.degree))
            for f in _monomial_basis(m):
                lhs = af.apply_A(spec, m, af.apply_H(spec, m, f))
                rhs = af.apply_H(spec, m + 1, af.apply_A(spec, m, f))
                scale = max(lhs.poly.max_abs(), 1.0)
                t.update((lhs - rhs).poly.max_abs() / scale, _tag(spec, m=m, deg=f.poly.degree))


def check_eigen(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for l, m in _pairs(spec, 8):
            f = af.assoc(spec, l, m)
            r = af.apply_H(spec, m, f) - f * lambda_l(spec, l)
            scale = f.poly.max_abs() * max(1.0, abs(float(lambda_l(spec, l))))
            t.update(r.poly.max_abs() / scale, _tag(spec, l=l, m=m))


def check_orthogonality_m(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        top = _lmax(spec, 8)
        for m in range(top + 1):
            fs = {l: af.assoc(spec, l, m) for l in range(m, top + 1)}
            for l in fs:
                for k in fs:
                    if k < l:
                        g = af.assoc_inner(spec, fs[l], fs[k])
                        t.update(abs(g) / (af.norm(spec, l, m) * af.norm(spec, k, m)),
                                 _tag(spec, l=l, k=k, m=m))


def check_norm_recursion(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for l, m in _pairs(spec, 8):
            a, b = af.norm(spec, l, m), af.norm_direct(spec, l, m)
            t.update(abs(a - b) / b, _tag(spec, l=l, m=m))


def check_pointwise_H(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        pts = interior_points(spec, 50)
        for l, m in _pairs(spec, 5):
            f = af.assoc(spec, l, m)
            hf = af.apply_H(spec, m, f)
            for s in pts:
                raw = af.H_pointwise(spec, m, f, s)
                fact = hf(spec, s)
                scale = max(abs(fact), abs(float(lambda_l(spec, l))) * abs(f(spec, s)), 1e-300)
                t.update(abs(raw - fact) / scale, _tag(spec, l=l, m=m, s=f"{s:.3g}"))


# ---------------------------------------------------------------------------
# ladder


def _ladder_ms(spec: CaseSpec) -> range:
    L = max_degree(spec)
    return range(3) if L is None else range(min(2, L) + 1)


def check_energy(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for m in _ladder_ms(spec):
            top = ld.level_count(spec, m)
            for n in range((top if top is not None else 20) + 1):
                e1, e2 = ld.energy(spec, m, n), ld.energy_formula(spec, m, n)
                t.update(abs(float(e1 - e2)), _tag(spec, m=m, n=n))


def check_adjoint_and_diagonal(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for m in _ladder_ms(spec):
            a, ap = ld.build_ladder(spec, m, 0.7, None if spec.is_finite else 24)
            A, Ap = a.matrix, ap.matrix
            d = a.dim
            t.update(np.max(np.abs(Ap - A.conj().T)), _tag(spec, m=m, what="adjoint"))
            w = np.array([float(ld.ladder_weight(spec, m, n)) for n in range(d + 1)])
            t.update(np.max(np.abs(Ap @ A - np.diag(w[:d]))), _tag(spec, m=m, what="a+a"))
            inner = d if spec.is_finite else d - 1
            t.update(np.max(np.abs((A @ Ap - np.diag(w[1:d + 1]))[:inner, :inner])),
                     _tag(spec, m=m, what="aa+"))
            t.update(abs(A[:, 0]).max(), _tag(spec, m=m, what="a|0>"))


def _algebra_check(kind: ld.AlgebraKind):
    def run(ctx: Context, t: _Tracker) -> None:
        for spec in ctx.specs():
            if ld.classify_algebra(spec) is not kind:
                continue
            for m in _ladder_ms(spec):
                for gamma in (0.0, 0.7):
                    for key, val in ld.algebra_residuals(spec, m, gamma).items():
                        t.update(val, _tag(spec, m=m, gamma=gamma, rel=key))
    return run


def check_classification(ctx: Context, t: _Tracker) -> None:
    expect = {CaseKind.SigmaOne: ld.AlgebraKind.HeisenbergWeyl,
              CaseKind.SigmaS: ld.AlgebraKind.HeisenbergWeyl,
              CaseKind.SigmaOneMinusS2: ld.AlgebraKind.SU11}
    for spec in ctx.specs():
        want = expect.get(spec.kind, ld.AlgebraKind.SU2)
        t.update(0 if ld.classify_algebra(spec) is want else 1, _tag(spec))


def check_phase_covariance(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for m in _ladder_ms(spec):
            dim = None if spec.is_finite else 24
            for gamma in (0.3, 1.7):
                a_g, _ = ld.build_ladder(spec, m, gamma, dim)
                a_0, _ = ld.build_ladder(spec, m, 0.0, dim)
                W = ld.phase_matrix(spec, m, gamma, a_g.dim)
                lhs = np.linalg.inv(W) @ a_g.matrix @ W
                scale = max(1.0, np.max(np.abs(a_0.matrix)))
                t.update(np.max(np.abs(lhs - a_0.matrix)) / scale, _tag(spec, m=m, gamma=gamma))


# ---------------------------------------------------------------------------
# coherent


def _coherent_ms(spec: CaseSpec) -> range:
    return _ladder_ms(spec)


def check_cs_eigen(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        for m in _coherent_ms(spec):
            for z in ctx.z_samples():
                st = co.coherent_state(spec, m, z, 0.7)
                t.update(co.eigen_residual(st), _tag(spec, m=m, z=z))


def check_cs_overlap(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs():
        for m in _coherent_ms(spec):
            for z in ctx.z_samples():
                st = co.coherent_state(spec, m, z, 0.3)
                closed = co.overlap_closed(spec, m, z)
                t.update(abs(co.overlap(st) - closed) / closed, _tag(spec, m=m, z=z))


def check_cs_truncation(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        for m in _coherent_ms(spec):
            for z in ctx.z_samples():
                st = co.coherent_state(spec, m, z)
                t.update(st.tail_bound / st.norm_sq() * 1e-2, _tag(spec, m=m, z=z))


def check_cs_temporal(ctx: Context, t: _Tracker) -> None:
    # dyadic gamma and t keep gamma + t exact
    for spec in ctx.specs():
        for m in _coherent_ms(spec):
            for z in ctx.z_samples()[1:]:
                for gamma, dt in ((0.0, 1.0), (0.75, 0.375), (0.5, -2.25)):
                    a = co.evolve(co.coherent_state(spec, m, z, gamma), dt).coeffs
                    b = co.coherent_state(spec, m, z, gamma + dt).coeffs
                    t.update(np.max(np.abs(a - b) / np.abs(b)), _tag(spec, m=m, z=z, gamma=gamma))


def check_cs_measure(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        for m in range(2):
            for n in range(11):
                got = co.measure_moment(spec, m, n)
                want = co.epsilon(spec, m, n)
                t.update(abs(got - want) / want, _tag(spec, m=m, n=n))


def check_cs_offdiag(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        val = co.measure_matrix_element(spec, 0, 2, 5, gamma=0.4)
        t.update(abs(val), _tag(spec, n=2, k=5))
        val = co.measure_matrix_element(spec, 0, 3, 3, gamma=0.4)
        t.update(abs(val - 1), _tag(spec, n=3, k=3))


def bessel_oracle(nu: float, x: float) -> float:
    """``K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt`` by adaptive quadrature."""
    T = math.acosh(1 + (750 + 40 * abs(nu)) / x)
    f = lambda s: math.exp(-x * (math.cosh(s) - 1) + abs(nu) * s) * (1 + math.exp(-2 * abs(nu) * s)) / 2
    val, _ = integrate.quad(f, 0, T, epsabs=0, epsrel=1e-13, limit=500)
    return math.exp(-x) * val


def bessel_orders(ctx: Context) -> list[float]:
    orders = set()
    for spec in ctx.infinite():
        if spec.kind is CaseKind.SigmaOneMinusS2:
            for m in range(3):
                orders.add(co.RadialMeasure(spec, m).order)
    return sorted(orders) + [0.5, -0.5]


def check_bessel(ctx: Context, t: _Tracker) -> None:
    for nu in bessel_orders(ctx):
        for x in (0.01, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0):
            k = bessel(nu, x)[1]
            ref = bessel_oracle(nu, x)
            t.update(abs(k - ref) / ref, f"nu={nu} x={x}")
            t.update(abs(k - bessel(-nu, x)[1]) / ref, f"nu={nu} x={x} symmetry")


def check_hyp0f1(ctx: Context, t: _Tracker) -> None:
    for nu in (0.5, 1.0, 2.0, 3.5):
        for x in (0.5, 2.0, 6.0):
            lhs = hyp0f1(nu + 1, x * x / 4)
            rhs = math.gamma(nu + 1) * (x / 2) ** -nu * bessel(nu, x)[0]
            t.update(abs(lhs - rhs) / rhs, f"nu={nu} x={x}")


def check_cs_displacement(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        for m in _coherent_ms(spec):
            for z in (0.0, 0.5, 1 + 1j, 2j, -2.0):
                D = co.displacement_apply(spec, m, z, 24, 0.7)
                c = co.coherent_state(spec, m, z, 0.7).coeffs
                ref = math.exp(-abs(z) ** 2 / 2) * np.pad(c, (0, max(0, 24 - len(c))))[:24]
                t.update(np.max(np.abs(D.coeffs - ref)), _tag(spec, m=m, z=z))


def check_cs_a_perp(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        for m in _coherent_ms(spec):
            a, _ = ld.build_ladder(spec, m, 0.7, 24)
            P = co.a_perp(spec, m, 0.7, 24)
            C = a.matrix @ P - P @ a.matrix
            t.update(np.max(np.abs(C - np.eye(24))[:23, :23]), _tag(spec, m=m))


def check_cs_uncertainty(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        for m in _coherent_ms(spec):
            for z in ctx.z_samples()[1:]:
                u = co.uncertainty(co.coherent_state(spec, m, z, 0.7))
                t.update(abs(u.product - u.bound) / u.bound, _tag(spec, m=m, z=z))
                t.update(max(abs(u.mean_x.imag), abs(u.mean_p.imag)) * 1e-4, _tag(spec, m=m, z=z, what="hermitian"))


def check_cs_finite_overlap(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.finite():
        for m in _coherent_ms(spec):
            for z in ctx.z_samples():
                st = co.coherent_state(spec, m, z, 0.4)
                direct = float(np.vdot(st.coeffs, st.coeffs).real)
                series = co.overlap_series(spec, m, z)
                t.update(abs(direct - series) / series, _tag(spec, m=m, z=z))


def check_cs_overcomplete(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.finite():
        for m in _coherent_ms(spec):
            size = ld.level_count(spec, m) + 1
            zs = [0.4 * k * np.exp(0.9j * k) for k in range(size)]
            rank = co.overcomplete_rank(spec, m, zs, 0.2)
            t.update(size - rank, _tag(spec, m=m))


# ---------------------------------------------------------------------------
# bargmann


def check_bg_isometry(ctx: Context, t: _Tracker) -> None:
    rng = np.random.default_rng(ctx.seed)
    for spec in ctx.infinite():
        for m in range(2):
            for _ in range(100):
                d = 24
                u = rng.normal(size=d) + 1j * rng.normal(size=d)
                v = rng.normal(size=d) + 1j * rng.normal(size=d)
                u /= np.linalg.norm(u)
                v /= np.linalg.norm(v)
                got = bg.fock_inner(bg.to_analytic(u, spec, m, 0.3), bg.to_analytic(v, spec, m, 0.3))
                t.update(abs(got - np.vdot(u, v)), _tag(spec, m=m))


def check_bg_operators(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.specs(exact=True):
        if spec.is_finite:
            continue
        for m in range(3):
            for n in range(13):
                f = bg.monomial(spec, m, n)
                for which in bg.OPERATORS:
                    same = bg.op_on_series(which, f) == bg.op_differential(which, f)
                    t.update(0 if same else 1, _tag(spec, m=m, n=n, op=which))


def check_bg_reproducing(ctx: Context, t: _Tracker) -> None:
    rng = np.random.default_rng(ctx.seed + 1)
    for spec in ctx.infinite():
        for m in range(2):
            v = rng.normal(size=16) + 1j * rng.normal(size=16)
            f = bg.to_analytic(v, spec, m, 0.6)
            for n in range(16):
                got = bg.fock_inner(bg.basis_u(spec, m, n, 0.6), f)
                e = float(ld.energy(spec, m, n))
                want = math.sqrt(co.epsilon(spec, m, n)) * np.exp(-0.6j * e) * f[n]
                t.update(abs(got - want) / max(abs(want), 1e-300), _tag(spec, m=m, n=n))


def check_bg_measure(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        for m in range(2):
            for n in range(6):
                for k in range(6):
                    got = bg.monomial_measure_inner(spec, m, n, k)
                    want = co.epsilon(spec, m, n) if n == k else 0.0
                    scale = math.sqrt(co.epsilon(spec, m, n) * co.epsilon(spec, m, k))
                    t.update(abs(got - want) / scale, _tag(spec, m=m, n=n, k=k))


def check_bg_monomial_norms(ctx: Context, t: _Tracker) -> None:
    for spec in ctx.infinite():
        for m in range(2):
            for n in range(12):
                for k in range(12):
                    got = bg.fock_inner(bg.monomial(spec, m, n, 1.0), bg.monomial(spec, m, k, 1.0))
                    want = co.epsilon(spec, m, n) if n == k else 0.0
                    t.update(abs(got - want) / co.epsilon(spec, m, n), _tag(spec, m=m, n=n, k=k))


# ---------------------------------------------------------------------------
# registry

Check = Callable[[Context, _Tracker], None]

CHECKS: dict[str, tuple[Check, float]] = {
    "core.constraints": (check_constraints, 0.0),
    "core.pearson": (check_pearson, 1e-6),
    "core.boundary_decay": (check_boundary_decay, 1e-8),
    "core.lambda_monotone": (check_lambda_monotone, 0.0),
    "poly.ode_residual": (check_ode_residual, 1e-10),
    "poly.rodrigues_exact": (check_rodrigues_exact, 0.0),
    "poly.rodrigues_float": (check_rodrigues_float, 1e-12),
    "poly.classical": (check_classical, 1e-10),
    "poly.degree": (check_degree, 0.0),
    "poly.real_valued": (check_real_valued, 1e-10),
    "poly.orthogonality": (check_orthogonality, 1e-8),
    "poly.positivity": (check_positivity, 0.0),
    "poly.closed_vs_adaptive": (check_moments, 1e-9),
    "poly.pearson_moments": (check_pearson_moments, 1e-9),
    "assoc.ladder_exact": (check_ladder_exact, 0.0),
    "assoc.ladder_float": (check_ladder_float, 1e-12),
    "assoc.chain": (check_chain, 0.0),
    "assoc.factorization": (check_factorization, 1e-10),
    "assoc.intertwining": (check_intertwining, 1e-10),
    "assoc.eigen": (check_eigen, 1e-10),
    "assoc.orthogonality_m": (check_orthogonality_m, 1e-8),
    "assoc.norm_recursion": (check_norm_recursion, 1e-8),
    "assoc.pointwise_H": (check_pointwise_H, 1e-8),
    "ladder.energy": (check_energy, 1e-12),
    "ladder.adjoint_diagonal": (check_adjoint_and_diagonal, 1e-12),
    "ladder.classification": (check_classification, 0.0),
    "ladder.h2": (_algebra_check(ld.AlgebraKind.HeisenbergWeyl), 1e-12),
    "ladder.su11": (_algebra_check(ld.AlgebraKind.SU11), 1e-12),
    "ladder.su2": (_algebra_check(ld.AlgebraKind.SU2), 1e-14),
    "ladder.phase_covariance": (check_phase_covariance, 1e-12),
    "coherent.eigenstate": (check_cs_eigen, 1e-10),
    "coherent.overlap": (check_cs_overlap, 1e-10),
    "coherent.truncation": (check_cs_truncation, 1e-16),
    "coherent.temporal": (check_cs_temporal, 1e-14),
    "coherent.measure_moments": (check_cs_measure, 1e-6),
    "coherent.measure_offdiag": (check_cs_offdiag, 1e-6),
    "coherent.bessel_k": (check_bessel, 1e-9),
    "coherent.hyp0f1": (check_hyp0f1, 1e-12),
    "coherent.displacement": (check_cs_displacement, 1e-8),
    "coherent.a_perp": (check_cs_a_perp, 1e-12),
    "coherent.uncertainty": (check_cs_uncertainty, 1e-8),
    "coherent.finite_overlap": (check_cs_finite_overlap, 1e-14),
    "coherent.overcomplete": (check_cs_overcomplete, 0.0),
    "bargmann.isometry": (check_bg_isometry, 1e-12),
    "bargmann.operators": (check_bg_operators, 0.0),
    "bargmann.reproducing": (check_bg_reproducing, 1e-12),
    "bargmann.measure": (check_bg_measure, 1e-6),
    "bargmann.monomial_norms": (check_bg_monomial_norms, 1e-14),
}


def resolve_overrides(overrides: dict[str, float]) -> dict[str, float]:
    """Map ``KEY=VAL`` overrides to check ids; ``KEY`` may be a full id or its suffix."""
    out = {}
    for key, val in overrides.items():
        hits = [cid for cid in CHECKS if cid == key or cid.split(".", 1)[1] == key]
        if not hits:
            raise KeyError(f"no check named {key!r}")
        if len(hits) > 1:
            raise KeyError(f"{key!r} is ambiguous: {', '.join(hits)}")
        for cid in hits:
            out[cid] = float(val)
    return out


def selected(suite: str) -> list[str]:
    if suite == "all":
        return sorted(CHECKS)
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    return sorted(cid for cid in CHECKS if cid.startswith(suite + "."))


def _run_one(cid: str, ctx: Context, tol: float) -> CheckResult:
    fn, _ = CHECKS[cid]
    tracker = _Tracker()
    t0 = time.perf_counter()
    try:
        fn(ctx, tracker)
        err, where = tracker.value, tracker.where
    except Exception as exc:  # a crashing check is a failing check
        err, where = math.inf, f"{type(exc).__name__}: {exc}"
    passed = bool(err <= tol)
    return CheckResult(cid, passed, err, tol, where, time.perf_counter() - t0)


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("HYPERTYPE_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(suite: str = "all", ctx: Context | None = None,
              overrides: dict[str, float] | None = None,
              threads: int | None = None) -> RunReport:
    ctx = ctx or Context()
    tols = {cid: CHECKS[cid][1] for cid in CHECKS}
    tols.update(resolve_overrides(overrides or {}))
    ids = selected(suite)
    threads = threads or thread_cap()
    t0 = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _run_one(c, ctx, tols[c]), ids))
    else:
        results = [_run_one(c, ctx, tols[c]) for c in ids]
    results.sort(key=lambda r: r.id)
    return RunReport(suite, results, time.perf_counter() - t0)

