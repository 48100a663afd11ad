"""Polynomial solutions Phi_l of the hypergeometric-type equation.

Three independent constructions are provided:

* :func:`phi` runs the downward coefficient recurrence obtained by substituting
  a power series into ``sigma*y'' + tau*y' + lambda_l*y = 0``;
* :func:`rodrigues` differentiates ``sigma**l * rho`` symbolically, ``l`` times;
* :func:`classical_ref` expands the Hermite / Laguerre / Jacobi expressions.

All Phi_l are normalised to be monic.  In exact mode (a spec built with
``exact=True``) the first two constructions are carried out in rational
arithmetic and agree bit for bit.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .cases import CaseKind, CaseSpec, check_degree, lambda_l
from .errors import NumericalInstability
from .polynomial import Polynomial

__all__ = [
    "phi",
    "rodrigues",
    "classical_ref",
    "classical_ref_complex",
    "hermite",
    "laguerre",
    "jacobi",
    "ode_residual",
]


def _sum2(x, y):
    if isinstance(x, float) or isinstance(y, float):
        return math.fsum((x, y))
    return x + y


def phi(spec: CaseSpec, l: int) -> Polynomial:
    """Monic degree-``l`` polynomial solution for ``lambda = lambda_l``.

    Coefficients are generated from ``c_l = 1`` downwards::

        c_k (lambda_l - lambda_k) = -[c_{k+1} (a1 k + beta)(k+1) + c_{k+2} a0 (k+2)(k+1)]

    The divisor never vanishes because lambda is strictly increasing below
    the spectral bound.
    """
    check_degree(spec, l)
    # exact and float specs compare equal, so the mode is part of the key
    return _phi(spec, spec.exact, l)


@lru_cache(maxsize=1024)
def _phi(spec: CaseSpec, exact: bool, l: int) -> Polynomial:
    _, a1, a0 = spec.kind.sigma_coeffs
    one = spec.alpha / spec.alpha  # 1 in the scalar type of alpha
    lam = [lambda_l(spec, k) for k in range(l + 1)]
    c = [0 * one] * (l + 3)
    c[l] = one
    for k in range(l - 1, -1, -1):
        rhs = _sum2(c[k + 1] * (a1 * k + spec.beta) * (k + 1),
                    c[k + 2] * a0 * (k + 2) * (k + 1))
        c[k] = -rhs / (lam[l] - lam[k])
    return Polynomial(c[: l + 1])


def rodrigues(spec: CaseSpec, l: int) -> Polynomial:
    """Monic ``(1/rho) d^l/ds^l [sigma^l rho]`` computed without ever forming rho.

    Uses ``(sigma^k rho q)' = sigma^(k-1) rho (sigma q' + (tau + (k-1) sigma') q)``
    for ``k = l, ..., 1`` starting from ``q = 1``.
    """
    check_degree(spec, l)
    sigma, tau = spec.sigma_poly, spec.tau_poly
    dsigma = sigma.deriv()
    one = spec.alpha / spec.alpha
    q = Polynomial([one])
    for k in range(l, 0, -1):
        q = sigma * q.deriv() + (tau + dsigma * (k - 1)) * q
    return q.monic()


def ode_residual(spec: CaseSpec, p: Polynomial, lam) -> Polynomial:
    """``sigma p'' + tau p' + lam p`` as a polynomial."""
    return spec.sigma_poly * p.deriv(2) + spec.tau_poly * p.deriv() + p * lam


# classical families, generated by their three-term recurrences

def hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n."""
    prev, cur = Polynomial([1.0]), Polynomial([0.0, 2.0])
    if n == 0:
        return prev
    x2 = Polynomial([0.0, 2.0])
    for k in range(1, n):
        prev, cur = cur, x2 * cur - prev * (2.0 * k)
    return cur


def laguerre(n: int, a) -> Polynomial:
    """Generalised Laguerre polynomial L_n^(a); any real or complex ``a``."""
    prev = Polynomial([1.0])
    if n == 0:
        return prev
    cur = Polynomial([1.0 + a, -1.0])
    for k in range(1, n):
        nxt = (Polynomial([2 * k + 1 + a, -1.0]) * cur - prev * (k + a)) / (k + 1)
        prev, cur = cur, nxt
    return cur


def jacobi(n: int, a, b) -> Polynomial:
    """Jacobi polynomial P_n^(a,b) with real or complex parameters."""
    prev = Polynomial([1.0])
    if n == 0:
        return prev
    cur = Polynomial([(a + 1) - (a + b + 2) / 2, (a + b + 2) / 2])
    for k in range(2, n + 1):
        s = 2 * k + a + b
        lhs = 2 * k * (k + a + b) * (s - 2)
        lin = Polynomial([a * a - b * b, s * (s - 2)]) * (s - 1)
        nxt = (lin * cur - prev * (2 * (k + a - 1) * (k + b - 1) * s)) / lhs
        prev, cur = cur, nxt
    return cur


def classical_ref_complex(spec: CaseSpec, l: int) -> Polynomial:
    """Right-hand side of the classical-polynomial representation, unnormalised.

    Complex coefficients are returned for ``sigma = s^2 + 1``; all other cases
    are real.
    """
    check_degree(spec, l)
    a, b = float(spec.alpha), float(spec.beta)
    k = spec.kind
    if k is CaseKind.SigmaOne:
        return hermite(l).compose_linear(math.sqrt(-a / 2), -b / math.sqrt(-2 * a))
    if k is CaseKind.SigmaS:
        return laguerre(l, b - 1).compose_linear(-a, 0.0)
    if k is CaseKind.SigmaOneMinusS2:
        return jacobi(l, -(a + b) / 2 - 1, (-a + b) / 2 - 1)
    if k is CaseKind.SigmaS2Minus1:
        return jacobi(l, (a - b) / 2 - 1, (a + b) / 2 - 1).compose_linear(-1.0, 0.0)
    if k is CaseKind.SigmaS2:
        # (s/beta)^l L_l^(1-alpha-2l)(beta/s): the x^j term lands on s^(l-j)
        lag = laguerre(l, 1 - a - 2 * l)
        out = [0.0] * (l + 1)
        for j in range(l + 1):
            out[l - j] = lag[j] * b ** (j - l)
        return Polynomial(out)
    p = jacobi(l, complex(a, b) / 2 - 1, complex(a, -b) / 2 - 1)
    il = 1j ** l
    return Polynomial(il * c * 1j ** j for j, c in enumerate(p.coeffs))


def imaginary_residue(p: Polynomial) -> float:
    """Largest imaginary part relative to the largest coefficient modulus."""
    scale = p.max_abs()
    if scale == 0:
        return 0.0
    return max(abs(complex(c).imag) for c in p.coeffs) / scale


def classical_ref(spec: CaseSpec, l: int, tol: float = 1e-8) -> Polynomial:
    """Classical-polynomial oracle for Phi_l, as a real polynomial.

    Proportional to :func:`phi` (the normalising constant is left free).
    Raises :class:`NumericalInstability` when the complex-parameter Jacobi
    evaluation for ``sigma = s^2+1`` leaves an imaginary part above ``tol``.
    """
    p = classical_ref_complex(spec, l)
    if spec.kind is CaseKind.SigmaS2Plus1:
        res = imaginary_residue(p)
        if res > tol:
            raise NumericalInstability(
                f"imaginary residue {res:.3e} in i^l P_l(i s) for l={l}"
            )
        return Polynomial(complex(c).real for c in p.coeffs)
    return p
