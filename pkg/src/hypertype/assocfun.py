"""Associated special functions and the operators A_m, A_m^+ and H_m.

A function ``kappa(s)**m * P(s)`` with ``kappa = sqrt(sigma)`` is stored as the
pair ``(m, P)``.  Every operator used here maps such pairs to such pairs with
polynomial arithmetic only:

* ``A_m (kappa^m P)       = kappa^(m+1) P'``
* ``A_m^+ (kappa^(m+1) Q) = kappa^m (-sigma Q' - (m sigma' + tau) Q)``
* ``H_m = A_m^+ A_m + lambda_m``

so the ladder relations hold exactly (in rational mode) rather than up to a
numerical differentiation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from numbers import Number

from .cases import CaseSpec, check_degree, lambda_l
from .errors import IndexOutOfRange, PowerMismatch
from .polyengine import phi
from .polynomial import Polynomial
from .quadrature import inner_product


@dataclass(frozen=True)
class AssocFunction:
    """``kappa**m * poly``."""

    m: int
    poly: Polynomial

    def __add__(self, other: AssocFunction) -> AssocFunction:
        if other.m != self.m:
            raise PowerMismatch(f"cannot add kappa^{self.m} and kappa^{other.m} terms")
        return AssocFunction(self.m, self.poly + other.poly)

    def __sub__(self, other: AssocFunction) -> AssocFunction:
        return self + other * -1

    def __mul__(self, c) -> AssocFunction:
        if not isinstance(c, Number):
            return NotImplemented
        return AssocFunction(self.m, self.poly * c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> AssocFunction:
        return AssocFunction(self.m, self.poly / c)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __call__(self, spec: CaseSpec, s: float) -> float:
        return spec.sigma(s) ** (0.5 * self.m) * float(self.poly(s))


def _require_power(f: AssocFunction, m: int) -> None:
    if f.m != m:
        raise PowerMismatch(f"operator expects kappa^{m}, got kappa^{f.m}")


def assoc(spec: CaseSpec, l: int, m: int) -> AssocFunction:
    """``Phi_{l,m} = kappa^m d^m/ds^m Phi_l``."""
    check_degree(spec, l)
    if not 0 <= m <= l:
        raise IndexOutOfRange(f"need 0 <= m <= l, got l={l}, m={m}")
    return AssocFunction(m, phi(spec, l).deriv(m))


def apply_A(spec: CaseSpec, m: int, f: AssocFunction) -> AssocFunction:
    """Lowering operator ``A_m = kappa d/ds - m kappa'``."""
    _require_power(f, m)
    return AssocFunction(m + 1, f.poly.deriv())


def apply_Aplus(spec: CaseSpec, m: int, f: AssocFunction) -> AssocFunction:
    """Raising operator ``A_m^+ = -kappa d/ds - tau/kappa - (m-1) kappa'`` on ``kappa^(m+1) Q``."""
    _require_power(f, m + 1)
    q = f.poly
    sigma = spec.sigma_poly
    coef = sigma.deriv() * m + spec.tau_poly
    return AssocFunction(m, -(sigma * q.deriv()) - coef * q)


def apply_H(spec: CaseSpec, m: int, f: AssocFunction) -> AssocFunction:
    """``H_m f`` through the factorisation ``H_m = A_m^+ A_m + lambda_m``."""
    _require_power(f, m)
    return apply_Aplus(spec, m, apply_A(spec, m, f)) + f * lambda_l(spec, m)


def apply_H_partner(spec: CaseSpec, m: int, f: AssocFunction) -> AssocFunction:
    """``H_{m+1} f`` through the partner factorisation ``A_m A_m^+ + lambda_m``."""
    _require_power(f, m + 1)
    return apply_A(spec, m, apply_Aplus(spec, m, f)) + f * lambda_l(spec, m)


def H_pointwise(spec: CaseSpec, m: int, f: AssocFunction, s: float) -> float:
    """Value of ``(H_m f)(s)`` from the raw second-order differential form.

    Only used as a guard on the polynomial forms above; derivatives of
    ``sigma^(m/2) P`` are expanded analytically, never differenced.
    """
    _require_power(f, m)
    sg, dsg = spec.sigma(s), spec.dsigma(s)
    ddsg = spec.kind.sigma_second
    al, tau = float(spec.alpha), float(spec.tau(s))
    p = f.poly.to_float()
    P, dP, ddP = p(s), p.deriv()(s), p.deriv(2)(s)
    r = dsg / sg
    g = sg ** (0.5 * m)
    h = 0.5 * m
    f0 = g * P
    f1 = g * (dP + h * r * P)
    f2 = g * (ddP + m * r * dP + h * (ddsg / sg) * P + h * (h - 1) * r * r * P)
    pot = (m * (m - 2) / 4 * dsg * dsg / sg + m * tau / 2 * r
           - 0.5 * m * (m - 2) * ddsg - m * al)
    return -sg * f2 - tau * f1 + pot * f0


# ---------------------------------------------------------------------------
# norms


@lru_cache(maxsize=1024)
def _base_norm(spec: CaseSpec, l: int) -> float:
    p = phi(spec, l)
    return math.sqrt(inner_product(spec, p, p))


def norm(spec: CaseSpec, l: int, m: int) -> float:
    """``||Phi_{l,m}||`` from ``||Phi_l||`` and ``||Phi_{l,j+1}|| = sqrt(lambda_l - lambda_j) ||Phi_{l,j}||``."""
    check_degree(spec, l)
    if not 0 <= m <= l:
        raise IndexOutOfRange(f"need 0 <= m <= l, got l={l}, m={m}")
    lam = float(lambda_l(spec, l))
    out = _base_norm(spec, l)
    for j in range(m):
        out *= math.sqrt(lam - float(lambda_l(spec, j)))
    return out


def norm_direct(spec: CaseSpec, l: int, m: int) -> float:
    """``||Phi_{l,m}||`` by integrating ``sigma^m (d^m Phi_l)^2 rho`` through moments."""
    f = assoc(spec, l, m)
    return math.sqrt(inner_product(spec, f.poly, f.poly, sigma_power=m))


def assoc_inner(spec: CaseSpec, f: AssocFunction, g: AssocFunction) -> float:
    """``<f, g>`` for two functions of equal kappa-power."""
    if f.m != g.m:
        raise PowerMismatch("scalar product of different kappa-powers is not polynomial")
    return inner_product(spec, f.poly, g.poly, sigma_power=f.m)


@dataclass
class NormTable:
    spec: CaseSpec
    l_max: int
    norms: dict[tuple[int, int], float] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self.norms[key]


def build_norm_table(spec: CaseSpec, l_max: int) -> NormTable:
    table = NormTable(spec, l_max)
    for l in range(l_max + 1):
        for m in range(l + 1):
            table.norms[(l, m)] = norm(spec, l, m)
    return table


def normalized(spec: CaseSpec, l: int, m: int) -> AssocFunction:
    """``phi_{l,m} = Phi_{l,m} / ||Phi_{l,m}||`` (float coefficients)."""
    f = assoc(spec, l, m)
    return AssocFunction(m, f.poly.to_float() / norm(spec, l, m))


def chain_from_top(spec: CaseSpec, l: int, m: int) -> AssocFunction:
    """Rebuild ``Phi_{l,m}`` from ``Phi_{l,l}`` by successive ``A_j^+ / (lambda_l - lambda_j)``."""
    f = assoc(spec, l, l)
    lam = lambda_l(spec, l)
    for j in range(l - 1, m - 1, -1):
        f = apply_Aplus(spec, j, f) / (lam - lambda_l(spec, j))
    return f
