"""Modified Bessel functions and the confluent limit function 0F1.

``I_nu`` is summed from its ascending series and ``K_nu`` is obtained from
the reflection formula ``K_nu = (pi/2) (I_{-nu} - I_nu) / sin(nu pi)``, or from
the integer-order limiting series when ``nu`` is an integer.  The reflection
formula cancels roughly ``2x / ln 10`` leading digits, so every evaluation
runs in mpmath with the working precision raised accordingly.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath

from .errors import HypertypeError

#: largest argument accepted; beyond this I_nu(x) overflows a double
X_MAX = 700.0


class SeriesOverflow(HypertypeError, OverflowError):
    pass


def _digits_for(x: float, nu: float = 0.0) -> int:
    extra = 2.0 * x / math.log(10.0) + 15
    frac = abs(nu - round(nu))
    if 0 < frac < 1e-2:
        # the reflection formula also loses -log10(frac) digits near integers
        extra += -math.log10(frac)
    return int(extra) + 15


def _check_x(x: float) -> None:
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")
    if x > X_MAX:
        raise SeriesOverflow(f"x={x} exceeds {X_MAX}; I_nu would overflow")


def series_terms(nu: float, x: float, bits: int) -> int:
    """Upper bound on the number of ascending-series terms for relative accuracy ``2**-bits``.

    Once ``k (k + nu) >= x**2 / 2`` consecutive terms at least halve, so the
    remainder is bounded by the current term.  The largest term exceeds the
    first by at most ``q**k0 / k0!`` with ``q = x**2 / 4``; a further
    ``log2`` of that growth plus ``bits`` halvings makes the term negligible.
    """
    q = x * x / 4
    k0 = 1
    while k0 * (k0 + nu) < 2 * q or k0 + nu <= 0:
        k0 += 1
    growth = k0 * math.log(max(q, 1.0)) - math.lgamma(k0 + 1) + max(0.0, -nu) * 3
    return k0 + int(max(growth, 0.0) / math.log(2.0)) + bits + 2


def _fixed_0f1(nu: float, x: float, prec: int, want: int) -> int:
    """``sum_k prod_{j<=k} q / (j (j + nu))``, ``q = x^2/4``, as an integer scaled by ``2**prec``.

    Both ``nu`` and ``x`` are binary fractions, so every ratio is an exact
    integer quotient; only the floor divisions round.  Summation stops at
    relative accuracy ``2**-want``.
    """
    p, r = x.as_integer_ratio()
    a, d = nu.as_integer_ratio()
    num = p * p * d
    den0 = 4 * r * r
    q = x * x / 4
    one = 1 << prec
    term, total = one, one
    for k in range(1, series_terms(nu, x, want) + 1):
        den = den0 * k * (k * d + a)
        term = term * num // den if den > 0 else -(term * num // -den)
        total += term
        if k * (k + nu) >= 2 * q and k + nu > 0 and abs(term) << want <= abs(total):
            return total
    raise SeriesOverflow(f"ascending series for order {nu} at x={x} did not settle")


def _iv_mp(nu: float, x: float):
    """``I_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (x^2/4)^k / (k! (nu+1)_k)``."""
    if nu == round(nu):
        nu = abs(nu)  # I_{-n} = I_n
    want = mpmath.mp.prec + 8
    prec = want + 32
    s = mpmath.ldexp(mpmath.mpf(_fixed_0f1(nu, x, prec, want)), -prec)
    nu_m = mpmath.mpf(nu)
    return (mpmath.mpf(x) / 2) ** nu_m * mpmath.rgamma(nu_m + 1) * s


def _kn_mp(n: int, x: float):
    """Integer-order ``K_n`` from the limiting (logarithmic) series, ``n >= 0``."""
    half = mpmath.mpf(x) / 2
    qm = half * half
    out = mpmath.mpf(0)
    if n > 0:
        acc = mpmath.mpf(0)
        for k in range(n):
            acc += mpmath.factorial(n - k - 1) / mpmath.factorial(k) * (-qm) ** k
        out += acc / (2 * half ** n)
    out += (-1) ** (n + 1) * mpmath.log(half) * _iv_mp(float(n), x)

    # sum (psi(k+1) + psi(n+k+1)) q^k / (k! (n+k)!) in fixed point, with
    # psi(k+1) + psi(n+k+1) = -2 euler + H_k + H_(n+k) updated incrementally
    want = mpmath.mp.prec + 8
    prec = want + 32
    one = 1 << prec
    p, r = float(x).as_integer_ratio()
    num, den0 = p * p, 4 * r * r
    q = float(x) ** 2 / 4
    psi = -2 * int(mpmath.ldexp(mpmath.euler, prec)) + sum(one // j for j in range(1, n + 1))
    term, acc = one, psi
    for k in range(1, series_terms(n, float(x), want) + 1):
        term = term * num // (den0 * k * (n + k))
        psi += one // k + one // (n + k)
        acc += psi * term >> prec
        # psi grows like log k, so a generous factor covers the digamma weight
        if k * (n + k) >= 2 * q and (abs(term) * (20 + 2 * k)) << want <= abs(acc):
            break
    else:
        raise SeriesOverflow(f"integer-order series for K_{n}({x}) did not settle")
    s = mpmath.ldexp(mpmath.mpf(acc), -prec)
    out += (-1) ** n * half ** n * s / (2 * mpmath.factorial(n))
    return out


def bessel_mp(nu: float, x: float) -> tuple:
    """``(I_nu(x), K_nu(x))`` as mpmath numbers at the current working precision.

    Orders close to, but not equal to, an integer still use the reflection
    formula; the extra working digits chosen by :func:`bessel` absorb the
    cancellation there.
    """
    nu, x = float(nu), float(x)
    iv = _iv_mp(nu, x)
    if nu == round(nu):
        kv = _kn_mp(abs(int(round(nu))), x)
    else:
        num = mpmath.mpf(nu)
        kv = mpmath.pi / 2 * (_iv_mp(-nu, x) - iv) / mpmath.sin(num * mpmath.pi)
    return iv, kv


@lru_cache(maxsize=65536)
def bessel(nu: float, x: float) -> tuple[float, float]:
    """Modified Bessel functions ``(I_nu(x), K_nu(x))`` for real ``nu`` and ``x > 0``.

    Parameters
    ----------
    nu : float
        Order; any real value.
    x : float
        Argument, ``0 < x <= X_MAX``.

    Returns
    -------
    tuple of float
        ``I_nu(x)`` and ``K_nu(x)``.  ``K_nu`` is even in ``nu``.
    """
    nu, x = float(nu), float(x)
    _check_x(x)
    with mpmath.workdps(_digits_for(x, nu)):
        iv, kv = bessel_mp(nu, x)
        return float(iv), float(kv)


def bessel_i(nu: float, x: float) -> float:
    if x == 0:
        if nu == 0:
            return 1.0
        return 0.0 if nu > 0 or nu == round(nu) else math.inf
    return bessel(nu, x)[0]


def bessel_k(nu: float, x: float) -> float:
    return bessel(nu, x)[1]


def hyp0f1(c: float, x: float, rel_tol: float = 1e-17) -> float:
    """``0F1(; c; x) = sum x^k / ((c)_k k!)`` for ``c > 0`` and ``x >= 0``.

    All terms are positive so the sum is taken in double precision; the loop
    stops once consecutive terms at least halve and the current term is
    negligible, which bounds the remainder by that term.
    """
    if c <= 0:
        raise ValueError("0F1 is only summed here for c > 0")
    if x < 0:
        raise ValueError("0F1 is only summed here for x >= 0")
    terms = [1.0]
    term, k = 1.0, 0
    while True:
        ratio = x / ((c + k) * (k + 1))
        term *= ratio
        k += 1
        terms.append(term)
        if ratio <= 0.5 and term <= rel_tol * math.fsum(terms):
            return math.fsum(terms)
