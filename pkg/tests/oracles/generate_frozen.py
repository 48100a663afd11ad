"""Regenerate the frozen reference values used by the test-suite.

Independent of the package: monic polynomials come from sympy's classical
families, norms and measure moments from mpmath quadrature.  Run with
``python3 tests/oracles/generate_frozen.py`` and paste the output into
``tests/frozen.py`` if a reference ever needs to change.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import sympy as sp

s = sp.symbols("s")
R = sp.Rational


def monic(expr):
    p = sp.Poly(sp.expand(expr), s)
    p = p.monic()
    return [Fraction(str(c)) for c in reversed(p.all_coeffs())]


def classical(kind, a, b, l):
    a, b = R(a), R(b)
    if kind == "1":
        return sp.hermite(l, sp.sqrt(-a / 2) * s - b / sp.sqrt(-2 * a))
    if kind == "s":
        return sp.assoc_laguerre(l, b - 1, -a * s)
    if kind == "1-s2":
        return sp.jacobi(l, -(a + b) / 2 - 1, (-a + b) / 2 - 1, s)
    if kind == "s2-1":
        return sp.jacobi(l, (a - b) / 2 - 1, (a + b) / 2 - 1, -s)
    if kind == "s2":
        x = sp.symbols("x")
        lag = sp.assoc_laguerre(l, 1 - a - 2 * l, x)
        return sp.expand(s ** l * lag.subs(x, b / s))
    return sp.expand(sp.I ** l * sp.jacobi(l, (a + sp.I * b) / 2 - 1, (a - sp.I * b) / 2 - 1, sp.I * s))


GRID = [("1", -2, 0), ("s", -1, 2), ("1-s2", -3, 0), ("s2-1", -4, 5), ("s2", -9, 1), ("s2+1", -4, 1)]
LMAX = {"1": 4, "s": 4, "1-s2": 4, "s2-1": 2, "s2": 4, "s2+1": 2}


def rho(kind, a, b, x):
    if kind == "1":
        return mpmath.exp(a * x * x / 2 + b * x)
    if kind == "s":
        return x ** (b - 1) * mpmath.exp(a * x)
    if kind == "1-s2":
        return (1 + x) ** (-(a - b) / 2 - 1) * (1 - x) ** (-(a + b) / 2 - 1)
    if kind == "s2-1":
        return (x + 1) ** ((a - b) / 2 - 1) * (x - 1) ** ((a + b) / 2 - 1)
    if kind == "s2":
        return x ** (a - 2) * mpmath.exp(-b / x)
    return (1 + x * x) ** (a / 2 - 1) * mpmath.exp(b * mpmath.atan(x))


INTERVALS = {"1": (-mpmath.inf, 0, mpmath.inf), "s": (0, mpmath.inf), "1-s2": (-1, 1),
             "s2-1": (1, 2, mpmath.inf), "s2": (0, 1, mpmath.inf), "s2+1": (-mpmath.inf, 0, mpmath.inf)}


def main() -> None:
    mpmath.mp.dps = 30
    print("PHI = {")
    polys = {}
    for kind, a, b in GRID:
        rows = []
        for l in range(LMAX[kind] + 1):
            cs = monic(classical(kind, a, b, l))
            polys[(kind, l)] = cs
            rows.append("(" + ", ".join(f'"{c}"' for c in cs) + ",)")
        print(f'    ("{kind}", {a}, {b}): [' + ", ".join(rows) + "],")
    print("}")

    print("NORM_SQ = {")
    for kind, a, b in GRID:
        vals = []
        for l in range(min(LMAX[kind], 3) + 1):
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in polys[(kind, l)]]
            f = lambda x: mpmath.polyval(cs[::-1], x) ** 2 * rho(kind, a, b, x)
            vals.append(mpmath.nstr(mpmath.quad(f, INTERVALS[kind]), 17))
        print(f'    ("{kind}", {a}, {b}): [' + ", ".join(vals) + "],")
    print("}")

    # coherent normalisation and measure moments
    print("OVERLAP_1MS2_A3 = {")
    for m in (0, 1):
        for r in (0.5, 1.0, 2.5):
            c = 2 * m + 3  # 2m - alpha with alpha = -3
            print(f"    ({m}, {r}): {mpmath.nstr(mpmath.hyp0f1(c, r * r) , 17)},")
    print("}")

    def radial(alpha, m, n, order):
        c = 2 * m - alpha
        f = lambda r: 4 / mpmath.gamma(c) * r ** (2 * n + 1) * r ** (c - 1) * mpmath.besselk(order, 2 * r)
        return mpmath.quad(f, [0, 1, 5, 20, mpmath.inf])

    print("BESSEL_MEASURE = {")
    for alpha, m, n in ((-3, 0, 0), (-3, 0, 2), (-2, 1, 2), (-3, 1, 4)):
        order = alpha + 1 - 2 * m
        print(f"    ({alpha}, {m}, {n}): {mpmath.nstr(radial(alpha, m, n, order), 17)},")
    print("}")
    print("BESSEL_MEASURE_HALVED = {")
    for alpha, m, n in ((-3, 0, 0), (-2, 1, 0), (-3, 1, 0)):
        order = (alpha + 1) / 2 - m
        print(f"    ({alpha}, {m}, {n}): {mpmath.nstr(radial(alpha, m, n, order), 17)},")
    print("}")

    print("BESSEL_K = {")
    for nu, x in ((0.5, 0.5), (0.5, 1.0), (0.5, 2.0), (-2.0, 3.0), (1.5, 10.0), (-4.0, 80.0), (0.3, 0.01)):
        print(f"    ({nu}, {x}): {mpmath.nstr(mpmath.besselk(nu, x), 17)},")
    print("}")


if __name__ == "__main__":
    main()
