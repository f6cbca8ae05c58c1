#!/usr/bin/env python3
"""Independent oracles for the frozen values in the C++ test suites.

Nothing here shares code with the library: minimal polynomials come from
high-precision numeric roots, norm forms from numeric products of linear
factors, point counts from naive enumeration.  Run with python3; prints
the values the C++ tests assert.
"""
import itertools
import math

import mpmath
import sympy as sp

mpmath.mp.dps = 60


def theta_real(N):
    return [2 - 2 * mpmath.cos(2 * mpmath.pi * m / N) for m in range(1, (N - 1) // 2 + 1)]


def theta_omz(N):
    return [1 - mpmath.exp(2j * mpmath.pi * m / N) for m in range(1, N)]


def numeric_minpoly(roots):
    coeffs = [mpmath.mpc(1)]
    for r in roots:
        nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c
            nxt[i + 1] -= c * r
        coeffs = nxt
    return [int(mpmath.nint(mpmath.re(c))) for c in coeffs]


def numeric_norm_form(roots, gamma):
    z = sp.symbols("z")
    x = sp.symbols("x")
    ys = sp.symbols(" ".join(f"y{i}" for i in range(1, gamma + 1)))
    if gamma == 1:
        ys = (ys,)
    # expand symbolically with numeric coefficients then round
    prod = None
    for r in roots:
        lin = x + sum(sp.Float(str(mpmath.re(r ** i)), 60) * ys[i - 1] for i in range(1, gamma + 1))
        if isinstance(r, mpmath.mpc) and abs(mpmath.im(r)) > 0:
            lin = x + sum(sp.sympify(complex(r ** i)) * ys[i - 1] for i in range(1, gamma + 1))
        prod = lin if prod is None else sp.expand(prod * lin)
    poly = sp.Poly(prod, x, *ys)
    return {m: int(round(float(sp.re(c)))) for m, c in poly.terms()}


def naive_projective_zeros(f, nvars, p):
    cnt = 0
    pts = []
    for v in itertools.product(range(p), repeat=nvars):
        if all(c == 0 for c in v):
            continue
        first = next(c for c in v if c != 0)
        if first != 1:
            continue
        if f(*v) % p == 0:
            cnt += 1
            pts.append(v)
    return cnt, pts


def main():
    print("minpoly(7, real)   =", numeric_minpoly(theta_real(7)))
    print("minpoly(3, real)   =", numeric_minpoly(theta_real(3)))
    print("minpoly(11, real)  =", numeric_minpoly(theta_real(11)))
    print("minpoly(19, real)  =", numeric_minpoly(theta_real(19)))
    print("minpoly(5, omz)    =", numeric_minpoly(theta_omz(5)))
    print("minpoly(7, omz)    =", numeric_minpoly(theta_omz(7)))
    print("norm_form(7,real,1) =", numeric_norm_form(theta_real(7), 1))
    print("norm_form(7,real,2) =", sorted(numeric_norm_form(theta_real(7), 2).items(), reverse=True))
    print("norm_form(5,omz,1) =", numeric_norm_form(theta_omz(5), 1))
    print("sum theta N=7 =", mpmath.nstr(sum(theta_real(7)), 20))

    # resultant by direct evaluation at roots of z^2 - 1
    print("Res(z^2-1, z-2) =", (1 - 2) * (-1 - 2))
    # CRT scan
    print("crt (1 mod 4, 3 mod 9) =", [a for a in range(36) if a % 4 == 1 and a % 9 == 3])
    print("crt (0,2),(2,3),(2,7) =", [a for a in range(42) if a % 2 == 0 and a % 3 == 2 and a % 7 == 2])

    # Hasse-Weil curve for n=1, N=7, alpha0=2: 6 t^3 - 7 * prod(y1 + theta y2)
    th = theta_real(7)
    nf1 = numeric_norm_form(th, 1)  # x^3 + 7x^2y + 14xy^2 + 7y^3 (in x, y1)
    # prod(y1 + theta*y2) = normform with x->y1, y1->y2
    def curve(t, y1, y2):
        return 6 * t ** 3 - 7 * (y1 ** 3 + 7 * y1 ** 2 * y2 + 14 * y1 * y2 ** 2 + 7 * y2 ** 3)
    for p in (5, 11, 13, 37, 197, 199):
        c, _ = naive_projective_zeros(curve, 3, p)
        print(f"HW count p={p}: {c}  bound {p+1}+-{2*math.sqrt(p):.3f}")

    # x^2 + y^2 over F_3, x^3 - y^3 over F_7
    print("x^2+y^2 over F3:", naive_projective_zeros(lambda x, y: x * x + y * y, 2, 3)[0])
    print("x^3-y^3 over F7:", naive_projective_zeros(lambda x, y: x ** 3 - y ** 3, 2, 7)[0])

    # T1(n=1, N=7, alpha0=2): t(2t+7x)(3t+7x) - normform(7, real, 2)
    nf2 = numeric_norm_form(th, 2)
    def t1(t, x, y1, y2):
        s = t * (2 * t + 7 * x) * (3 * t + 7 * x)
        for (a, b, c), coef in nf2.items():
            s -= coef * x ** a * y1 ** b * y2 ** c
        return s
    for p in (2, 3, 5):
        c, pts = naive_projective_zeros(t1, 4, p)
        print(f"T1 n=1 projective zeros over F_{p}: {c}, first {pts[0]}")
    def selmer(x, y, z):
        return 3 * x ** 3 + 4 * y ** 3 + 5 * z ** 3
    for p in (2, 3, 5, 7, 11):
        print(f"Selmer zeros over F_{p}: {naive_projective_zeros(selmer, 3, p)[0]}")

    # real roots
    print("selmer real t:", mpmath.nstr(-mpmath.cbrt(mpmath.mpf(4) / 3), 20))
    print("6t^3+35t^2+49t-1 root:", mpmath.nstr(mpmath.findroot(lambda t: 6*t**3+35*t**2+49*t-1, 0.02), 20))

    # exhaustive small-alpha0 scan for N=7, n=1: 6 | a(a+1) and a(a+1) = +-1 mod 7
    print("alpha0 scan N=7:", [a for a in range(0, 100) if (a*(a+1)) % 6 == 0 and (a*(a+1)) % 7 in (1, 6)][:5])
    # N=11 residues
    print("roots mod 11:", [a for a in range(11) if (a*(a+1)) % 11 in (1, 10)])


if __name__ == "__main__":
    main()
