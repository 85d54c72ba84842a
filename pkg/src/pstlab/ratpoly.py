"""Dense univariate polynomials over exact integers/rationals.

Coefficient lists are ascending in degree.  Everything here is exact:
integer coefficient lists with content-stripped (primitive) pseudo-remainder
sequences, so Sturm chains stay certifiable at degree ~100 and beyond.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


def strip(p: list) -> list:
    """Drop trailing (high-degree) zeros."""
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: list) -> int:
    return len(p) - 1


def content(p: list) -> int:
    g = 0
    for v in p:
        g = gcd(g, v)
    return g or 1


def primitive(p: list) -> list:
    c = content(p)
    return [v // c for v in p]


def derivative(p: list) -> list:
    return [i * v for i, v in enumerate(p)][1:]


def clear_denominators(coeffs) -> list:
    """Rational coefficient list -> primitive integer list (same roots)."""
    fracs = [Fraction(c) for c in coeffs]
    den = 1
    for c in fracs:
        den = lcm(den, c.denominator)
    ints = strip([int(c * den) for c in fracs])
    return primitive(ints) if ints else []


def eval_fraction(p: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign_at(p: list, x: Fraction) -> int:
    """Exact sign of an integer polynomial at a rational point.

    Uses the cross-multiplied Horner sum a_d p^d + a_{d-1} p^{d-1} q + ...
    so only integer arithmetic is involved.
    """
    num, den = x.numerator, x.denominator
    acc = 0
    qpow = 1
    for c in reversed(p):
        acc = acc * num + c * qpow
        qpow *= den
    return (acc > 0) - (acc < 0)


def pseudo_rem_signed(f: list, g: list) -> list:
    """Primitive remainder of f by g, scaled by a positive constant.

    Classical pseudo-division, but every elimination step that multiplies
    by a negative leading coefficient is sign-corrected, so the result is
    a positive multiple of rem(f, g); content is stripped at the end.
    """
    r = f[:]
    dg = degree(g)
    lg = g[-1]
    flip = 1
    while True:
        strip(r)
        if not r or degree(r) < dg:
            break
        dr = degree(r)
        lr = r[-1]
        shift = dr - dg
        r = [lg * v for v in r]
        for i, gv in enumerate(g):
            r[shift + i] -= lr * gv
        r[dr] = 0
        if lg < 0:
            flip = -flip
    if not r:
        return []
    c = content(r)
    return [flip * v // c for v in r]


def gcd_poly(p: list, q: list) -> list:
    """Primitive gcd of two integer polynomials (positive leading coeff)."""
    a, b = primitive(strip(p[:])), primitive(strip(q[:]))
    if not a:
        return b
    if not b:
        return a
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        r = pseudo_rem_signed(a, b)
        a, b = b, r
    return a if a[-1] > 0 else [-v for v in a]


def exact_div(num: list, den: list) -> list:
    """Exact polynomial quotient num/den as a primitive integer list."""
    n = [Fraction(v) for v in num]
    d = [Fraction(v) for v in den]
    q = [Fraction(0)] * (len(n) - len(d) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = n[i + len(d) - 1] / d[-1]
        q[i] = c
        for j, dv in enumerate(d):
            n[i + j] -= c * dv
    if any(v != 0 for v in n):
        raise ArithmeticError("inexact polynomial division")
    return clear_denominators(q)


def square_free_part(p: list) -> list:
    """p / gcd(p, p'): same distinct roots, all simple."""
    p = primitive(strip(p[:]))
    if degree(p) <= 0:
        return p
    g = gcd_poly(p, derivative(p))
    if degree(g) == 0:
        return p
    return exact_div(p, g)


def sturm_chain(p: list) -> list:
    """Sturm chain of a square-free primitive integer polynomial."""
    p = primitive(strip(p[:]))
    chain = [p]
    if degree(p) >= 1:
        chain.append(primitive(derivative(p)))
        while degree(chain[-1]) >= 1:
            r = pseudo_rem_signed(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-v for v in r])
    return chain


def sign_variations(chain: list, x: Fraction) -> int:
    signs = [s for s in (sign_at(p, x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_halfopen(chain: list, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi] by Sturm's theorem."""
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def deflate_at(p: list, root: Fraction) -> list | None:
    """Divide by (x - root) if root is an exact root, else None."""
    acc = Fraction(0)
    out = []
    for c in reversed(p):
        acc = Fraction(c) + acc * root
        out.append(acc)
    if out[-1] != 0:
        return None
    out.pop()
    out.reverse()
    return clear_denominators(out)


def deflate_all(p: list, root: Fraction):
    """Strip every factor (x - root); returns (quotient, multiplicity)."""
    mult = 0
    while degree(p) >= 1:
        q = deflate_at(p, root)
        if q is None:
            break
        p = q
        mult += 1
    return p, mult


@lru_cache(maxsize=None)
def chebyshev_t(n: int) -> tuple:
    """Monomial coefficients (ascending) of cos(n*theta) in x = cos(theta)."""
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 1)
    a, b = (1,), (0, 1)
    for _ in range(n - 1):
        c = [0] + [2 * v for v in b]
        for i, v in enumerate(a):
            c[i] -= v
        a, b = b, tuple(c)
    return b


def monomial_to_chebyshev(p: list) -> list:
    """Exact Chebyshev-basis coefficients of an integer polynomial.

    Horner in the Chebyshev world, using x*T_k = (T_{k+1} + T_{|k-1|})/2.
    The huge cancellations between monomial coefficients happen in exact
    arithmetic here, so the result can be evaluated stably in floats on
    [-1, 1] (monomial evaluation of such polynomials is hopeless).
    """
    if not p:
        return []
    b = [Fraction(p[-1])]
    for c in reversed(p[:-1]):
        new = [Fraction(0)] * (len(b) + 1)
        for k, v in enumerate(b):
            h = v / 2
            if k == 0:
                new[1] += v
            else:
                new[k + 1] += h
                new[k - 1] += h
        new[0] += c
        b = new
    return b
