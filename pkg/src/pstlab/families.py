"""Infinite families of order-7 chains with and without early exclusion.

Two one-parameter families of symmetric integer spectra are built in:

* ``family_no_ese(m)``: {0, ±1, ±2m, ±(2m+1)} — no exclusion events.
* ``family_ese(m)``: {0, ±(2m+1), ±(2m+2), ±(2m+3)} — exactly 2m events.

Alongside the generators live the analytic checkers that pin down the
families' behavior (explicit amplitude, alternating test points, exact
derivative signs at the transfer time, the cubic Taylor minorant, the
sine-difference bound) and a scanner for the conjectured divisibility
criterion on general coprime spectra.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .certify import cosine_to_poly, count_roots_open_interval, detect_ese
from .dynamics import amplitude_series
from .errors import NonIntegerSpectrum
from .spectrum import SymmetricSpectrum

DERIVATIVE_ORDERS = (6, 8, 10, 12)


@dataclass(frozen=True)
class FamilyCase:
    """One member of a built-in family with its certified expectation."""

    m: int
    spectrum: SymmetricSpectrum
    expected_ese: int


@dataclass(frozen=True)
class TestPoint:
    """Amplitude test point t_k with its predicted sign (and exact value
    at even k, where A(t_{2l}) = (1 + cos(l pi/(m+1)))/2)."""

    k: int
    t: float
    predicted_sign: int
    predicted_value: float | None = None


@dataclass(frozen=True)
class ScanRecord:
    """Scanner row: positive spectrum (a, b, c), divisibility of b, c by a,
    certified event count, and whether the pair agrees with the conjectured
    equivalence (no events iff divisible)."""

    a: int
    b: int
    c: int
    divisible: bool
    ese_count: int

    @property
    def agrees_with_conjecture(self) -> bool:
        return self.divisible != (self.ese_count > 0)


def family_no_ese(m: int) -> FamilyCase:
    """Spectrum {0, ±1, ±2m, ±(2m+1)}: transfer at pi, no exclusion."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return FamilyCase(m, SymmetricSpectrum((1, 2 * m, 2 * m + 1), True), 0)


def family_ese(m: int) -> FamilyCase:
    """Spectrum {0, ±(2m+1), ±(2m+2), ±(2m+3)}: exactly 2m exclusions."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return FamilyCase(m, SymmetricSpectrum((2 * m + 1, 2 * m + 2, 2 * m + 3), True), 2 * m)


def no_ese_family_amplitude(m: int, t):
    """Explicit return amplitude of the no-exclusion family.

    A(t) = [m(1+2m)(1+4m)(cos t + 1) + m(2m-1)(cos((2m+1)t) + 1)
            + (1+m)(1+2m)(cos 2mt - 1)] / (16 m^2 (1+m)).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    t = np.asarray(t, dtype=float) if not np.isscalar(t) else t
    num = (m * (1 + 2 * m) * (1 + 4 * m) * (np.cos(t) + 1.0)
           + m * (2 * m - 1) * (np.cos((2 * m + 1) * t) + 1.0)
           + (1 + m) * (1 + 2 * m) * (np.cos(2 * m * t) - 1.0))
    return num / (16.0 * m * m * (1 + m))


def ese_family_test_points(m: int) -> list:
    """Sign-alternating test points t_k = k pi/(2m+2), k = 0..2m-1.

    Even k = 2l carries the exact value (1 + cos(l pi/(m+1)))/2 > 0; every
    odd k has negative amplitude, forcing 2m sign changes before the
    transfer time.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    points = []
    for k in range(2 * m):
        t = k * math.pi / (2 * m + 2)
        if k % 2 == 0:
            l = k // 2
            value = 0.5 * (1.0 + math.cos(l * math.pi / (m + 1)))
            points.append(TestPoint(k, t, +1, value))
        else:
            points.append(TestPoint(k, t, -1, None))
    return points


def even_derivative_at_pst_time(spec: SymmetricSpectrum, order: int) -> Fraction:
    """Exact derivative A^(order)(pi) for an integer symmetric spectrum.

    Differentiating the cosine series 2n times and evaluating at pi gives
    (-1)^n sum_k c_k l_k^{2n} (-1)^{l_k}; odd orders vanish identically.
    """
    if not spec.is_integer:
        raise NonIntegerSpectrum("exact derivatives need an integer spectrum")
    if order % 2 == 1:
        return Fraction(0)
    series = amplitude_series(spec)
    n = order // 2
    acc = Fraction(series.c0) if order == 0 else Fraction(0)
    for f, c in series.terms:
        acc += Fraction(c) * f**order * (-1 if f % 2 else 1)
    return acc * (-1) ** n


def even_derivative_signs(spec: SymmetricSpectrum) -> tuple:
    """Signs of A^(6), A^(8), A^(10), A^(12) at the transfer time pi.

    For both built-in families (and, empirically, every coprime odd-gap
    symmetric integer spectrum) the pattern is (+, -, +, -).
    """
    signs = []
    for order in DERIVATIVE_ORDERS:
        d = even_derivative_at_pst_time(spec, order)
        signs.append((d > 0) - (d < 0))
    return tuple(signs)


@dataclass(frozen=True)
class TaylorMinorantResult:
    """Outcome of the cubic-minorant argument, with diagnostics."""

    ok: bool
    details: dict

    def __bool__(self) -> bool:
        return self.ok


def taylor_minorant_check(m: int) -> TaylorMinorantResult:
    """Check the cubic minorant argument for the no-exclusion family.

    Builds R(x) = A^(6)(pi)/6! + A^(8)(pi)/8! x + A^(10)(pi)/10! x^2
    + A^(12)(pi)/12! x^3 in exact rationals and verifies: R' has negative
    leading coefficient and negative discriminant (so R is strictly
    decreasing), R(0) > 0 (so R has a single positive real root), and
    R((2pi/(2m+1))^2) > 0, which places the minorant's only zero after the
    amplitude interval of interest.
    """
    spec = family_no_ese(m).spectrum
    d = {order: even_derivative_at_pst_time(spec, order) for order in DERIVATIVE_ORDERS}
    r = [d[6] / math.factorial(6), d[8] / math.factorial(8),
         d[10] / math.factorial(10), d[12] / math.factorial(12)]
    lead_neg = r[3] < 0
    disc = (2 * r[2]) ** 2 - 4 * r[1] * (3 * r[3])
    disc_neg = disc < 0
    r0_pos = r[0] > 0

    # single numeric root of the (strictly decreasing) cubic
    rf = [float(v) for v in r]
    hi = 1.0
    while rf[0] + rf[1] * hi + rf[2] * hi * hi + rf[3] * hi**3 > 0:
        hi *= 2.0
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = rf[0] + rf[1] * mid + rf[2] * mid * mid + rf[3] * mid**3
        if val > 0:
            lo = mid
        else:
            hi = mid
    x0 = 0.5 * (lo + hi)

    u = (2.0 * math.pi / (2 * m + 1)) ** 2
    r_at_u = rf[0] + rf[1] * u + rf[2] * u * u + rf[3] * u**3
    ok = lead_neg and disc_neg and r0_pos and r_at_u > 0
    return TaylorMinorantResult(ok, {
        "derivatives": d,
        "cubic": r,
        "discriminant": disc,
        "root": x0,
        "boundary_point": u,
        "value_at_boundary": r_at_u,
    })


def sine_difference_bound_holds(m: int, s: float, tol: float = 1e-12) -> bool:
    """|sin(2ms) - sin((2m+1)s)| <= 2 sin(s/2) for s in [0, 2pi]."""
    return abs(math.sin(2 * m * s) - math.sin((2 * m + 1) * s)) <= 2.0 * math.sin(s / 2.0) + tol


def verify_family(case: FamilyCase):
    """Run the certified detector on a family member.

    Returns (report, ok) with ok true when the certified count equals the
    family's expectation.
    """
    report = detect_ese(case.spectrum.to_spectrum())
    return report, report.count == case.expected_ese


# ---------------------------------------------------------------------------
# Divisibility conjecture scanner
# ---------------------------------------------------------------------------

def admissible_triples(z_max: int) -> list:
    """Coprime 0 < a < b < c <= z_max with a, b-a, c-b all odd.

    The gap list of {0, ±a, ±b, ±c} is (c-b, b-a, a, a, b-a, c-b), so these
    are exactly the coprime order-7 symmetric spectra that transfer at pi.
    """
    if z_max < 3:
        raise ValueError("z_max must be >= 3")
    out = []
    for a in range(1, z_max + 1, 2):
        for b in range(a + 1, z_max + 1):
            if (b - a) % 2 == 0:
                continue
            for c in range(b + 1, z_max + 1):
                if (c - b) % 2 == 0:
                    continue
                if math.gcd(math.gcd(a, b), c) == 1:
                    out.append((a, b, c))
    return out


def _scan_one(triple) -> ScanRecord:
    a, b, c = triple
    series = amplitude_series(SymmetricSpectrum((a, b, c), True))
    count = count_roots_open_interval(cosine_to_poly(series), -1, 1)
    divisible = (b % a == 0) and (c % a == 0)
    return ScanRecord(a, b, c, divisible, count)


def conjecture_scan(z_max: int, workers: int | None = None) -> list:
    """Exact event counts for every admissible coprime triple up to z_max.

    Output is in lexicographic (a, b, c) order regardless of execution
    order.  ``workers`` defaults to the PSTLAB_THREADS environment variable
    (serial when unset); counts come from the exact Sturm path, so records
    are certificates, not samples.
    """
    triples = admissible_triples(z_max)
    if workers is None:
        workers = int(os.environ.get("PSTLAB_THREADS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_scan_one, triples, chunksize=8))
    else:
        records = [_scan_one(t) for t in triples]
    records.sort(key=lambda r: (r.a, r.b, r.c))
    return records


def counterexamples(records) -> list:
    """Records violating the conjectured divisibility criterion."""
    return [r for r in records if not r.agrees_with_conjecture]


def scan_to_csv(records, fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(["a", "b", "c", "divisible", "ese_count", "agrees"])
    for r in records:
        writer.writerow([r.a, r.b, r.c, int(r.divisible), r.ese_count,
                         int(r.agrees_with_conjecture)])


def scan_records_json(records) -> list:
    return [{"a": r.a, "b": r.b, "c": r.c, "divisible": r.divisible,
             "ese_count": r.ese_count, "agrees": r.agrees_with_conjecture}
            for r in records]
