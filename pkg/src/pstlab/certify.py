"""Exact detection, counting, and refinement of early-state-exclusion events.

An ESE event is a time tau in (0, T) where the return amplitude vanishes.
Substituting x = cos t turns the integer-frequency cosine series into a
polynomial P with P(cos t) = A(t), so counting events reduces to counting
distinct roots of P in an open interval with rational endpoints, which a
Sturm sequence over exact rationals certifies outright.  Spectra without
an exact form fall back to a sign-scan of A with explicit reporting of
anything the scan cannot decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ratpoly as rp
from .dynamics import CosineSeries, amplitude_series, evaluate, sample
from .errors import (
    InvalidPolynomial,
    NonIntegerFrequency,
    NonIntegerSpectrum,
    NotAdmissible,
    NotIsolating,
    NumericUncertain,
)
from .reconstruct import compute_weights
from .spectrum import Spectrum, normalize, to_symmetric, validate_pst

SCAN_GRID = 10_000
NEAR_TANGENCY_TOL = 1e-9
ROOT_REFINE_TOL_X = 1e-12
ROOT_REFINE_TOL_T = 1e-10
_DYADIC = 2**30


@dataclass(frozen=True)
class RatPolynomial:
    """Dense polynomial with arbitrary-precision rational coefficients,
    ascending in degree, trailing zeros stripped."""

    coeffs: tuple

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        xf = Fraction(x)
        for c in reversed(self.coeffs):
            acc = acc * xf + c
        return acc


@dataclass(frozen=True)
class EseRoot:
    """One certified event: isolating time interval and refined time."""

    lo: float
    hi: float
    tau: float


@dataclass(frozen=True)
class EseReport:
    """Certified count of early exclusion events in (0, T)."""

    spectrum: tuple
    pst_time: float
    method: str           # "exact-sturm" | "numeric-scan"
    count: int
    roots: tuple

    def to_json_dict(self) -> dict:
        return {
            "spectrum": [float(v) for v in self.spectrum],
            "T": self.pst_time,
            "method": self.method,
            "count": self.count,
            "roots": [{"lo": r.lo, "hi": r.hi, "tau": r.tau} for r in self.roots],
        }


def cosine_to_poly(series: CosineSeries) -> RatPolynomial:
    """Polynomial P with P(cos t) = A(t) for an integer-frequency series."""
    freqs = []
    for f, _ in series.terms:
        fi = int(f)
        if fi != f or fi < 0:
            raise NonIntegerFrequency(f"frequency {f} is not a nonnegative integer")
        freqs.append(fi)
    deg = max(freqs, default=0)
    coeffs = [Fraction(0)] * (deg + 1)
    coeffs[0] += Fraction(series.c0)
    for fi, (_, c) in zip(freqs, series.terms):
        cf = Fraction(c)
        for i, tc in enumerate(rp.chebyshev_t(fi)):
            coeffs[i] += cf * tc
    return RatPolynomial(tuple(coeffs))


def multiplicity_at_minus_one(P: RatPolynomial) -> int:
    """Exact multiplicity of the factor (x + 1)."""
    if P.is_zero:
        raise InvalidPolynomial("zero polynomial")
    ints = rp.clear_denominators(P.coeffs)
    mult = 0
    while True:
        nxt = rp.deflate_at(ints, Fraction(-1))
        if nxt is None:
            return mult
        ints = nxt
        mult += 1
        if not ints:
            return mult


def _prepare(P: RatPolynomial, lo: Fraction, hi: Fraction):
    """Square-free polynomial with endpoint roots stripped, plus its chain.

    Roots at lo/hi are divided out with full multiplicity before the
    remainder sequence runs, so the common case (multiple root at an
    endpoint, simple roots inside) costs a single chain construction.
    Returns (s, chain); chain is None when s is constant.
    """
    if P.is_zero:
        raise InvalidPolynomial("zero polynomial")
    s = rp.clear_denominators(P.coeffs)
    for endpoint in (lo, hi):
        s, _ = rp.deflate_all(s, endpoint)
    if rp.degree(s) <= 0:
        return s, None
    while True:
        chain = rp.sturm_chain(s)
        if rp.degree(chain[-1]) <= 0:
            return s, chain
        s = rp.exact_div(s, chain[-1])


def count_roots_open_interval(P: RatPolynomial, lo, hi) -> int:
    """Number of distinct real roots of P strictly inside (lo, hi).

    Exact: square-free reduction, endpoint roots divided out, then a Sturm
    sign-variation count with primitive-part pseudo-remainders throughout.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi})")
    s, chain = _prepare(P, lo, hi)
    if chain is None:
        return 0
    return rp.count_roots_halfopen(chain, lo, hi)


def isolate_roots(P: RatPolynomial, lo, hi) -> list:
    """Disjoint rational intervals isolating every distinct root in (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    s, chain = _prepare(P, lo, hi)
    if chain is None:
        return []
    total = rp.count_roots_halfopen(chain, lo, hi)
    if total == 0:
        return []
    guided = _float_guided_brackets(s, lo, hi, total)
    if guided is not None:
        return guided
    return _sturm_bisect(chain, s, lo, hi)


def _cheb_float(s):
    """Scaled float Chebyshev coefficients of s, or None if unrepresentable.

    The basis change happens exactly, so the gigantic cancellations between
    monomial coefficients never reach floating point; evaluation via
    chebval is then stable on [-1, 1].
    """
    try:
        coeffs = np.array([float(v) for v in rp.monomial_to_chebyshev(s)], dtype=float)
    except OverflowError:
        return None
    scale = np.abs(coeffs).max()
    if not np.isfinite(scale) or scale == 0:
        return None
    return coeffs / scale


def _float_guided_brackets(s, lo: Fraction, hi: Fraction, total: int, cheb=None):
    """Try cheap bracketing from a float scan, certified by exact signs.

    The grid is cosine-spaced to match the root clustering near the
    interval ends.  Returns None when the scan cannot account for every
    Sturm-counted root; the caller then falls back to exact bisection.
    """
    if not (-1 <= lo and hi <= 1):
        return None
    if cheb is None:
        cheb = _cheb_float(s)
    if cheb is None:
        return None
    theta = np.linspace(math.acos(min(1.0, float(hi))), math.acos(max(-1.0, float(lo))),
                        max(32 * (len(s) + 2), 2048))[1:-1]
    grid = np.cos(theta)[::-1]  # ascending in x, strictly inside (lo, hi)
    vals = np.polynomial.chebyshev.chebval(grid, cheb)
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if len(idx) != total:
        return None
    brackets = []
    for i in idx:
        a = Fraction(math.floor(grid[i] * _DYADIC), _DYADIC)
        b = Fraction(math.ceil(grid[i + 1] * _DYADIC), _DYADIC)
        a, b = max(a, lo), min(b, hi)
        sa, sb = rp.sign_at(s, a), rp.sign_at(s, b)
        if sa == 0 or sb == 0 or sa == sb:
            return None
        brackets.append((a, b))
    for (_, b1), (a2, _) in zip(brackets, brackets[1:]):
        if not b1 <= a2:
            return None
    if brackets and (brackets[0][0] <= lo or brackets[-1][1] >= hi):
        return None
    return brackets


def _sturm_bisect(chain, s, lo: Fraction, hi: Fraction):
    """Exact root isolation by recursive Sturm counts; always correct."""
    out = []
    v_lo, v_hi = rp.sign_variations(chain, lo), rp.sign_variations(chain, hi)
    stack = [(lo, hi, v_lo, v_hi)]
    while stack:
        a, b, va, vb = stack.pop()
        cnt = va - vb
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if rp.sign_at(s, mid) == 0:
            delta = (b - a) / 4
            while True:
                l2, r2 = mid - delta, mid + delta
                if (rp.sign_at(s, l2) != 0 and rp.sign_at(s, r2) != 0):
                    vl2, vr2 = rp.sign_variations(chain, l2), rp.sign_variations(chain, r2)
                    if vl2 - vr2 == 1:
                        break
                delta /= 2
            out.append((l2, r2))
            stack.append((a, l2, va, vl2))
            stack.append((r2, b, vr2, vb))
        else:
            vm = rp.sign_variations(chain, mid)
            stack.append((a, mid, va, vm))
            stack.append((mid, b, vm, vb))
    out.sort(key=lambda iv: iv[0])
    return out


def refine_root(P: RatPolynomial, interval) -> float:
    """Refine the single root in the interval and map it to a time.

    Verifies with a Sturm count that the interval isolates exactly one
    root, bisects with exact sign tests to width 1e-12 in x, and returns
    tau = arccos(x) in (0, pi).
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    s, chain = _prepare(P, lo, hi)
    if chain is None:
        raise NotIsolating("polynomial has no roots at all")
    if rp.count_roots_halfopen(chain, lo, hi) != 1:
        raise NotIsolating(f"({lo}, {hi}) does not isolate exactly one root")
    x = _refine_x(s, _cheb_float(s), lo, hi)
    return math.acos(max(-1.0, min(1.0, x)))


def _refine_x(s, cheb, lo: Fraction, hi: Fraction) -> float:
    """Root of s in (lo, hi) to within 1e-12 in x, exactly certified.

    A float bisection on the stable Chebyshev form proposes a tiny dyadic
    bracket whose endpoint signs are then checked exactly; if floats lied
    (or overflowed), fall back to exact bisection all the way down.
    """
    sa = rp.sign_at(s, lo)
    if cheb is not None and -1 <= lo and hi <= 1:
        f_lo, f_hi = float(lo), float(hi)
        for _ in range(64):
            if f_hi - f_lo <= 0.25 * ROOT_REFINE_TOL_X:
                break
            mid = 0.5 * (f_lo + f_hi)
            vm = float(np.polynomial.chebyshev.chebval(mid, cheb))
            if (vm > 0) - (vm < 0) == sa:
                f_lo = mid
            else:
                f_hi = mid
        pad = 0.25 * ROOT_REFINE_TOL_X
        den = 2**45
        a2 = max(Fraction(math.floor((f_lo - pad) * den), den), lo)
        b2 = min(Fraction(math.ceil((f_hi + pad) * den), den), hi)
        if (float(b2 - a2) <= 2 * ROOT_REFINE_TOL_X
                and rp.sign_at(s, a2) == sa and rp.sign_at(s, b2) == -sa):
            return float((a2 + b2) / 2)
    return _bisect_exact(s, lo, hi, sa)


def _bisect_exact(s, lo: Fraction, hi: Fraction, sa: int) -> float:
    while float(hi - lo) > ROOT_REFINE_TOL_X:
        mid = (lo + hi) / 2
        sm = rp.sign_at(s, mid)
        if sm == 0:
            return float(mid)
        if sm == sa:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


# ---------------------------------------------------------------------------
# Event detection
# ---------------------------------------------------------------------------

def detect_ese(spectrum: Spectrum, method: str = "auto", grid: int = SCAN_GRID) -> EseReport:
    """Count and locate return-amplitude zeros strictly before the PST time.

    Integer-commensurable symmetric spectra are certified exactly (the
    spectrum is normalized first; counts are invariant under scaling and
    translation, times map back by the scale factor).  Everything else is
    scanned numerically on a dense grid with bisection refinement; a
    near-tangency the scan cannot classify raises NumericUncertain rather
    than being silently counted or dropped.
    """
    if method not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown method {method!r}")
    info = validate_pst(spectrum)
    if not info.admissible:
        raise NotAdmissible(f"spectrum {spectrum.values} does not admit PST")
    t_first = info.first_time

    norm_spec, scale, _shift = normalize(spectrum)
    scale = float(scale)
    exact_possible = norm_spec.is_integer and norm_spec.is_symmetric
    if method == "exact" and not exact_possible:
        raise NonIntegerSpectrum("no exact integer symmetric normal form within tolerance")

    if method != "numeric" and exact_possible:
        return _detect_exact(spectrum, norm_spec, scale, t_first)
    return _detect_numeric(spectrum, norm_spec, t_first, grid)


def _detect_exact(spectrum, norm_spec, scale, t_first) -> EseReport:
    sym = to_symmetric(norm_spec)
    norm_info = validate_pst(norm_spec)
    t_norm = norm_info.first_time
    # normalized coprime spectra have T = pi (odd order) or pi/2 (even order)
    if abs(t_norm - math.pi) < 1e-12:
        x_lo = Fraction(-1)
    elif abs(t_norm - math.pi / 2) < 1e-12:
        x_lo = Fraction(0)
    else:
        return _detect_numeric(spectrum, norm_spec, t_first, SCAN_GRID)
    x_hi = Fraction(1)

    series = amplitude_series(sym)
    poly = cosine_to_poly(series)
    s, chain = _prepare(poly, x_lo, x_hi)
    roots = []
    if chain is not None:
        total = rp.count_roots_halfopen(chain, x_lo, x_hi)
        if total:
            cheb = _cheb_float(s)
            intervals = _float_guided_brackets(s, x_lo, x_hi, total, cheb=cheb)
            if intervals is None:
                intervals = _sturm_bisect(chain, s, x_lo, x_hi)
            for (a, b) in intervals:
                x = _refine_x(s, cheb, a, b)
                tau_norm = math.acos(max(-1.0, min(1.0, x)))
                # cos is decreasing: the upper x endpoint is the earlier time
                t_lo = math.acos(min(1.0, float(b))) / scale
                t_hi = math.acos(max(-1.0, float(a))) / scale
                roots.append(EseRoot(t_lo, t_hi, tau_norm / scale))
    roots.sort(key=lambda r: r.tau)
    return EseReport(spectrum.values, t_first, "exact-sturm", len(roots), tuple(roots))


def _detect_numeric(spectrum, centered, t_first, grid) -> EseReport:
    if centered.is_symmetric:
        series = amplitude_series(to_symmetric(centered))
        ts = np.linspace(0.0, t_first, grid + 1)
        vals = sample(series, ts)
        brackets = _scan_signed(ts, vals, t_first)
        roots = []
        for (a, b) in brackets:
            a, b, tau = _bisect_float(lambda t: evaluate(series, t), a, b)
            roots.append(EseRoot(a, b, tau))
        roots.sort(key=lambda r: r.tau)
        return EseReport(spectrum.values, t_first, "numeric-scan", len(roots), tuple(roots))

    # complex amplitude: zeros of |A| cannot change sign, so any candidate
    # is a tangency the scan cannot certify
    weights = compute_weights(centered)
    w = np.array([float(x) for x in weights.w])
    w /= w.sum()
    lam = np.array([float(v) for v in weights.nodes])
    ts = np.linspace(0.0, t_first, grid + 1)
    amp = np.exp(-1j * np.outer(ts, lam)) @ w
    mag = np.abs(amp)
    interior = mag[1:-1]
    small = interior < NEAR_TANGENCY_TOL
    if small.any():
        runs = _runs(small)
        for i0, i1 in runs:
            if i0 == 0 or i1 == len(interior) - 1:
                continue  # endpoint artifact of the boundary zeros
            raise NumericUncertain(
                f"|A| < {NEAR_TANGENCY_TOL} near t={ts[1 + i0]:.6g} without a sign change")
    return EseReport(spectrum.values, t_first, "numeric-scan", 0, ())


def _scan_signed(ts, vals, t_first):
    """Sign-change brackets from a grid scan of a real amplitude.

    Grid values inside the near-tangency band are classified by the signed
    neighbors around each run: opposite signs bracket one crossing, equal
    signs raise NumericUncertain, and runs touching t=0 or t=T belong to
    the boundary zeros of the amplitude itself.
    """
    interior_t = ts[1:-1]
    interior_v = vals[1:-1]
    zeroish = np.abs(interior_v) < NEAR_TANGENCY_TOL
    sgn = np.sign(interior_v)

    brackets = []
    n = len(interior_v)
    # crossings between adjacent clearly-signed points
    for i in range(n - 1):
        if not zeroish[i] and not zeroish[i + 1] and sgn[i] * sgn[i + 1] < 0:
            brackets.append((interior_t[i], interior_t[i + 1]))
    for i0, i1 in _runs(zeroish):
        if i0 == 0 or i1 == n - 1:
            continue
        left, right = sgn[i0 - 1], sgn[i1 + 1]
        if left * right < 0:
            brackets.append((interior_t[i0 - 1], interior_t[i1 + 1]))
        else:
            tmid = interior_t[(i0 + i1) // 2]
            raise NumericUncertain(
                f"|A| < {NEAR_TANGENCY_TOL} near t={tmid:.6g} without a sign change")
    return brackets


def _runs(mask):
    """Maximal runs of True as (first, last) index pairs."""
    out = []
    start = None
    for i, m in enumerate(mask):
        if m and start is None:
            start = i
        elif not m and start is not None:
            out.append((start, i - 1))
            start = None
    if start is not None:
        out.append((start, len(mask) - 1))
    return out


def _bisect_float(f, a, b):
    fa = f(a)
    while b - a > ROOT_REFINE_TOL_T:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid - ROOT_REFINE_TOL_T, mid + ROOT_REFINE_TOL_T, mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return a, b, 0.5 * (a + b)
