"""Eigenvalue spectra: validation, symmetry, and PST admissibility.

A spectrum is a strictly increasing list of real eigenvalues.  A Jacobi
matrix built from it realizes perfect state transfer (PST) at time T
exactly when every consecutive gap is an odd integer multiple of pi/T,
so admissibility reduces to a parity test on the gaps.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import NonSimpleSpectrum, NotSymmetric

# Absolute tolerance for duplicate/symmetry tests on real-valued spectra;
# integer spectra are handled exactly.
DUPLICATE_TOL = 1e-12
SYMMETRY_TOL = 1e-12
# Relative tolerance for deciding that real gaps share a common unit.
COMMENSURABILITY_RTOL = 1e-9
# Largest denominator tried when fitting gap ratios by rationals.
_MAX_RATIO_DENOMINATOR = 10**6
# Largest integer allowed in a fitted rational form.  Keeps excellent
# rational approximants of irrational ratios (e.g. 103993/33102 for pi)
# from masquerading as commensurable structure within tolerance.
_MAX_FITTED_MAGNITUDE = 10**4


def _as_number(v):
    """Coerce exactly integral floats to int; leave everything else alone."""
    if isinstance(v, bool):
        raise TypeError("eigenvalues must be numbers, not bool")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else v
    f = float(v)
    if math.isfinite(f) and f == int(f) and abs(f) < 2**53:
        return int(f)
    if not math.isfinite(f):
        raise ValueError(f"eigenvalue {v!r} is not finite")
    return f


@dataclass(frozen=True)
class Spectrum:
    """Strictly increasing simple spectrum with symmetry/integrality flags."""

    values: tuple
    is_integer: bool = field(init=False)
    is_symmetric: bool = field(init=False)

    def __post_init__(self):
        vals = sorted(_as_number(v) for v in self.values)
        if len(vals) < 2:
            raise ValueError("a spectrum needs at least 2 eigenvalues")
        scale = max(abs(float(v)) for v in vals)
        tol = DUPLICATE_TOL * max(1.0, scale)
        for a, b in zip(vals, vals[1:]):
            if float(b) - float(a) <= (0 if _all_exact(vals) else tol):
                raise NonSimpleSpectrum(f"duplicate eigenvalues near {a}")
        object.__setattr__(self, "values", tuple(vals))
        object.__setattr__(self, "is_integer", all(isinstance(v, int) for v in vals))
        object.__setattr__(self, "is_symmetric", _is_symmetric(vals))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def gaps(self) -> tuple:
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))


def _all_exact(vals) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in vals)


def _is_symmetric(vals) -> bool:
    n = len(vals)
    if _all_exact(vals):
        return all(vals[j] + vals[n - 1 - j] == 0 for j in range(n))
    scale = max(1.0, max(abs(float(v)) for v in vals))
    return all(abs(float(vals[j]) + float(vals[n - 1 - j])) <= SYMMETRY_TOL * scale
               for j in range(n))


@dataclass(frozen=True)
class SymmetricSpectrum:
    """Positive half of a symmetric spectrum, plus whether zero is present."""

    positive_part: tuple
    includes_zero: bool

    def __post_init__(self):
        pos = tuple(_as_number(v) for v in self.positive_part)
        if not pos:
            raise ValueError("positive part must be nonempty")
        if any(float(v) <= 0 for v in pos):
            raise ValueError("positive part must contain positive values only")
        if any(float(b) - float(a) <= 0 for a, b in zip(pos, pos[1:])):
            raise NonSimpleSpectrum("positive part must be strictly increasing")
        object.__setattr__(self, "positive_part", pos)

    @property
    def is_integer(self) -> bool:
        return all(isinstance(v, int) for v in self.positive_part)

    @property
    def order(self) -> int:
        return 2 * len(self.positive_part) + (1 if self.includes_zero else 0)

    def to_spectrum(self) -> Spectrum:
        vals = [-v for v in reversed(self.positive_part)]
        if self.includes_zero:
            vals.append(0)
        vals.extend(self.positive_part)
        return Spectrum(tuple(vals))


@dataclass(frozen=True)
class PstInfo:
    """Outcome of the PST admissibility test.

    ``gap_multipliers`` are the odd integers n'_k with gap_k = n'_k * pi/T.
    ``phase_hint`` is the phase the transfer amplitude should acquire at T,
    predicted from the eigenvalue ladder alone.
    """

    admissible: bool
    first_time: float | None = None
    gap_multipliers: tuple = ()
    phase_hint: float | None = None


def validate_pst(spectrum: Spectrum) -> PstInfo:
    """Decide PST admissibility and the earliest transfer time.

    Every eigenvalue gap must be an odd multiple of a common unit d; the
    earliest time is then T = pi/d with d maximal (d = gcd of the gaps).
    Integer spectra are decided exactly; real spectra within relative
    tolerance ``COMMENSURABILITY_RTOL``.
    """
    vals = spectrum.values
    if spectrum.is_integer:
        gaps = [int(g) for g in spectrum.gaps]
        d = 0
        for g in gaps:
            d = gcd(d, g)
        mult = [g // d for g in gaps]
        if any(m % 2 == 0 for m in mult):
            return PstInfo(admissible=False)
        t_first = math.pi / d
        return PstInfo(True, t_first, tuple(mult), _phase_hint(vals, t_first))

    gaps = [float(g) for g in spectrum.gaps]
    fit = _common_unit(gaps)
    if fit is None:
        return PstInfo(admissible=False)
    d, mult = fit
    if any(m % 2 == 0 for m in mult):
        return PstInfo(admissible=False)
    t_first = math.pi / d
    return PstInfo(True, t_first, tuple(mult), _phase_hint(vals, t_first))


def _common_unit(gaps):
    """Largest d with gap_k = m_k * d, m_k positive integers, within tolerance."""
    ref = gaps[0]
    ratios = []
    for g in gaps:
        r = Fraction(g / ref).limit_denominator(_MAX_RATIO_DENOMINATOR)
        if r <= 0 or abs(g - float(r) * ref) > COMMENSURABILITY_RTOL * g:
            return None
        ratios.append(r)
    den = 1
    for r in ratios:
        den = lcm(den, r.denominator)
    counts = [int(r * den) for r in ratios]
    g_all = 0
    for c in counts:
        g_all = gcd(g_all, c)
    unit = (ref / den) * g_all
    mult = [c // g_all for c in counts]
    if max(mult) > _MAX_FITTED_MAGNITUDE:
        return None
    for g, m in zip(gaps, mult):
        if abs(g - m * unit) > COMMENSURABILITY_RTOL * g:
            return None
    return unit, mult


def _phase_hint(vals, t_first: float) -> float:
    # e^{-iJT} e_0 = e^{i phi} e_N with phi = -mu_0 T + N pi (mod 2 pi),
    # from substituting the gap condition into the spectral expansion.
    n = len(vals)
    phi = -float(vals[0]) * t_first + (n - 1) * math.pi
    phi = math.remainder(phi, 2 * math.pi)
    return phi


def normalize(spectrum: Spectrum):
    """Center a spectrum and rescale it to coprime integer form when possible.

    Returns ``(normalized, scale, shift)`` with
    ``original = scale * normalized + shift``.  The shift is the spectral
    mean, so a symmetric spectrum maps to exact +/- pairs.  When the
    centered values admit a rational rescaling, the result has integer
    entries with overall content 1; otherwise the centered spectrum is
    returned unchanged with scale 1.
    """
    vals = spectrum.values
    n = len(vals)
    if _all_exact(vals):
        mean = Fraction(sum(Fraction(v) for v in vals), n)
        centered = [Fraction(v) - mean for v in vals]
        den = 1
        for c in centered:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in centered]
        g = 0
        for v in ints:
            g = gcd(g, v)
        scale = Fraction(g, den)
        out = Spectrum(tuple(v // g for v in ints))
        return out, _simplify(scale), _simplify(mean)

    mean = sum(float(v) for v in vals) / n
    centered = [float(v) - mean for v in vals]
    fit = _rational_form(centered)
    if fit is None:
        return Spectrum(tuple(centered)), 1.0, mean
    ints, scale = fit
    return Spectrum(tuple(ints)), scale, mean


def _simplify(x: Fraction):
    return int(x) if x.denominator == 1 else x


def _rational_form(centered):
    """Integer spectrum with content 1 matching ``centered`` up to scale."""
    scale0 = max(abs(c) for c in centered)
    ref = next(c for c in centered if abs(c) > 0.5 * scale0)
    ratios = []
    for c in centered:
        r = Fraction(c / ref).limit_denominator(_MAX_RATIO_DENOMINATOR)
        if abs(c - float(r) * ref) > COMMENSURABILITY_RTOL * scale0:
            return None
        ratios.append(r)
    den = 1
    for r in ratios:
        den = lcm(den, r.denominator)
    ints = [int(r * den) for r in ratios]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    if max(abs(v) for v in ints) > _MAX_FITTED_MAGNITUDE:
        return None
    if ints[0] > ints[-1]:
        ints = [-v for v in ints]
    nonzero = [(i, v) for i, v in zip(ints, centered) if i != 0]
    scale = sum(c * i for i, c in nonzero) / sum(i * i for i, _ in nonzero)
    if any(abs(i * scale - c) > COMMENSURABILITY_RTOL * scale0 for i, c in zip(ints, centered)):
        return None
    return ints, scale


def to_symmetric(spectrum: Spectrum) -> SymmetricSpectrum:
    """Split a symmetric spectrum into its positive part and zero flag."""
    if not spectrum.is_symmetric:
        raise NotSymmetric(f"spectrum {spectrum.values} is not symmetric about 0")
    vals = spectrum.values
    n = len(vals)
    positive = vals[(n + 1) // 2:]
    return SymmetricSpectrum(tuple(positive), includes_zero=(n % 2 == 1))


def parse_spectrum(text: str) -> Spectrum:
    """Parse the spectrum text format.

    Accepts a JSON array of numbers or a comma-separated list where a
    leading ``±`` (or ASCII ``+-``) expands to the pair of signed values,
    e.g. ``"0,±1,±4,±5"``.
    """
    text = text.strip()
    if text.startswith("["):
        return Spectrum(tuple(json.loads(text)))
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        pm = False
        if token.startswith("±"):
            pm, token = True, token[1:]
        elif token.startswith("+-") or token.startswith("-+"):
            pm, token = True, token[2:]
        v = float(token)
        if pm:
            if v <= 0:
                raise ValueError(f"'±' needs a positive value, got {token}")
            values.extend([v, -v])
        else:
            values.append(v)
    return Spectrum(tuple(values))
