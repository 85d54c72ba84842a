"""Time evolution of a single excitation on the chain.

The return amplitude of the first site is A(t) = <e^{-iJt} e_0, e_0>.
For a symmetric spectrum it is a real cosine series
A(t) = c_0 + sum_k c_k cos(l_k t) whose coefficients are normalized
products over squared eigenvalues; the end-to-end amplitude follows from
the eigendecomposition.  Three independent evaluation paths (series,
order-7 closed form, eigendecomposition) cross-check each other in tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .reconstruct import JacobiMatrix, compute_weights
from .spectrum import Spectrum, SymmetricSpectrum
from .trieig import EigenDecomposition, boundary_components, eigen_tridiagonal

SERIES_SUM_TOL = 1e-12


@dataclass(frozen=True)
class CosineSeries:
    """Return amplitude c0 + sum c_k cos(l_k t); coefficients are
    nonnegative with total mass 1, exact rationals in exact mode."""

    c0: object
    terms: tuple          # ((frequency, coefficient), ...) ascending in frequency
    exact: bool = False

    def __post_init__(self):
        freqs = [f for f, _ in self.terms]
        if any(float(f) <= 0 for f in freqs):
            raise ValueError("frequencies must be positive")
        if any(float(b) <= float(a) for a, b in zip(freqs, freqs[1:])):
            raise ValueError("frequencies must be strictly increasing")
        total = self.c0 + sum(c for _, c in self.terms)
        if self.exact:
            if total != 1:
                raise ValueError(f"coefficients sum to {total}, expected 1")
        elif abs(float(total) - 1.0) > SERIES_SUM_TOL:
            raise ValueError(f"coefficients sum to {float(total)}, expected 1")

    @property
    def frequencies(self) -> tuple:
        return tuple(f for f, _ in self.terms)

    @property
    def coefficients(self) -> tuple:
        return tuple(c for _, c in self.terms)


@dataclass(frozen=True)
class TransferSeries:
    """End-to-end amplitude f(t) = sum_j m_j e^{-i l_j t} with
    m_j = v_j[0] v_j[n-1]."""

    terms: tuple          # ((eigenvalue, m_j), ...) ascending in eigenvalue


def amplitude_series(spec: SymmetricSpectrum) -> CosineSeries:
    """Cosine series of the return amplitude for a symmetric spectrum.

    The coefficient at frequency l_k is proportional to
    prod_{i != k} 1/|l_k^2 - l_i^2| over all distinct squared eigenvalues
    (including 0 when present), normalized to total mass 1.  Exact
    rationals for integer spectra, floats otherwise.
    """
    pos = spec.positive_part
    if spec.is_integer:
        sq = [v * v for v in pos]
        us = []
        if spec.includes_zero:
            prod = 1
            for s in sq:
                prod *= s
            us.append(Fraction(1, prod))
        for j, sj in enumerate(sq):
            prod = sj if spec.includes_zero else pos[j]
            for i, si in enumerate(sq):
                if i != j:
                    prod *= abs(sj - si)
            us.append(Fraction(1, prod))
        total = sum(us)
        cs = [u / total for u in us]
        c0 = cs[0] if spec.includes_zero else Fraction(0)
        terms = tuple(zip(pos, cs[1:] if spec.includes_zero else cs))
        return CosineSeries(c0, terms, exact=True)

    sq = [float(v) * float(v) for v in pos]
    us = []
    if spec.includes_zero:
        us.append(math.exp(-sum(math.log(s) for s in sq)))
    for j, sj in enumerate(sq):
        logp = math.log(sj if spec.includes_zero else float(pos[j]))
        for i, si in enumerate(sq):
            if i != j:
                logp += math.log(abs(sj - si))
        us.append(math.exp(-logp))
    total = sum(us)
    cs = [u / total for u in us]
    c0 = cs[0] if spec.includes_zero else 0.0
    terms = tuple(zip((float(v) for v in pos), cs[1:] if spec.includes_zero else cs))
    return CosineSeries(c0, terms, exact=False)


def evaluate(series: CosineSeries, t: float) -> float:
    """Evaluate the cosine series at time t."""
    acc = float(series.c0)
    for f, c in series.terms:
        acc += float(c) * math.cos(float(f) * t)
    return acc


def sample(series: CosineSeries, ts: np.ndarray) -> np.ndarray:
    """Vectorized evaluation on a grid of times."""
    ts = np.asarray(ts, dtype=float)
    freqs = np.asarray([float(f) for f in series.frequencies])
    coefs = np.asarray([float(c) for c in series.coefficients])
    return float(series.c0) + np.cos(np.outer(ts, freqs)) @ coefs


def amplitude_closed_form(x: float, y: float, z: float, t) -> float:
    """Closed-form return amplitude for the order-7 chain with spectrum
    {0, ±x, ±y, ±z}, 0 < x < y < z."""
    if not (0 < x < y < z):
        raise DomainError(f"need 0 < x < y < z, got ({x}, {y}, {z})")
    x2, y2, z2 = x * x, y * y, z * z
    denom = 2.0 * y2 * (z2 - x2) * (x2 - y2 + z2)
    cos = np.cos if isinstance(t, np.ndarray) else math.cos
    num = ((y2 - x2) * (z2 - x2) * (z2 - y2)
           + y2 * z2 * (z2 - y2) * cos(x * t)
           + x2 * z2 * (z2 - x2) * cos(y * t)
           + x2 * y2 * (y2 - x2) * cos(z * t))
    return num / denom


def return_amplitude(spectrum: Spectrum, t: float) -> complex:
    """<e^{-iJt} e_0, e_0> for the matrix reconstructed from the spectrum.

    Computed from the spectral weights directly: the measure of (J, e_0)
    puts mass w_j / sum(w) at each eigenvalue.
    """
    weights = compute_weights(spectrum)
    w = [float(x) for x in weights.w]
    total = sum(w)
    return sum((wi / total) * cmath.exp(-1j * float(l) * t)
               for wi, l in zip(w, weights.nodes))


def transfer_series(J: JacobiMatrix, decomp: EigenDecomposition | None = None) -> TransferSeries:
    """Spectral form of the end-to-end amplitude."""
    if decomp is None:
        decomp = eigen_tridiagonal(J)
    first, last = boundary_components(decomp)
    m = first * last
    return TransferSeries(tuple(zip(decomp.values.tolist(), m.tolist())))


def transfer_amplitude(series: TransferSeries, t: float) -> complex:
    return sum(m * cmath.exp(-1j * l * t) for l, m in series.terms)


def verify_pst(J: JacobiMatrix, T: float):
    """Fidelity and phase of the end-to-end transfer at time T.

    PST holds when the fidelity is 1; report both so callers can apply
    their own tolerance.
    """
    f = transfer_amplitude(transfer_series(J), T)
    return abs(f), cmath.phase(f)


def frobenius_covariant(J: JacobiMatrix, j: int) -> np.ndarray:
    """Spectral projector onto the j-th eigenvalue via the product formula
    prod_{i != j} (J - l_i I)/(l_j - l_i).

    Deliberately avoids the eigenvectors so it can serve as an independent
    oracle for the spectral-decomposition path.
    """
    decomp = eigen_tridiagonal(J)
    lam = decomp.values
    n = J.n
    dense = J.to_dense()
    out = np.eye(n)
    for i in range(n):
        if i != j:
            out = out @ ((dense - lam[i] * np.eye(n)) / (lam[j] - lam[i]))
    return out


def probability_curves(J: JacobiMatrix, ts: np.ndarray):
    """Occupation probabilities of the first and last site over time.

    Returns (p_first, p_last) with p_first = |<e_0|psi(t)>|^2 and
    p_last = |<e_{n-1}|psi(t)>|^2 for psi(0) = e_0.
    """
    decomp = eigen_tridiagonal(J)
    first, last = boundary_components(decomp)
    phases = np.exp(-1j * np.outer(np.asarray(ts, dtype=float), decomp.values))
    amp_first = phases @ (first * first)
    amp_last = phases @ (first * last)
    return np.abs(amp_first) ** 2, np.abs(amp_last) ** 2


def write_plot_csv(path, ts, p_first, p_last) -> None:
    """Write the probability curves in the plot-data CSV format."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("t,p_first,p_last\n")
        for t, pf, pl in zip(ts, p_first, p_last):
            fh.write(f"{t:.17g},{pf:.17g},{pl:.17g}\n")
