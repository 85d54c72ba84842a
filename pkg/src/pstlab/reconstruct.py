"""Persymmetric Jacobi matrix reconstruction from a prescribed spectrum.

The spectrum determines spectral weights w_j = prod_{i != j} 1/|l_j - l_i|,
and the entries follow from the three-term recurrence of the polynomials
orthogonal under <f, g> = sum_j f(l_j) g(l_j) w_j.  Polynomials are
represented by their values at the spectral nodes; the recurrence is run
in orthonormal form so the norms stay O(1) regardless of order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BreakdownError, DomainError, NonSimpleSpectrum
from .spectrum import Spectrum, SymmetricSpectrum

PERSYMMETRY_TOL = 1e-12
# The recurrence has lost all meaning once a coupling is this small relative
# to the spectral scale: nearly colliding eigenvalues.
BREAKDOWN_RTOL = 1e-13


@dataclass(frozen=True)
class JacobiMatrix:
    """Symmetric tridiagonal matrix with positive off-diagonal entries."""

    diag: tuple
    offdiag: tuple

    def __post_init__(self):
        a = tuple(float(v) for v in self.diag)
        b = tuple(float(v) for v in self.offdiag)
        if len(b) != len(a) - 1:
            raise ValueError(f"offdiag length {len(b)} != diag length {len(a)} - 1")
        if any(v <= 0 for v in b):
            raise ValueError("off-diagonal entries must be positive")
        object.__setattr__(self, "diag", a)
        object.__setattr__(self, "offdiag", b)

    @property
    def n(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        m = np.diag(np.asarray(self.diag, dtype=float))
        b = np.asarray(self.offdiag, dtype=float)
        if len(b):
            idx = np.arange(len(b))
            m[idx, idx + 1] = b
            m[idx + 1, idx] = b
        return m

    def persymmetry_residual(self) -> float:
        """Max deviation from symmetry about the antidiagonal."""
        a, b = self.diag, self.offdiag
        ra = max((abs(a[i] - a[len(a) - 1 - i]) for i in range(len(a))), default=0.0)
        rb = max((abs(b[i] - b[len(b) - 1 - i]) for i in range(len(b))), default=0.0)
        return max(ra, rb)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "a": list(self.diag), "b": list(self.offdiag)}


@dataclass(frozen=True)
class Weights:
    """Spectral weights w_j at the nodes; exact rationals for integer nodes."""

    w: tuple
    nodes: tuple


def compute_weights(spectrum: Spectrum) -> Weights:
    """w_j = prod_{i != j} 1/|l_j - l_i|; rational when the spectrum is integer."""
    vals = spectrum.values
    if spectrum.is_integer:
        ws = []
        for j, lj in enumerate(vals):
            prod = 1
            for i, li in enumerate(vals):
                if i != j:
                    prod *= abs(lj - li)
            ws.append(Fraction(1, prod))
        return Weights(tuple(ws), vals)
    ws = []
    for j, lj in enumerate(vals):
        s = 0.0
        for i, li in enumerate(vals):
            if i != j:
                s += math.log(abs(float(lj) - float(li)))
        ws.append(math.exp(-s))
    return Weights(tuple(ws), vals)


def _log_weights(nodes: np.ndarray) -> np.ndarray:
    diff = np.abs(nodes[:, None] - nodes[None, :])
    np.fill_diagonal(diff, 1.0)
    return -np.sum(np.log(diff), axis=1)


def _stieltjes(nodes: np.ndarray, symmetric: bool):
    """Run the orthonormal three-term recurrence on the nodal measure.

    Only weight ratios matter for the recurrence coefficients, so the
    weights are normalized by their maximum in log space.  The recurrence
    vectors q_i[j] = p_i(l_j) sqrt(w_j) are kept and each new direction is
    reorthogonalized against all previous ones: algebraically a no-op, but
    it stops the slow orthogonality drift that would otherwise push the
    persymmetry residual above 1e-12 around order 40.
    """
    n = len(nodes)
    lw = _log_weights(nodes)
    w = np.exp(lw - lw.max())
    scale = max(1.0, np.abs(nodes).max())
    sqw = np.sqrt(w)

    basis = np.empty((n, n))
    basis[0] = sqw / np.linalg.norm(sqw)
    a = np.zeros(n)
    b = np.zeros(n - 1)
    for i in range(n):
        q = basis[i]
        tq = nodes * q
        if not symmetric:
            a[i] = float(tq @ q)
        if i == n - 1:
            break
        r = tq - a[i] * q
        if i > 0:
            r -= b[i - 1] * basis[i - 1]
        for _ in range(2):
            r -= basis[: i + 1].T @ (basis[: i + 1] @ r)
        b_i = float(np.linalg.norm(r))
        if b_i <= BREAKDOWN_RTOL * scale:
            raise BreakdownError(f"recurrence norm underflow at step {i + 1}")
        b[i] = b_i
        basis[i + 1] = r / b_i
    return a, b


def reconstruct_general(spectrum: Spectrum) -> JacobiMatrix:
    """Unique persymmetric Jacobi matrix with the prescribed simple spectrum."""
    nodes = np.asarray([float(v) for v in spectrum.values], dtype=float)
    a, b = _stieltjes(nodes, symmetric=False)
    return JacobiMatrix(tuple(a), tuple(b))


def reconstruct_symmetric(spec: SymmetricSpectrum) -> JacobiMatrix:
    """Reconstruction specialized to symmetric spectra: zero diagonal.

    Uses the even/odd-sparing recurrence p_i = t p_{i-1} - b_{i-1}^2 p_{i-2}
    (in orthonormal form); the output couplings are palindromic.
    """
    full = spec.to_spectrum()
    nodes = np.asarray([float(v) for v in full.values], dtype=float)
    a, b = _stieltjes(nodes, symmetric=True)
    return JacobiMatrix(tuple(a), tuple(b))


def symmetric_bsquared_exact(spec: SymmetricSpectrum) -> list:
    """Exact rational b_i^2 for an integer symmetric spectrum.

    The squared couplings are rational even when the couplings are not;
    used by certification tests to pin the reconstruction exactly.
    """
    full = spec.to_spectrum()
    if not full.is_integer:
        raise NonSimpleSpectrum("exact mode needs an integer spectrum")
    nodes = [Fraction(v) for v in full.values]
    w = [Fraction(x) for x in compute_weights(full).w]
    n = len(nodes)

    p_prev = [Fraction(0)] * n
    p_cur = [Fraction(1)] * n
    norm2_prev = None
    norm2_cur = sum(w)
    bsq = []
    for _ in range(n - 1):
        p_next = [t * pc - (Fraction(0) if norm2_prev is None else norm2_cur / norm2_prev) * pp
                  for t, pc, pp in zip(nodes, p_cur, p_prev)]
        norm2_next = sum(wi * v * v for wi, v in zip(w, p_next))
        bsq.append(norm2_next / norm2_cur)
        p_prev, p_cur = p_cur, p_next
        norm2_prev, norm2_cur = norm2_cur, norm2_next
    return bsq


def closed_form_7x7(x: float, y: float, z: float):
    """Couplings (b1, b2, b3) of the order-7 matrix with spectrum {0,±x,±y,±z}.

    b1 = xz/sqrt(s), b2 = sqrt((y²−x²)(z²−y²)/s), b3 = sqrt(s/2) with
    s = x² − y² + z², positive whenever 0 < x < y < z.
    """
    if not (0 < x < y < z):
        raise DomainError(f"need 0 < x < y < z, got ({x}, {y}, {z})")
    s = x * x - y * y + z * z
    b1 = x * z / math.sqrt(s)
    b2 = math.sqrt((y * y - x * x) * (z * z - y * y) / s)
    b3 = math.sqrt(s / 2.0)
    return b1, b2, b3
