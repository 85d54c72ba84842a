"""Symmetric tridiagonal eigensolver: implicit QL with Wilkinson shift.

Self-contained oracle for round-trip tests and the engine behind time
evolution.  Rotations are accumulated so eigenvectors come out orthonormal
to machine precision; a deterministic sign convention makes vectors
directly comparable across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .reconstruct import JacobiMatrix

MAX_SWEEPS = 30


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.values)


def eigen_tridiagonal(J: JacobiMatrix) -> EigenDecomposition:
    """Full eigendecomposition of a Jacobi matrix.

    Implicit-shift QL sweeps with the Wilkinson shift, Numerical-Recipes
    style; each rotation is applied to the accumulated eigenvector matrix.
    Values are returned ascending and each vector's first nonzero component
    is made positive.
    """
    n = J.n
    d = np.asarray(J.diag, dtype=float).copy()
    e = np.zeros(n)
    e[: n - 1] = J.offdiag
    z = np.eye(n)

    for l in range(n):
        for sweep in range(MAX_SWEEPS + 1):
            # find the first decoupled block boundary at or after l
            for m in range(l, n - 1):
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= np.finfo(float).eps * dd:
                    e[m] = 0.0
                    break
            else:
                m = n - 1
            if m == l:
                break
            if sweep == MAX_SWEEPS:
                raise ConvergenceError(f"eigenvalue {l} not converged after {MAX_SWEEPS} sweeps")
            # Wilkinson shift from the leading 2x2 of the active block
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s, c = 1.0, 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                # accumulate the rotation acting on columns i, i+1
                zi = z[:, i].copy()
                z[:, i + 1], z[:, i] = s * zi + c * z[:, i + 1], c * zi - s * z[:, i + 1]
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0

    order = np.argsort(d, kind="stable")
    values = d[order]
    vectors = z[:, order]
    _fix_signs(vectors)
    return EigenDecomposition(values, vectors)


def _fix_signs(vectors: np.ndarray) -> None:
    n = vectors.shape[0]
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        cutoff = 1e-12 * np.abs(col).max()
        for i in range(n):
            if abs(col[i]) > cutoff:
                if col[i] < 0:
                    col *= -1.0
                break


def boundary_components(decomp: EigenDecomposition):
    """First and last components of every eigenvector.

    These carry the spectral measures at the chain ends; for a persymmetric
    matrix they agree up to sign.
    """
    return decomp.vectors[0, :].copy(), decomp.vectors[-1, :].copy()
