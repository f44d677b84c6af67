"""Dense symmetric eigensolver kernel and matrix norms.

Thin contracts over LAPACK (via scipy/numpy): top-k eigenpairs sorted by
descending eigenvalue with a residual guarantee, the spectral norm, and the
Frobenius norm. Dense solvers are deterministic for a fixed input, which the
reproducibility contract of the experiment harness relies on.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .validation import check_symmetric

__all__ = [
    "NumericalError",
    "SpectralDecomposition",
    "top_eigenpairs",
    "operator_norm",
    "frobenius_norm",
]

# Eigenvalues closer than this (relative to the largest) are treated as one
# invariant subspace: any orthonormal basis of it is acceptable output.
DEGENERACY_RTOL = 1e-6


class NumericalError(RuntimeError):
    """An eigensolver failed to converge or missed its residual contract."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Top-k eigenpairs of a symmetric matrix, sorted by descending eigenvalue.

    ``eigenvectors[:, i]`` is the unit eigenvector for ``eigenvalues[i]``;
    ``residuals[i]`` is the 2-norm of ``A v_i - lambda_i v_i``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray

    def degenerate_pair(self, i: int, rtol: float = DEGENERACY_RTOL) -> bool:
        """Whether eigenvalues ``i`` and ``i + 1`` are numerically degenerate."""
        scale = max(1.0, abs(float(self.eigenvalues[0])))
        return abs(float(self.eigenvalues[i] - self.eigenvalues[i + 1])) <= rtol * scale


def top_eigenpairs(matrix, k: int, tol: float = 1e-8) -> SpectralDecomposition:
    """Largest ``k`` eigenvalues (by algebraic value) and their eigenvectors.

    Parameters
    ----------
    matrix : (n, n) array-like
        Symmetric input.
    k : int
        Number of eigenpairs, ``1 <= k <= n``.
    tol : float
        Residual acceptance threshold: each pair must satisfy
        ``||A v - lambda v|| <= tol * max(1, |lambda|)``, otherwise a
        :class:`NumericalError` is raised. Within an eigenvalue cluster
        tighter than the degeneracy tolerance, the returned vectors are one
        orthonormal basis of the invariant subspace.
    """
    a = check_symmetric(matrix, name="matrix")
    n = a.shape[0]
    k = int(k)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    try:
        values, vectors = scipy.linalg.eigh(a, subset_by_index=(n - k, n - 1))
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"symmetric eigensolver failed: {exc}") from exc
    # ascending from LAPACK; flip to descending
    values = values[::-1].copy()
    vectors = vectors[:, ::-1].copy()
    residuals = np.linalg.norm(a @ vectors - vectors * values[None, :], axis=0)
    bound = tol * np.maximum(1.0, np.abs(values))
    if np.any(residuals > bound):
        worst = float(np.max(residuals / bound))
        raise NumericalError(f"eigenpair residuals exceed tolerance (worst ratio {worst:.3g})")
    return SpectralDecomposition(eigenvalues=values, eigenvectors=vectors, residuals=residuals)


def operator_norm(matrix) -> float:
    """Spectral norm of a symmetric matrix: the largest absolute eigenvalue."""
    a = check_symmetric(matrix, name="matrix")
    if a.size == 0:
        return 0.0
    try:
        values = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue computation failed: {exc}") from exc
    return float(np.max(np.abs(values)))


def frobenius_norm(matrix) -> float:
    """Square root of the sum of squared entries."""
    return float(np.linalg.norm(np.asarray(matrix, dtype=np.float64), "fro"))
