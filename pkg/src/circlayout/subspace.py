"""Principal angles between two-dimensional eigenspaces and perturbation bounds.

Given orthonormal bases ``V`` (model frequency-one eigenvectors) and
``V_hat`` (their sampled counterparts), the SVD of the 2x2 cross-Gram
``V.T @ V_hat = U diag(s) W.T`` yields the cosines of the principal angles
and the rotated bases ``z = V U`` and ``z_hat = V_hat W`` that attain them.
"""

import math
from dataclasses import dataclass

import numpy as np

from .spectral import frobenius_norm, operator_norm
from .validation import check_orthonormal_columns, check_symmetric

__all__ = [
    "PrincipalAngleDecomposition",
    "principal_angles",
    "davis_kahan_bound",
    "davis_kahan_rhs",
    "frobenius_gap",
    "lower_bound_witness",
]


@dataclass(frozen=True)
class PrincipalAngleDecomposition:
    """SVD of the cross-Gram between two n-by-2 orthonormal bases.

    ``singular_values`` are the clamped cosines ``(s1 >= s2)`` of the
    principal angles; ``sin_theta_frobenius`` is
    ``sqrt((1 - s1**2) + (1 - s2**2))``. ``det_right`` records the
    orientation of the right factor ``W``: a generic SVD may return a
    reflection (determinant -1), in which case the circular order induced by
    the rows of ``z_hat`` is the reverse of the one induced by ``V_hat``.
    """

    cross_gram: np.ndarray
    left_rotation: np.ndarray
    right_rotation: np.ndarray
    singular_values: np.ndarray
    z: np.ndarray
    z_hat: np.ndarray
    sin_theta_frobenius: float
    det_left: float
    det_right: float


def principal_angles(V, V_hat) -> PrincipalAngleDecomposition:
    """Principal angles and vectors between the column spans of two n-by-2 bases.

    Both inputs must have orthonormal columns (checked to 1e-8). Singular
    values of the cross-Gram are clamped into [0, 1] before use to absorb
    roundoff.
    """
    V = check_orthonormal_columns(V, name="V")
    V_hat = check_orthonormal_columns(V_hat, name="V_hat")
    if V.shape != V_hat.shape or V.shape[1] != 2:
        raise ValueError(f"expected matching (n, 2) bases, got {V.shape} and {V_hat.shape}")
    gram = V.T @ V_hat
    u, s, wt = np.linalg.svd(gram)
    w = wt.T
    s = np.clip(s, 0.0, 1.0)
    sin_sq = float(np.sum(1.0 - s**2))
    return PrincipalAngleDecomposition(
        cross_gram=gram,
        left_rotation=u,
        right_rotation=w,
        singular_values=s,
        z=V @ u,
        z_hat=V_hat @ w,
        sin_theta_frobenius=math.sqrt(max(sin_sq, 0.0)),
        det_left=float(round(np.linalg.det(u))),
        det_right=float(round(np.linalg.det(w))),
    )


def davis_kahan_rhs(op_norm_diff: float, fro_norm_diff: float, gap12: float, gap34: float) -> float:
    """Right-hand side of the sin-theta bound from precomputed norms."""
    gap = min(float(gap12), float(gap34))
    if gap <= 0.0:
        raise ValueError(f"eigenvalue gaps must be positive, got min gap {gap}")
    return 2.0 * min(math.sqrt(2.0) * float(op_norm_diff), float(fro_norm_diff)) / gap


def davis_kahan_bound(M, M_hat, gap12: float, gap34: float) -> float:
    """Davis-Kahan-type bound on ``||sin Theta||_F`` between the two frequency-one eigenspaces.

    Evaluates ``2 min(sqrt(2) ||M - M_hat||, ||M - M_hat||_F) / min(gap12, gap34)``
    with measured norms of the difference. The gaps are the exact
    (retention-scaled) eigenvalue gaps of the model matrix ``M``; both must
    be positive.
    """
    M = check_symmetric(M, name="M")
    M_hat = check_symmetric(M_hat, name="M_hat")
    if M.shape != M_hat.shape:
        raise ValueError("M and M_hat must have the same shape")
    diff = M_hat - M
    return davis_kahan_rhs(operator_norm(diff), frobenius_norm(diff), gap12, gap34)


def frobenius_gap(decomp: PrincipalAngleDecomposition) -> float:
    """Frobenius distance ``||z - z_hat||_F`` between the principal bases."""
    return float(np.linalg.norm(decomp.z - decomp.z_hat, "fro"))


def lower_bound_witness(decomp: PrincipalAngleDecomposition, pairs) -> tuple:
    """Both sides of the median-point inequality over a set of inverted pairs.

    Returns ``(2 n ||z - z_hat||_F**2, sum over (i, j) of ||z_i - z_j||**2 / 2)``
    where ``z_i`` are rows of the principal basis ``z`` and the pairs are
    1-based index pairs. The pair sum is accumulated in the given order, so a
    deterministic pair ordering yields a bit-reproducible value.
    """
    z, z_hat = decomp.z, decomp.z_hat
    n = z.shape[0]
    left = 2.0 * n * float(np.linalg.norm(z - z_hat, "fro")) ** 2
    idx = np.asarray(pairs, dtype=np.int64)
    if idx.size == 0:
        return left, 0.0
    if idx.ndim != 2 or idx.shape[1] != 2:
        raise ValueError(f"pairs must be an (m, 2) array, got shape {idx.shape}")
    if np.min(idx) < 1 or np.max(idx) > n:
        raise ValueError("pair indices must be 1-based and within range")
    diff = z[idx[:, 0] - 1] - z[idx[:, 1] - 1]
    right = 0.5 * float(np.sum(np.sum(diff * diff, axis=1)))
    return left, right
