"""Circular rank-correlation metrics and theoretical error-exponent helpers.

The central quantities are the Kendall distance ``D`` (number of inverted
pairs of a permutation) and its circular refinement ``D_k``, which only
counts inverted pairs whose indices are at least ``k`` apart in both
directions around the cycle. ``D_1`` coincides with ``D``.
"""

from dataclasses import dataclass, field

import numpy as np

from .validation import check_permutation

__all__ = [
    "BoundParams",
    "RankMetricsReport",
    "kendall_distance",
    "kendall_distance_between",
    "d_k",
    "d_k_pairs",
    "inverted_pair_set",
    "bound_exponent",
    "fit_loglog_slope",
    "rank_metrics",
]

BOUND_CODES = ("T21", "T22", "T23", "T24")


def _merge_count(a: np.ndarray):
    """Return (sorted a, inversion count) by divide and conquer."""
    n = a.size
    if n < 2:
        return a, 0
    mid = n // 2
    left, c_left = _merge_count(a[:mid])
    right, c_right = _merge_count(a[mid:])
    # cross inversions: for each right element, left elements exceeding it
    cross = int(np.sum(left.size - np.searchsorted(left, right, side="right")))
    merged = np.concatenate((left, right))
    merged.sort()
    return merged, c_left + c_right + cross


def count_inversions(values) -> int:
    """Number of pairs ``i < j`` with ``values[i] > values[j]``."""
    a = np.asarray(values)
    if a.ndim != 1:
        raise ValueError("values must be 1-d")
    return _merge_count(a.copy())[1]


def kendall_distance(sigma) -> int:
    """Kendall distance of a permutation: its number of inverted pairs."""
    s = check_permutation(sigma, name="sigma")
    return count_inversions(s)


def kendall_distance_between(sigma, tau) -> int:
    """Inverted pairs of ``sigma`` relative to the ranking ``tau``.

    Counts vertex pairs ordered differently by the two rankings; equals
    ``kendall_distance`` of the relative permutation read in ``tau`` order.
    """
    s = check_permutation(sigma, name="sigma")
    t = check_permutation(tau, n=s.size, name="tau")
    rel = np.empty(s.size, dtype=np.int64)
    rel[t - 1] = s
    return count_inversions(rel)


def d_k(sigma, k: int, n: int = None) -> int:
    """Inverted pairs of ``sigma`` separated by at least ``k`` in both circular directions.

    A pair ``(i, j)`` with ``i < j`` counts when ``sigma[j] < sigma[i]``,
    ``j - i >= k`` and ``n - (j - i) >= k``. ``d_k(sigma, 1)`` equals
    ``kendall_distance(sigma)``.
    """
    s = check_permutation(sigma, n=n, name="sigma")
    m = s.size
    k = int(k)
    if not 1 <= k <= m:
        raise ValueError(f"k must be in 1..{m}, got {k}")
    total = 0
    for gap in range(k, m - k + 1):
        total += int(np.sum(s[gap:] < s[:-gap]))
    return total


def d_k_pairs(sigma, k: int) -> np.ndarray:
    """The pairs counted by :func:`d_k`, as a lexicographically sorted (m, 2) array of 1-based indices."""
    s = check_permutation(sigma, name="sigma")
    m = s.size
    k = int(k)
    if not 1 <= k <= m:
        raise ValueError(f"k must be in 1..{m}, got {k}")
    chunks = []
    for gap in range(k, m - k + 1):
        i = np.nonzero(s[gap:] < s[:-gap])[0]
        if i.size:
            chunks.append(np.column_stack((i + 1, i + gap + 1)))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    pairs = np.concatenate(chunks).astype(np.int64)
    return pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]


def inverted_pair_set(angles, k: int, n: int = None) -> np.ndarray:
    """Index pairs whose angular order disagrees with the index order by at least ``k`` circular positions.

    A pair ``(i, j)`` with ``i + k <= j`` and ``(i - j) mod n >= k`` is
    included when ``angles[j] <= angles[i]``. For tie-free angles this is
    exactly the pair set counted by ``d_k`` of the angle-induced permutation;
    with ties the weak inequality here can admit pairs the rank-based count
    resolves the other way.

    Returns a lexicographically sorted (m, 2) array of 1-based pairs.
    """
    phi = np.asarray(angles, dtype=np.float64)
    if phi.ndim != 1:
        raise ValueError("angles must be 1-d")
    m = phi.size
    if n is not None and int(n) != m:
        raise ValueError(f"angles has length {m}, expected n={n}")
    k = int(k)
    if not 1 <= k <= m:
        raise ValueError(f"k must be in 1..{m}, got {k}")
    chunks = []
    for gap in range(k, m - k + 1):
        i = np.nonzero(phi[gap:] <= phi[:-gap])[0]
        if i.size:
            chunks.append(np.column_stack((i + 1, i + gap + 1)))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    pairs = np.concatenate(chunks).astype(np.int64)
    return pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]


@dataclass(frozen=True)
class BoundParams:
    """Parameters of the asymptotic error bounds.

    ``gamma`` is the offset-density exponent in ``(0, 1]``, ``beta`` the
    separation exponent with ``k`` of order ``n**beta``, and ``c`` the
    density constant.
    """

    gamma: float
    beta: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if not 0.0 < float(self.gamma) <= 1.0:
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")
        if float(self.beta) < 0.0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")
        if float(self.c) <= 0.0:
            raise ValueError(f"c must be positive, got {self.c}")


def bound_exponent(bound: str, params: BoundParams) -> float:
    """Growth exponent of one of the four asymptotic error bounds.

    ``T21``: ``5 - 4 beta`` for the dense case (requires ``gamma == 1``; it
    is the specialization of ``T22``). ``T22``: ``11 - 6 gamma - 4 beta``.
    ``T23``: ``(13 - 6 gamma - 2 beta) / 3``. ``T24``: ``(15 - 6 gamma) / 5``
    (the plain Kendall distance, no ``beta``).
    """
    if bound not in BOUND_CODES:
        raise ValueError(f"bound must be one of {BOUND_CODES}, got {bound!r}")
    gamma, beta = float(params.gamma), float(params.beta)
    if bound == "T21":
        if gamma != 1.0:
            raise ValueError("T21 requires gamma = 1")
        return 5.0 - 4.0 * beta
    if bound == "T22":
        return 11.0 - 6.0 * gamma - 4.0 * beta
    if bound == "T23":
        return (13.0 - 6.0 * gamma - 2.0 * beta) / 3.0
    return (15.0 - 6.0 * gamma) / 5.0


def fit_loglog_slope(samples):
    """Least-squares line through ``(log n, log value)``.

    Parameters
    ----------
    samples : sequence of (n, value)
        At least three points with strictly increasing ``n`` and positive
        values.

    Returns
    -------
    (slope, intercept, residual)
        ``residual`` is the sum of squared log-space residuals (0.0 for an
        exact fit).
    """
    arr = np.asarray(list(samples), dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("samples must be a sequence of (n, value) pairs")
    if arr.shape[0] < 3:
        raise ValueError("need at least 3 samples")
    ns, values = arr[:, 0], arr[:, 1]
    if np.any(np.diff(ns) <= 0):
        raise ValueError("n values must be strictly increasing")
    if np.any(values <= 0):
        raise ValueError("values must be positive")
    coeffs, rss, _, _, _ = np.polyfit(np.log(ns), np.log(values), 1, full=True)
    residual = float(rss[0]) if rss.size else 0.0
    return float(coeffs[0]), float(coeffs[1]), residual


@dataclass(frozen=True)
class RankMetricsReport:
    """Kendall distance and its circular refinements for one permutation."""

    n: int
    D: int
    d_k_values: dict = field(default_factory=dict)
    k_list: tuple = ()
    beta: float = None
    aligned: bool = False

    def __post_init__(self):
        if self.D > self.n * (self.n - 1) // 2:
            raise ValueError("D exceeds the number of pairs")
        ks = sorted(self.d_k_values)
        vals = [self.d_k_values[k] for k in ks]
        if any(b > a for a, b in zip(vals, vals[1:])):
            raise ValueError("d_k must be nonincreasing in k")
        if 1 in self.d_k_values and self.d_k_values[1] != self.D:
            raise ValueError("d_1 must equal the Kendall distance")


def rank_metrics(sigma, k_list, beta=None, aligned=False) -> RankMetricsReport:
    """Compute ``D`` and ``D_k`` for each ``k`` in ``k_list``."""
    s = check_permutation(sigma, name="sigma")
    ks = tuple(int(k) for k in k_list)
    return RankMetricsReport(
        n=int(s.size),
        D=kendall_distance(s),
        d_k_values={k: d_k(s, k) for k in ks},
        k_list=ks,
        beta=beta,
        aligned=aligned,
    )
