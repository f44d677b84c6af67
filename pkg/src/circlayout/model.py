"""Circulant graph models and their closed-form leading eigenstructure.

A circulant graph on vertices ``1..n`` connects ``i`` and ``j`` whenever the
circular distance between them lies in an offset set ``S``. Its adjacency
matrix is a symmetric circulant matrix, so the leading eigenvalues and
eigenvectors are available in closed form; those expressions drive both the
layout recovery and the perturbation diagnostics in this package.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CirculantModel",
    "ClosedFormSpectrum",
    "first_row",
    "adjacency",
    "model_matrix",
    "closed_form_spectrum",
    "exact_pair_gap",
]


def max_offset(n: int) -> int:
    """Largest admissible circular offset for ``n`` vertices."""
    return math.ceil((n - 1) / 2)


@dataclass(frozen=True)
class CirculantModel:
    """Circulant graph on ``n`` vertices with Bernoulli edge retention.

    Vertices ``i`` and ``j`` are adjacent in the model graph when
    ``min(|i - j|, n - |i - j|)`` lies in ``offsets``. When instances are
    sampled, each model edge survives independently with probability ``p``.

    Parameters
    ----------
    n : int
        Vertex count; at least 5 so the top four eigenpairs are defined.
    offsets : iterable of int
        Distinct offsets, each in ``1 .. ceil((n - 1) / 2)``. For even ``n``
        the offset ``n / 2`` is rejected: it would pair each vertex with a
        single antipodal neighbour, and the factor-two eigenvalue formulas
        below would double-count it.
    p : float
        Edge retention probability in ``(0, 1]``.
    gamma, c : float, optional
        Density bookkeeping for sweeps that tie the offset count to the
        vertex count; when given, ``len(offsets) == ceil(c * n**gamma)``
        is enforced. Metadata only, no effect on the graph.
    """

    n: int
    offsets: tuple
    p: float = 1.0
    gamma: float = None
    c: float = None

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise ValueError("n must be an integer")
        object.__setattr__(self, "n", int(self.n))
        if self.n < 5:
            raise ValueError(f"n must be at least 5, got {self.n}")

        raw = tuple(self.offsets)
        if not raw:
            raise ValueError("offsets must be nonempty")
        cleaned = []
        for s in raw:
            if isinstance(s, bool) or not isinstance(s, (int, np.integer)):
                raise ValueError(f"offsets must be integers, got {s!r}")
            cleaned.append(int(s))
        if len(set(cleaned)) != len(cleaned):
            raise ValueError("offsets must be duplicate-free")
        cleaned = tuple(sorted(cleaned))
        top = max_offset(self.n)
        for s in cleaned:
            if not 1 <= s <= top:
                raise ValueError(f"offset {s} outside 1..{top} for n={self.n}")
            if self.n % 2 == 0 and 2 * s == self.n:
                raise ValueError(f"offset n/2 = {s} is not allowed for even n")
        object.__setattr__(self, "offsets", cleaned)

        p = float(self.p)
        if not 0.0 < p <= 1.0:
            raise ValueError(f"p must be in (0, 1], got {p}")
        object.__setattr__(self, "p", p)

        if (self.gamma is None) != (self.c is None):
            raise ValueError("gamma and c must be given together")
        if self.gamma is not None:
            gamma = float(self.gamma)
            c = float(self.c)
            if not 0.0 < gamma <= 1.0:
                raise ValueError(f"gamma must be in (0, 1], got {gamma}")
            if c <= 0.0:
                raise ValueError(f"c must be positive, got {c}")
            expected = math.ceil(c * self.n**gamma)
            if len(cleaned) != expected:
                raise ValueError(
                    f"density metadata expects {expected} offsets "
                    f"(ceil({c} * {self.n}**{gamma})), got {len(cleaned)}"
                )
            object.__setattr__(self, "gamma", gamma)
            object.__setattr__(self, "c", c)

    @classmethod
    def from_density(cls, n, gamma, c, p=1.0) -> "CirculantModel":
        """Model with the prefix offset set ``{1, ..., ceil(c * n**gamma)}``."""
        size = math.ceil(float(c) * int(n) ** float(gamma))
        return cls(n=n, offsets=tuple(range(1, size + 1)), p=p, gamma=gamma, c=c)

    @property
    def degree(self) -> int:
        """Common vertex degree ``2 * len(offsets)`` of the model graph."""
        return 2 * len(self.offsets)

    @property
    def edge_count(self) -> int:
        """Number of model edges, ``n * len(offsets)``."""
        return self.n * len(self.offsets)


@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Top four eigenpairs of the unweighted model adjacency, in closed form.

    ``lambda2 == lambda3`` exactly: the corresponding eigenvectors are the
    frequency-one cosine and sine vectors that place the vertices on a
    circle. ``gap12 = lambda1 - lambda2`` is positive for every valid model.
    ``gap34 = lambda3 - lambda4`` uses the frequency-two cosine value as
    ``lambda4``; for offset sets concentrated below ``n / 3`` (in particular
    the prefix families used throughout the sweeps) that value is the true
    fourth-largest eigenvalue and ``gap34 > 0``, but offset sets with mass
    near ``n / 2`` can make it negative.
    """

    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    v4: np.ndarray
    gap12: float
    gap34: float


def first_row(model: CirculantModel) -> np.ndarray:
    """First row of the model adjacency matrix.

    Entry ``k + 1`` (1-based) is 1 iff ``k`` or ``n - k`` is an offset;
    entry 1 is 0.
    """
    row = np.zeros(model.n, dtype=np.float64)
    for s in model.offsets:
        row[s] = 1.0
        row[model.n - s] = 1.0
    return row


def adjacency(model: CirculantModel) -> np.ndarray:
    """Dense adjacency matrix of the model graph.

    Row ``i`` is the first row cyclically shifted by ``i - 1``; the result is
    symmetric with zero diagonal and constant degree ``2 * len(offsets)``.
    """
    row = first_row(model)
    idx = (np.arange(model.n)[None, :] - np.arange(model.n)[:, None]) % model.n
    return row[idx]


def model_matrix(model: CirculantModel) -> np.ndarray:
    """Expected adjacency of the sampled graph: ``p`` times the adjacency."""
    return model.p * adjacency(model)


def closed_form_spectrum(model: CirculantModel) -> ClosedFormSpectrum:
    """Closed-form top-four eigenpairs of the unweighted adjacency.

    With ``S`` the offset set, the eigenvalues are::

        lambda1 = sum_{k in S} 2
        lambda2 = lambda3 = sum_{k in S} 2 cos(2 pi k / n)
        lambda4 = sum_{k in S} 2 cos(4 pi k / n)

    and the eigenvectors are the constant vector plus the frequency-one
    cosine/sine and frequency-two cosine vectors, each scaled to unit norm.
    Values are for the retention-free graph; multiply by ``p`` for the
    expected adjacency of a sampled instance.
    """
    n = model.n
    k = np.asarray(model.offsets, dtype=np.float64)
    lam1 = 2.0 * k.size
    lam2 = float(np.sum(2.0 * np.cos(2.0 * np.pi * k / n)))
    lam4 = float(np.sum(2.0 * np.cos(4.0 * np.pi * k / n)))

    i = np.arange(n, dtype=np.float64)
    theta = 2.0 * np.pi * i / n
    scale = math.sqrt(2.0 / n)
    v1 = np.full(n, 1.0 / math.sqrt(n))
    v2 = scale * np.cos(theta)
    v3 = scale * np.sin(theta)
    v4 = scale * np.cos(2.0 * theta)

    basis = np.column_stack([v1, v2, v3, v4])
    gram = basis.T @ basis
    if not np.allclose(gram, np.eye(4), rtol=0.0, atol=1e-12):
        raise AssertionError("closed-form eigenvectors lost orthonormality")

    gap12 = lam1 - lam2
    if gap12 <= 0.0:
        raise AssertionError("lambda1 - lambda2 must be positive for a valid model")
    return ClosedFormSpectrum(
        lambda1=lam1,
        lambda2=lam2,
        lambda3=lam2,
        lambda4=lam4,
        v1=v1,
        v2=v2,
        v3=v3,
        v4=v4,
        gap12=gap12,
        gap34=lam2 - lam4,
    )


def exact_pair_gap(n: int, k: int) -> float:
    """Squared gap between circle points ``k`` steps apart on the eigencircle.

    Returns ``(v2_i - v2_{i+k})**2 + (v3_i - v3_{i+k})**2`` for the unit
    frequency-one eigenvectors, which collapses to the exact identity
    ``(8 / n) * sin(pi k / n)**2`` and is independent of ``i`` (indices
    wrap modulo ``n``).
    """
    n = int(n)
    k = int(k)
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= k < n:
        raise ValueError(f"k must be in 0..{n - 1}, got {k}")
    return 8.0 / n * math.sin(math.pi * k / n) ** 2
