"""Input validation helpers shared across the package."""

import numpy as np

MAX_SEED = 2**64 - 1


def check_seed(seed) -> int:
    """Validate a 64-bit unsigned integer seed and return it as ``int``."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    return seed


def check_square(a, name="matrix") -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be a square 2-d array, got shape {a.shape}")
    return a


def check_symmetric(a, name="matrix", tol=1e-10) -> np.ndarray:
    """Return ``a`` as a float64 array, raising if it is not symmetric.

    Symmetry is judged against an absolute tolerance scaled by the largest
    entry magnitude; matrices built by this package are symmetric bit-exactly.
    """
    a = check_square(a, name=name)
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    if not np.allclose(a, a.T, rtol=0.0, atol=tol * scale):
        raise ValueError(f"{name} is not symmetric (tolerance {tol * scale:g})")
    return a


def check_adjacency(a, name="adjacency") -> np.ndarray:
    """Validate a symmetric 0/1 adjacency matrix with zero diagonal."""
    a = check_symmetric(a, name=name)
    if a.size and np.any(np.diagonal(a) != 0.0):
        raise ValueError(f"{name} must have a zero diagonal")
    values = np.unique(a)
    if not np.all(np.isin(values, (0.0, 1.0))):
        raise ValueError(f"{name} entries must be 0 or 1")
    return a


def check_permutation(sigma, n=None, name="permutation") -> np.ndarray:
    """Validate that ``sigma`` is a bijection on ``{1..n}`` (1-based ranks)."""
    s = np.asarray(sigma)
    if s.ndim != 1:
        raise ValueError(f"{name} must be 1-d, got shape {s.shape}")
    if s.size and not np.issubdtype(s.dtype, np.integer):
        if not np.all(s == np.floor(s)):
            raise ValueError(f"{name} must contain integers")
    s = s.astype(np.int64)
    m = s.size
    if n is not None and m != n:
        raise ValueError(f"{name} has length {m}, expected {n}")
    if m and (np.min(s) != 1 or np.max(s) != m or np.unique(s).size != m):
        raise ValueError(f"{name} is not a bijection on 1..{m}")
    return s


def check_orthonormal_columns(v, tol=1e-8, name="basis") -> np.ndarray:
    """Validate that the columns of ``v`` are orthonormal within ``tol``."""
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 2:
        raise ValueError(f"{name} must be 2-d, got shape {v.shape}")
    gram = v.T @ v
    if not np.allclose(gram, np.eye(v.shape[1]), rtol=0.0, atol=tol):
        worst = float(np.max(np.abs(gram - np.eye(v.shape[1]))))
        raise ValueError(f"{name} columns are not orthonormal (max deviation {worst:.3g})")
    return v
