"""Bernoulli edge sampling of circulant models, relabeling, and perturbations.

All randomness flows through :func:`numpy.random.default_rng` seeded with
explicit integer entropy, so identical seeds and parameters reproduce
instances bit-exactly, and per-trial streams derived from a master seed by
index are independent of execution order.
"""

from dataclasses import dataclass

import numpy as np

from .model import CirculantModel, adjacency, model_matrix
from .validation import check_adjacency, check_permutation, check_seed

__all__ = [
    "RandomGraphInstance",
    "derive_trial_seed",
    "sample",
    "relabel",
    "perturbation",
]


def rng_from(*entropy) -> np.random.Generator:
    """Deterministic generator keyed by a tuple of integers."""
    return np.random.default_rng(np.random.SeedSequence([check_seed(e) for e in entropy]))


def derive_trial_seed(master_seed: int, sweep_index: int, trial_index: int) -> int:
    """Stable per-trial seed derived from a master seed by position.

    Trials can run in any order (or in parallel) without affecting each
    other's streams.
    """
    seq = np.random.SeedSequence(
        [check_seed(master_seed), int(sweep_index), int(trial_index)]
    )
    return int(seq.generate_state(1, np.uint64)[0])


@dataclass(frozen=True, eq=False)
class RandomGraphInstance:
    """A sampled subgraph of a circulant model.

    ``adjacency`` is the symmetric 0/1 matrix of retained edges under the
    presented vertex labels. ``hidden_truth[i - 1]`` is the model position of
    presented vertex ``i`` (1-based); it is the identity straight out of
    :func:`sample` and gets composed by :func:`relabel`.
    """

    model: CirculantModel
    adjacency: np.ndarray
    seed: int
    hidden_truth: np.ndarray = None


def sample(model: CirculantModel, seed: int) -> RandomGraphInstance:
    """Retain each model edge independently with probability ``model.p``.

    Each unordered pair is decided once on the upper triangle and mirrored,
    so the result stays symmetric. The instance keeps its true labels
    (``hidden_truth`` is the identity).
    """
    seed = check_seed(seed)
    a = adjacency(model)
    rows, cols = np.nonzero(np.triu(a, k=1))
    keep = rng_from(seed).random(rows.size) < model.p
    m_hat = np.zeros_like(a)
    m_hat[rows[keep], cols[keep]] = 1.0
    m_hat[cols[keep], rows[keep]] = 1.0
    return RandomGraphInstance(
        model=model,
        adjacency=m_hat,
        seed=seed,
        hidden_truth=np.arange(1, model.n + 1, dtype=np.int64),
    )


def relabel(instance: RandomGraphInstance, seed: int = None, permutation=None) -> RandomGraphInstance:
    """Hide the ground truth by renaming vertices.

    By default the permutation is drawn uniformly from ``seed``; tests can
    pass an explicit ``permutation`` instead (1-based: presented vertex ``i``
    becomes ``permutation[i - 1]``). ``hidden_truth`` is composed so the
    model positions remain recoverable.
    """
    if instance.hidden_truth is None:
        raise ValueError("instance has no hidden_truth to compose")
    n = instance.model.n
    if permutation is None:
        if seed is None:
            raise ValueError("either seed or permutation is required")
        pi0 = rng_from(check_seed(seed)).permutation(n)
    else:
        pi0 = check_permutation(permutation, n=n, name="permutation") - 1
    inv = np.argsort(pi0)
    return RandomGraphInstance(
        model=instance.model,
        adjacency=instance.adjacency[np.ix_(inv, inv)],
        seed=instance.seed,
        hidden_truth=instance.hidden_truth[inv],
    )


def to_model_frame(instance: RandomGraphInstance) -> np.ndarray:
    """Adjacency with presented labels mapped back to model positions."""
    adj = check_adjacency(instance.adjacency, name="instance adjacency")
    truth = check_permutation(instance.hidden_truth, n=instance.model.n, name="hidden_truth")
    inv = np.argsort(truth - 1)
    return adj[np.ix_(inv, inv)]


def perturbation(instance: RandomGraphInstance, model: CirculantModel) -> np.ndarray:
    """Difference between the sampled adjacency and the expected one.

    Aligns the instance to model positions via ``hidden_truth`` first.
    Entries are ``1 - p`` on retained model edges, ``-p`` on deleted ones,
    and 0 elsewhere.
    """
    if instance.model != model:
        raise ValueError("instance was sampled from a different model")
    return to_model_frame(instance) - model_matrix(model)
