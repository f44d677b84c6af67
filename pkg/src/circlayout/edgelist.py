"""Plain-text edge list files: one ``u v`` pair per line, 1-based, u < v.

Lines starting with ``#`` are comments. The writer always emits a
``# n = <count>`` directive so graphs with isolated vertices round-trip;
without the directive the reader infers ``n`` from the largest label and
requires every label in ``1..n`` to appear.
"""

import re

import numpy as np

from .validation import check_adjacency

__all__ = ["write_edge_list", "read_edge_list"]

_DIRECTIVE = re.compile(r"#\s*n\s*=\s*(\d+)\s*$")


def write_edge_list(adjacency, path, comments=()) -> None:
    """Write a symmetric 0/1 adjacency matrix as an edge list."""
    a = check_adjacency(adjacency)
    n = a.shape[0]
    rows, cols = np.nonzero(np.triu(a, k=1))
    with open(path, "w", encoding="utf-8") as fh:
        for comment in comments:
            fh.write(f"# {comment}\n")
        fh.write(f"# n = {n}\n")
        for u, v in zip(rows, cols):
            fh.write(f"{u + 1} {v + 1}\n")


def read_edge_list(path):
    """Read an edge list into a dense symmetric adjacency matrix.

    Returns ``(adjacency, n)``. Raises ``ValueError`` on malformed lines,
    self-loops, duplicate pairs, labels outside ``1..n``, or (when no
    ``# n =`` directive is present) vertex labels missing from ``1..max``.
    """
    declared_n = None
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                match = _DIRECTIVE.match(text)
                if match:
                    declared_n = int(match.group(1))
                continue
            parts = text.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'u v', got {text!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer vertex label") from exc
            if u < 1 or v < 1:
                raise ValueError(f"{path}:{lineno}: labels must be 1-based positive")
            if u >= v:
                raise ValueError(f"{path}:{lineno}: require u < v, got {u} {v}")
            edges.append((u, v))

    if declared_n is not None:
        n = declared_n
    elif edges:
        n = max(v for _, v in edges)
    else:
        raise ValueError(f"{path}: no edges and no '# n =' directive")

    seen = set()
    labels = set()
    a = np.zeros((n, n), dtype=np.float64)
    for u, v in edges:
        if v > n:
            raise ValueError(f"{path}: label {v} exceeds declared n = {n}")
        if (u, v) in seen:
            raise ValueError(f"{path}: duplicate edge {u} {v}")
        seen.add((u, v))
        labels.update((u, v))
        a[u - 1, v - 1] = 1.0
        a[v - 1, u - 1] = 1.0

    if declared_n is None and len(labels) != n:
        missing = sorted(set(range(1, n + 1)) - labels)
        raise ValueError(f"{path}: vertex labels not contiguous, missing {missing[:5]}")
    return a, n
