"""Agglomerative clustering restricted to adjacent segments.

Leaves keep narrative order. At each step only clusters whose index ranges
touch may merge, and the least dissimilar such pair is merged.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LINKAGES = ("complete", "ward")


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    span: tuple[int, int]  # inclusive segment index range of the merged cluster


@dataclass(frozen=True)
class Dendrogram:
    """Merge list in scipy-like id convention: leaves are 0..n-1, merge t creates id n+t."""

    leaf_count: int
    merges: tuple[Merge, ...]
    linkage: str = "complete"

    @property
    def heights(self) -> list[float]:
        return [m.height for m in self.merges]

    @property
    def inversions(self) -> list[int]:
        """Indices of merges lower than the merge before them."""
        h = self.heights
        return [t for t in range(1, len(h)) if h[t] < h[t - 1]]

    def span_of(self, cluster_id: int) -> tuple[int, int]:
        if cluster_id < self.leaf_count:
            return (cluster_id, cluster_id)
        return self.merges[cluster_id - self.leaf_count].span


def _validate(points, masses):
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise ValueError("points must be a 2-D array (segments x axes)")
    n = X.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    if np.isnan(X).any():
        raise ValueError("points contain NaN")
    if masses is None:
        m = np.full(n, 1.0 / n)
    else:
        m = np.asarray(masses, dtype=float)
        if m.shape != (n,):
            raise ValueError("masses must have one entry per point")
        if not (m > 0).all():
            raise ValueError("masses must be positive")
    return X, m


def _pairwise(X: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - X[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=-1))


def constrained_cluster(points, masses=None, linkage: str = "complete") -> Dendrogram:
    """Contiguity-constrained agglomeration of ordered points.

    Parameters
    ----------
    points : array_like, shape (n, K)
        Segment coordinates in reading order (1-D input is treated as K=1).
    masses : array_like, shape (n,), optional
        Positive weights; only used by Ward linkage. Uniform if omitted.
    linkage : {"complete", "ward"}
        ``complete``: largest pairwise Euclidean distance between members.
        ``ward``: increase in mass-weighted within-cluster inertia,
        m_a m_b / (m_a + m_b) * ||g_a - g_b||^2. Ward can produce inversions
        under the contiguity constraint; they are kept and reported by
        :attr:`Dendrogram.inversions`.

    Ties go to the pair with the lowest left index.
    """
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}; expected one of {LINKAGES}")
    X, m = _validate(points, masses)
    n = X.shape[0]
    D = _pairwise(X) if linkage == "complete" else None

    # Active clusters in reading order: (id, start, end, mass, centroid)
    clusters = [(i, i, i, m[i], X[i]) for i in range(n)]

    def dissimilarity(a, b) -> float:
        if linkage == "complete":
            return float(D[a[1] : a[2] + 1, b[1] : b[2] + 1].max())
        ma, mb = a[3], b[3]
        return float(ma * mb / (ma + mb) * np.sum((a[4] - b[4]) ** 2))

    gaps = [dissimilarity(clusters[t], clusters[t + 1]) for t in range(n - 1)]
    merges = []
    next_id = n
    while len(clusters) > 1:
        t = int(np.argmin(gaps))  # first minimum = lowest left index
        a, b = clusters[t], clusters[t + 1]
        mass = a[3] + b[3]
        centroid = (a[3] * a[4] + b[3] * b[4]) / mass
        merged = (next_id, a[1], b[2], mass, centroid)
        merges.append(Merge(a[0], b[0], gaps[t], (a[1], b[2])))
        next_id += 1
        clusters[t : t + 2] = [merged]
        del gaps[t]
        if t > 0:
            gaps[t - 1] = dissimilarity(clusters[t - 1], merged)
        if t < len(clusters) - 1:
            gaps[t] = dissimilarity(merged, clusters[t + 1])
    return Dendrogram(n, tuple(merges), linkage)


def cut(dend: Dendrogram, k: int) -> list[tuple[int, int]]:
    """Partition into ``k`` contiguous ranges by undoing the last k-1 merges."""
    n = dend.leaf_count
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    alive = set(range(n))
    for t, mg in enumerate(dend.merges[: n - k]):
        alive.discard(mg.left)
        alive.discard(mg.right)
        alive.add(n + t)
    return sorted(dend.span_of(c) for c in alive)


def neighborhood_discord(points) -> tuple[np.ndarray, np.ndarray]:
    """Distance from each point to its nearest narrative neighbour.

    Returns ``(scores, ranks)``; rank 1 is the most discordant segment, ties
    broken by segment index.
    """
    X, _ = _validate(points, None)
    step = np.sqrt(((X[1:] - X[:-1]) ** 2).sum(axis=1))
    left = np.concatenate([[np.inf], step])
    right = np.concatenate([step, [np.inf]])
    scores = np.minimum(left, right)
    return scores, rank_descending(scores)


def rank_descending(scores) -> np.ndarray:
    """1-based ranks, largest score first, ties broken by position."""
    scores = np.asarray(scores, dtype=float)
    order = np.argsort(-scores, kind="stable")
    ranks = np.empty(len(scores), dtype=int)
    ranks[order] = np.arange(1, len(scores) + 1)
    return ranks
