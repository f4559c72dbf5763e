"""Global and local outlier scores for segments.

Two scores are kept side by side and never blended: the chi-squared distance
of a segment's profile to the average profile (how far it sits from the
manuscript's overall voice) and its distance to the nearest narrative
neighbour (how abruptly it departs from the segments around it).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ca import CAEmbedding, planar_coordinates
from .cluster import rank_descending
from .crosstab import CrossTab, profiles

DEFAULT_FLAG_FRACTION = 0.1


@dataclass(frozen=True)
class SegmentOutlier:
    index: int
    label: str
    centroid_distance: float
    inertia_share: float
    discord: float
    rank: int
    flagged: bool
    planar_distance: float | None = None


@dataclass(frozen=True)
class OutlierReport:
    segments: tuple[SegmentOutlier, ...]
    flag_fraction: float

    @property
    def flagged(self) -> list[int]:
        return sorted(s.index for s in self.segments if s.flagged)

    @property
    def ranks(self) -> list[int]:
        return [s.rank for s in self.segments]

    def by_rank(self) -> list[SegmentOutlier]:
        return sorted(self.segments, key=lambda s: s.rank)


def centroid_distance_scores(tab: CrossTab) -> np.ndarray:
    prof = profiles(tab)
    c = tab.col_masses
    return np.sqrt((((prof - c) ** 2) / c).sum(axis=1))


def planar_centroid_distance(emb: CAEmbedding, axes=(1, 2)) -> np.ndarray:
    x, y, _ = planar_coordinates(emb, axes, pad=True)
    return np.hypot(x, y)


def flag_count(p: float, n: int) -> int:
    # Rounded before ceil so that e.g. 0.1 * 30 flags 3, not 4.
    return min(n, max(1, math.ceil(round(p * n, 9))))


def rank_outliers(scores, discord_scores, p: float = DEFAULT_FLAG_FRACTION, *,
                  masses=None, labels=None, planar=None) -> OutlierReport:
    """Rank segments by centroid distance and flag the top ``ceil(p * n)``.

    Ties are ranked by segment index. Inertia shares use ``masses`` when
    given (r_i * score_i^2 over its sum), otherwise equal weights.
    """
    scores = np.asarray(scores, dtype=float)
    discord = np.asarray(discord_scores, dtype=float)
    if scores.shape != discord.shape or scores.ndim != 1:
        raise ValueError("score vectors must be 1-D and of equal length")
    if not 0 < p <= 1:
        raise ValueError(f"flag fraction must be in (0, 1], got {p}")
    n = len(scores)
    w = np.full(n, 1.0) if masses is None else np.asarray(masses, dtype=float)
    contrib = w * scores ** 2
    total = contrib.sum()
    shares = contrib / total if total > 0 else np.full(n, 1.0 / n)
    ranks = rank_descending(scores)
    k = flag_count(p, n)
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    segs = tuple(
        SegmentOutlier(
            index=i,
            label=labels[i],
            centroid_distance=float(scores[i]),
            inertia_share=float(shares[i]),
            discord=float(discord[i]),
            rank=int(ranks[i]),
            flagged=bool(ranks[i] <= k),
            planar_distance=None if planar is None else float(planar[i]),
        )
        for i in range(n)
    )
    return OutlierReport(segs, p)
