"""Several manuscripts in one map, and before/after comparison of drafts."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .ca import CAEmbedding, correspondence_analysis, planar_coordinates, axis_caption
from .cluster import rank_descending
from .crosstab import CrossTab, TokenRules, VocabularyPolicy, count_tokens, crosstab_from_counters
from .errors import CrossTabError, ReportError
from .ingest import Document
from .report import AnalysisReport, normalize
from .viz import PlotModel, default_glyphs

log = logging.getLogger(__name__)


def _labels_for(docs: Sequence[Document], labels: Sequence[str] | None) -> list[str]:
    if labels is None:
        labels = [d.source_name for d in docs]
    labels = list(labels)
    if len(labels) != len(docs):
        raise ValueError(f"{len(labels)} labels for {len(docs)} documents")
    if len(set(labels)) != len(labels):
        raise ValueError(f"document labels must be unique: {labels}")
    return labels


def pooled_crosstab(docs: Sequence[Document], rules: TokenRules | None = None,
                    policy: VocabularyPolicy | None = None,
                    labels: Sequence[str] | None = None) -> tuple[CrossTab, tuple[str, ...]]:
    """One table over the union vocabulary, every segment of every document a row.

    Returns the table and the document label of each row.
    """
    labels = _labels_for(docs, labels)
    counters, row_labels, tags = [], [], []
    for doc, lab in zip(docs, labels):
        counters.extend(count_tokens(doc.segments, rules))
        row_labels.extend(f"{lab}/{s.label}" for s in doc.segments)
        tags.extend(lab for _ in doc.segments)
    return crosstab_from_counters(counters, row_labels, policy), tuple(tags)


def mass_weighted_dispersion(coords, masses) -> float:
    """Root of the mass-weighted mean squared distance to the weighted centroid."""
    w = np.asarray(masses, dtype=float)
    X = np.asarray(coords, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    g = (w[:, None] * X).sum(axis=0) / w.sum()
    return float(np.sqrt((w * ((X - g) ** 2).sum(axis=1)).sum() / w.sum()))


@dataclass(frozen=True, eq=False)
class PooledAnalysis:
    documents: tuple[str, ...]
    crosstab: CrossTab
    tags: tuple[str, ...]
    embedding: CAEmbedding
    dispersions: dict[str, float]
    glyphs: dict[str, str]
    plot: PlotModel

    def rows_of(self, label: str) -> np.ndarray:
        return np.array([i for i, t in enumerate(self.tags) if t == label], dtype=int)


def pooled_projection(docs: Sequence[Document], rules: TokenRules | None = None,
                      policy: VocabularyPolicy | None = None,
                      labels: Sequence[str] | None = None,
                      axes: tuple[int, int] = (1, 2)) -> PooledAnalysis:
    """All documents as active rows of a single correspondence analysis."""
    if len(docs) < 2:
        raise ValueError(f"need at least 2 documents, got {len(docs)}")
    labels = _labels_for(docs, labels)
    for doc, lab in zip(docs, labels):
        if len(doc.segments) < 2:
            raise CrossTabError(f"document {lab!r} has {len(doc.segments)} segment(s); need 2")
    tab, tags = pooled_crosstab(docs, rules, policy, labels)
    emb = correspondence_analysis(tab)
    disp = {}
    for lab in labels:
        idx = [i for i, t in enumerate(tags) if t == lab]
        disp[lab] = mass_weighted_dispersion(emb.row_principal[idx], emb.row_masses[idx])
    glyphs = default_glyphs(labels)
    x, y, padded = planar_coordinates(emb, axes, pad=True)
    plot = PlotModel(
        kind="scatter",
        xs=tuple(float(v) for v in x),
        ys=tuple(float(v) for v in y),
        labels=tab.row_labels,
        series=tags,
        glyphs=glyphs,
        masses=tuple(float(m) for m in emb.row_masses),
        x_caption=axis_caption(emb, axes[0]),
        y_caption=axis_caption(emb, axes[1]),
        padded_axes=padded,
    )
    return PooledAnalysis(tuple(labels), tab, tags, emb, disp, glyphs, plot)


def dispersion(analysis: PooledAnalysis, label: str) -> float:
    if label not in analysis.dispersions:
        raise KeyError(f"unknown document label {label!r}")
    return analysis.dispersions[label]


@dataclass(frozen=True)
class SegmentDelta:
    label: str
    score_before: float
    score_after: float
    delta: float
    relative_delta: float | None
    rank_before: int
    rank_after: int
    rank_delta: int


@dataclass(frozen=True)
class SnapshotDelta:
    matched: tuple[SegmentDelta, ...]
    removed: tuple[str, ...]  # only in the first report
    added: tuple[str, ...]  # only in the second report
    warnings: tuple[str, ...] = field(default=())

    def by_label(self) -> dict[str, SegmentDelta]:
        return {d.label: d for d in self.matched}

    def to_dict(self) -> dict:
        return normalize({
            "matched": [vars(d) for d in self.matched],
            "removed": list(self.removed),
            "added": list(self.added),
            "warnings": list(self.warnings),
        })


def _keyed_scores(report: AnalysisReport) -> list[tuple[str, float]]:
    # Repeated labels are disambiguated by occurrence: "Interlude", "Interlude (2)".
    seen: dict[str, int] = {}
    out = []
    for label, score in report.segment_scores():
        seen[label] = seen.get(label, 0) + 1
        key = label if seen[label] == 1 else f"{label} ({seen[label]})"
        out.append((key, float(score)))
    return out


def snapshot_diff(report_a: AnalysisReport, report_b: AnalysisReport) -> SnapshotDelta:
    """Match segments of two reports by label and compare centroid-distance scores.

    Ranks are recomputed from each report's own scores (rank 1 = farthest
    from the centroid). Matched deltas are ordered by absolute score change.
    """
    warnings = []
    if report_a.tool_version != report_b.tool_version or report_a.schema_id != report_b.schema_id:
        msg = (f"reports come from different versions "
               f"({report_a.schema_id} {report_a.tool_version} vs "
               f"{report_b.schema_id} {report_b.tool_version})")
        log.warning(msg)
        warnings.append(msg)
    a, b = _keyed_scores(report_a), _keyed_scores(report_b)
    rank_a = dict(zip((k for k, _ in a), rank_descending([s for _, s in a])))
    rank_b = dict(zip((k for k, _ in b), rank_descending([s for _, s in b])))
    score_b = dict(b)
    matched = []
    for key, sa in a:
        if key not in score_b:
            continue
        sb = score_b[key]
        matched.append(SegmentDelta(
            label=key,
            score_before=sa,
            score_after=sb,
            delta=sb - sa,
            relative_delta=(sb - sa) / sa if sa != 0 else None,
            rank_before=int(rank_a[key]),
            rank_after=int(rank_b[key]),
            rank_delta=int(rank_b[key] - rank_a[key]),
        ))
    if not matched:
        raise ReportError("the two reports share no segment labels")
    matched.sort(key=lambda d: -abs(d.delta))  # stable: ties keep reading order
    keys_a = {k for k, _ in a}
    return SnapshotDelta(
        matched=tuple(matched),
        removed=tuple(k for k, _ in a if k not in score_b),
        added=tuple(k for k, _ in b if k not in keys_a),
        warnings=tuple(warnings),
    )
