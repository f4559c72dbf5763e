"""End-to-end analysis of one segmented manuscript."""
from __future__ import annotations

from dataclasses import dataclass, field

from .ca import CAEmbedding, correspondence_analysis, factor_map
from .compare import PooledAnalysis, pooled_projection
from .cluster import Dendrogram, constrained_cluster, neighborhood_discord
from .crosstab import CrossTab, TokenRules, VocabularyPolicy, build_crosstab
from .ingest import Document, SegmentationRules
from .metrics import SegmentMetrics, per_segment_metrics
from .outliers import (
    DEFAULT_FLAG_FRACTION,
    OutlierReport,
    centroid_distance_scores,
    planar_centroid_distance,
    rank_outliers,
)
from .report import AnalysisReport
from .viz import PlotModel, default_glyphs, render_dendrogram, render_factor_map, render_line_chart


@dataclass(frozen=True)
class AnalysisConfig:
    segmentation: SegmentationRules = field(default_factory=SegmentationRules)
    tokens: TokenRules = field(default_factory=TokenRules)
    vocabulary: VocabularyPolicy = field(default_factory=VocabularyPolicy)
    linkage: str = "complete"
    axes: tuple[int, int] = (1, 2)
    flag_fraction: float = DEFAULT_FLAG_FRACTION
    n_words: int = 0

    def to_dict(self) -> dict:
        stop = self.tokens.stopword_list
        return {
            "segmentation": {
                "boundary_pattern": self.segmentation.boundary_pattern,
                "fallback_blank_lines": self.segmentation.fallback_blank_lines,
                "min_segment_chars": self.segmentation.min_segment_chars,
            },
            "tokens": {
                "lowercase": self.tokens.lowercase,
                "strip_numerals": self.tokens.strip_numerals,
                "stopwords": sorted(stop) if stop else None,
            },
            "vocabulary": {
                "min_total_count": self.vocabulary.min_total_count,
                "min_segment_presence": self.vocabulary.min_segment_presence,
            },
            "linkage": self.linkage,
            "axes": list(self.axes),
            "flag_fraction": self.flag_fraction,
            "n_words": self.n_words,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisConfig":
        tok = d["tokens"]
        stop = tok.get("stopwords")
        return cls(
            segmentation=SegmentationRules(**d["segmentation"]),
            tokens=TokenRules(
                lowercase=tok["lowercase"],
                strip_numerals=tok["strip_numerals"],
                stopword_list=frozenset(stop) if stop else None,
            ),
            vocabulary=VocabularyPolicy(**d["vocabulary"]),
            linkage=d["linkage"],
            axes=tuple(d["axes"]),
            flag_fraction=d["flag_fraction"],
            n_words=d.get("n_words", 0),
        )


@dataclass(frozen=True, eq=False)
class Analysis:
    document: Document
    crosstab: CrossTab
    embedding: CAEmbedding
    dendrogram: Dendrogram
    outliers: OutlierReport
    metrics: list[SegmentMetrics]
    metric_chart: PlotModel
    factor_map: PlotModel
    report: AnalysisReport

    def svgs(self) -> dict[str, str]:
        return {
            "factor_map.svg": render_factor_map(self.factor_map),
            "dendrogram.svg": render_dendrogram(
                self.dendrogram, self.document.labels, title=self.document.source_name
            ),
            "metrics.svg": render_line_chart(self.metric_chart),
        }


def outlier_report(tab: CrossTab, emb: CAEmbedding, config: AnalysisConfig) -> OutlierReport:
    scores = centroid_distance_scores(tab)
    discord, _ = neighborhood_discord(emb.row_principal)
    return rank_outliers(
        scores, discord, config.flag_fraction,
        masses=tab.row_masses, labels=tab.row_labels,
        planar=planar_centroid_distance(emb, config.axes),
    )


def ca_section(emb: CAEmbedding) -> dict:
    return {
        "n_axes": emb.n_axes,
        "singular_values": emb.singular_values,
        "axis_inertia_pct": emb.axis_inertia_pct,
        "total_inertia": emb.total_inertia,
    }


def rows_section(emb: CAEmbedding, tags=None) -> list[dict]:
    rows = []
    for i, label in enumerate(emb.row_labels):
        row = {
            "index": i,
            "label": label,
            "mass": emb.row_masses[i],
            "coordinates": emb.row_principal[i],
        }
        if tags is not None:
            row["document"] = tags[i]
        rows.append(row)
    return rows


def outliers_section(rep: OutlierReport, axes) -> dict:
    return {
        "flag_fraction": rep.flag_fraction,
        "axes": list(axes),
        "flagged": rep.flagged,
        "segments": [vars(s) for s in rep.segments],
    }


def dendrogram_section(dend: Dendrogram) -> dict:
    return {
        "linkage": dend.linkage,
        "leaf_count": dend.leaf_count,
        "merges": [
            {"left": m.left, "right": m.right, "height": m.height, "span": list(m.span)}
            for m in dend.merges
        ],
        "inversions": dend.inversions,
    }


def analyze_document(doc: Document, config: AnalysisConfig | None = None) -> Analysis:
    """Run the whole pipeline on a segmented document."""
    config = config or AnalysisConfig()
    tab = build_crosstab(doc.segments, config.tokens, config.vocabulary)
    emb = correspondence_analysis(tab)
    dend = constrained_cluster(emb.row_principal, emb.row_masses, config.linkage)
    outl = outlier_report(tab, emb, config)
    records, chart = per_segment_metrics(doc)
    glyph = default_glyphs([doc.source_name])[doc.source_name]
    fmap = factor_map(
        emb, config.axes, include_words=config.n_words > 0, n_words=config.n_words,
        glyph=glyph, highlight=outl.flagged, annotate=True, title=doc.source_name,
    )
    report = AnalysisReport(
        kind="analysis",
        inputs=[doc.source_name],
        segmentation={
            "segment_count": len(doc.segments),
            "labels": doc.labels,
            "notes": list(doc.notes),
        },
        vocabulary={
            "raw_size": tab.raw_vocabulary_size,
            "pruned_size": tab.shape[1],
            "token_total": tab.n,
        },
        ca=ca_section(emb),
        rows=rows_section(emb),
        dendrogram=dendrogram_section(dend),
        outliers=outliers_section(outl, config.axes),
        metrics=[vars(r) for r in records],
        config=config.to_dict(),
    )
    return Analysis(doc, tab, emb, dend, outl, records, chart, fmap, report)



def compare_documents(docs: list[Document], labels: list[str] | None = None,
                      config: AnalysisConfig | None = None) -> tuple[PooledAnalysis, AnalysisReport]:
    """Pooled projection of several documents plus its report."""
    config = config or AnalysisConfig()
    pooled = pooled_projection(docs, config.tokens, config.vocabulary, labels, config.axes)
    tab, emb = pooled.crosstab, pooled.embedding
    outl = outlier_report(tab, emb, config)
    records = []
    for doc, lab in zip(docs, pooled.documents):
        for rec in per_segment_metrics(doc)[0]:
            records.append({"document": lab, **vars(rec)})
    report = AnalysisReport(
        kind="comparison",
        inputs=list(pooled.documents),
        segmentation={
            "segment_count": tab.shape[0],
            "labels": list(tab.row_labels),
            "notes": [f"{lab}: {note}" for doc, lab in zip(docs, pooled.documents) for note in doc.notes],
        },
        vocabulary={
            "raw_size": tab.raw_vocabulary_size,
            "pruned_size": tab.shape[1],
            "token_total": tab.n,
        },
        ca=ca_section(emb),
        rows=rows_section(emb, pooled.tags),
        outliers=outliers_section(outl, config.axes),
        metrics=records,
        config=config.to_dict(),
        documents=[
            {
                "label": lab,
                "glyph": pooled.glyphs[lab],
                "segment_count": int(len(pooled.rows_of(lab))),
                "dispersion": pooled.dispersions[lab],
            }
            for lab in pooled.documents
        ],
    )
    return pooled, report
