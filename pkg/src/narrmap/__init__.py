"""Narrative maps of manuscripts: correspondence analysis of chapters,
chronology-constrained dendrograms, outlier ranking and draft comparison."""

__version__ = "0.1.0"

from .ca import CAEmbedding, chi2_distance, correspondence_analysis, factor_map, project_supplementary_row
from .cluster import Dendrogram, constrained_cluster, cut, neighborhood_discord
from .crosstab import CrossTab, TokenRules, VocabularyPolicy, build_crosstab, profile, tokenize
from .ingest import Document, Segment, SegmentationRules, load_document, segment_document
from .metrics import SegmentMetrics, flesch_reading_ease, per_segment_metrics
from .outliers import OutlierReport, centroid_distance_scores, rank_outliers

__all__ = [
    "CAEmbedding", "CrossTab", "Dendrogram", "Document", "OutlierReport", "Segment",
    "SegmentMetrics", "SegmentationRules", "TokenRules", "VocabularyPolicy",
    "build_crosstab", "centroid_distance_scores", "chi2_distance", "constrained_cluster",
    "correspondence_analysis", "cut", "factor_map", "flesch_reading_ease", "load_document",
    "neighborhood_discord", "per_segment_metrics", "profile", "project_supplementary_row",
    "rank_outliers", "segment_document", "tokenize",
]
