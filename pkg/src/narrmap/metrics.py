"""Per-segment Flesch reading ease, the simple baseline chart across chapters."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .crosstab import TokenRules, tokenize
from .errors import MetricError
from .ingest import Document, Segment

METRIC_TOKEN_RULES = TokenRules(lowercase=True, stopword_list=None, strip_numerals=False)

_VOWEL_GROUP = re.compile(r"[aeiouy]+")
_SENTENCE_END = re.compile(r"[.!?]+(?=\s|$)")


def count_syllables(word: str) -> int:
    """Vowel groups (a, e, i, o, u, y), at least one per word.

    A final "e" after a consonant is treated as silent when the word has more
    than one vowel group ("make" -> 1, "the" -> 1, "free" -> 1).
    """
    w = word.lower().replace("'", "")
    groups = len(_VOWEL_GROUP.findall(w))
    if groups > 1 and w.endswith("e") and len(w) >= 2 and w[-2] not in "aeiouy":
        groups -= 1
    return max(groups, 1)


def count_sentences(text: str) -> int:
    """Sentences end at '.', '!' or '?' before whitespace or end of text.

    Trailing text without a terminator counts as a sentence if it has a word.
    Abbreviations such as "Mr." are not special-cased.
    """
    pieces = _SENTENCE_END.split(text)
    return sum(1 for p in pieces if tokenize(p, METRIC_TOKEN_RULES))


@dataclass(frozen=True)
class SegmentMetrics:
    index: int
    label: str
    word_count: int
    sentence_count: int
    syllable_count: int
    flesch_reading_ease: float | None
    error: str | None = None


def _counts(text: str) -> tuple[int, int, int]:
    words = tokenize(text, METRIC_TOKEN_RULES)
    return len(words), count_sentences(text), sum(count_syllables(w) for w in words)


def flesch_from_counts(words: int, sentences: int, syllables: int) -> float:
    return 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words)


def flesch_reading_ease(segment: Segment | str) -> float:
    text = segment.text if isinstance(segment, Segment) else segment
    words, sentences, syllables = _counts(text)
    if words == 0:
        raise MetricError("segment has no words")
    return flesch_from_counts(words, sentences, syllables)


def segment_metrics(segment: Segment) -> SegmentMetrics:
    words, sentences, syllables = _counts(segment.text)
    if words == 0:
        return SegmentMetrics(segment.index, segment.label, 0, sentences, 0, None,
                              error="segment has no words")
    return SegmentMetrics(segment.index, segment.label, words, sentences, syllables,
                          flesch_from_counts(words, sentences, syllables))


def per_segment_metrics(doc: Document):
    """Metrics for every segment plus a line-chart PlotModel of reading ease.

    A failing segment yields a record with ``error`` set instead of aborting.
    """
    from .viz import PlotModel

    records = []
    for seg in doc.segments:
        try:
            records.append(segment_metrics(seg))
        except Exception as exc:  # isolate per-segment failures
            records.append(SegmentMetrics(seg.index, seg.label, 0, 0, 0, None, error=str(exc)))
    ok = [r for r in records if r.flesch_reading_ease is not None]
    chart = PlotModel(
        kind="line",
        xs=tuple(float(r.index) for r in ok),
        ys=tuple(float(r.flesch_reading_ease) for r in ok),
        labels=tuple(r.label for r in ok),
        series=tuple("flesch" for _ in ok),
        glyphs={"flesch": "*"},
        x_caption="Segment",
        y_caption="Flesch reading ease",
        title=doc.source_name,
    )
    return records, chart
