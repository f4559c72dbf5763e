"""Tokenisation and the segment-by-word contingency table."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CrossTabError
from .ingest import Segment

_APOSTROPHES = str.maketrans({"’": "'", "ʼ": "'"})
# Letters only ([^\W\d_]) or letters and digits ([^\W_]), with internal apostrophes.
_WORD_LETTERS = re.compile(r"[^\W\d_]+(?:'[^\W\d_]+)*")
_WORD_ALNUM = re.compile(r"[^\W_]+(?:'[^\W_]+)*")


@dataclass(frozen=True)
class TokenRules:
    lowercase: bool = True
    stopword_list: frozenset[str] | None = None
    strip_numerals: bool = True

    @property
    def token_pattern(self) -> re.Pattern:
        return _WORD_LETTERS if self.strip_numerals else _WORD_ALNUM


@dataclass(frozen=True)
class VocabularyPolicy:
    min_total_count: int = 2
    min_segment_presence: int = 1

    def __post_init__(self):
        if self.min_total_count < 1 or self.min_segment_presence < 1:
            raise ValueError("vocabulary thresholds must be >= 1")


def tokenize(segment: Segment | str, rules: TokenRules | None = None) -> list[str]:
    rules = rules or TokenRules()
    text = segment.text if isinstance(segment, Segment) else segment
    text = text.translate(_APOSTROPHES)
    tokens = rules.token_pattern.findall(text)
    if rules.lowercase:
        tokens = [t.lower() for t in tokens]
    if rules.stopword_list:
        stop = rules.stopword_list
        if rules.lowercase:
            stop = {w.lower() for w in stop}
        tokens = [t for t in tokens if t not in stop]
    return tokens


@dataclass(frozen=True, eq=False)
class CrossTab:
    """Segments x vocabulary count table with its row and column masses."""

    counts: np.ndarray
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    n: int = field(init=False)
    row_masses: np.ndarray = field(init=False)
    col_masses: np.ndarray = field(init=False)
    # Vocabulary size before pruning; equals the column count for hand-built tables.
    raw_vocabulary_size: int | None = None

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.ndim != 2:
            raise CrossTabError("counts must be a 2-D matrix")
        if counts.size and (counts < 0).any():
            raise CrossTabError("counts must be non-negative")
        if len(self.row_labels) != counts.shape[0] or len(self.col_labels) != counts.shape[1]:
            raise CrossTabError("label counts do not match the table shape")
        counts = counts.astype(np.int64)
        counts.setflags(write=False)
        total = int(counts.sum())
        if total <= 0:
            raise CrossTabError("table is empty")
        zero_rows = [self.row_labels[i] for i in np.flatnonzero(counts.sum(axis=1) == 0)]
        if zero_rows:
            raise CrossTabError(f"all-zero rows after pruning: {', '.join(zero_rows)}")
        zero_cols = [self.col_labels[j] for j in np.flatnonzero(counts.sum(axis=0) == 0)]
        if zero_cols:
            raise CrossTabError(f"all-zero columns: {', '.join(zero_cols[:10])}")
        r = counts.sum(axis=1) / total
        c = counts.sum(axis=0) / total
        r.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "n", total)
        object.__setattr__(self, "row_masses", r)
        object.__setattr__(self, "col_masses", c)
        if self.raw_vocabulary_size is None:
            object.__setattr__(self, "raw_vocabulary_size", counts.shape[1])

    @classmethod
    def from_counts(cls, counts, row_labels: Sequence[str] | None = None,
                    col_labels: Sequence[str] | None = None) -> "CrossTab":
        counts = np.asarray(counts)
        if row_labels is None:
            row_labels = [f"row{i}" for i in range(counts.shape[0])]
        if col_labels is None:
            col_labels = [f"w{j}" for j in range(counts.shape[1])]
        return cls(counts, tuple(row_labels), tuple(col_labels))

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    @property
    def proportions(self) -> np.ndarray:
        return self.counts / self.n

    def to_tsv(self) -> str:
        lines = ["segment\t" + "\t".join(self.col_labels)]
        for label, row in zip(self.row_labels, self.counts):
            lines.append(label + "\t" + "\t".join(str(int(v)) for v in row))
        return "\n".join(lines) + "\n"


def count_tokens(segments: Iterable[Segment], rules: TokenRules | None = None) -> list[Counter]:
    return [Counter(tokenize(s, rules)) for s in segments]


def crosstab_from_counters(counters: Sequence[Counter], row_labels: Sequence[str],
                           policy: VocabularyPolicy | None = None) -> CrossTab:
    """Assemble and prune a table from per-row token counters."""
    policy = policy or VocabularyPolicy()
    if len(counters) < 2:
        raise CrossTabError(f"need at least 2 segments, got {len(counters)}")
    totals: Counter = Counter()
    presence: Counter = Counter()
    for ctr in counters:
        totals.update(ctr)
        presence.update(ctr.keys())
    vocab = sorted(
        w for w, t in totals.items()
        if t >= policy.min_total_count and presence[w] >= policy.min_segment_presence
    )
    if not vocab:
        raise CrossTabError(
            f"vocabulary is empty after pruning (raw size {len(totals)}, "
            f"min_total_count={policy.min_total_count}, "
            f"min_segment_presence={policy.min_segment_presence})"
        )
    col = {w: j for j, w in enumerate(vocab)}
    counts = np.zeros((len(counters), len(vocab)), dtype=np.int64)
    for i, ctr in enumerate(counters):
        for w, k in ctr.items():
            j = col.get(w)
            if j is not None:
                counts[i, j] = k
    return CrossTab(counts, tuple(row_labels), tuple(vocab), raw_vocabulary_size=len(totals))


def build_crosstab(segments: Sequence[Segment], rules: TokenRules | None = None,
                   policy: VocabularyPolicy | None = None) -> CrossTab:
    if len(segments) < 2:
        raise CrossTabError(f"need at least 2 segments, got {len(segments)}")
    return crosstab_from_counters(count_tokens(segments, rules), [s.label for s in segments], policy)


def profile(tab: CrossTab, i: int) -> np.ndarray:
    """Conditional word distribution of row ``i`` (its counts over its row sum)."""
    if not 0 <= i < tab.shape[0]:
        raise IndexError(f"row {i} out of range for {tab.shape[0]} rows")
    row = tab.counts[i].astype(float)
    return row / row.sum()


def profiles(tab: CrossTab) -> np.ndarray:
    counts = tab.counts.astype(float)
    return counts / counts.sum(axis=1, keepdims=True)
