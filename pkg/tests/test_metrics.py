import pytest
from hypothesis import given, strategies as st

from narrmap.crosstab import tokenize
from narrmap.errors import MetricError
from narrmap.ingest import Document, Segment
from narrmap.metrics import (
    METRIC_TOKEN_RULES,
    count_sentences,
    count_syllables,
    flesch_reading_ease,
    per_segment_metrics,
    segment_metrics,
)


def test_the_cat_sat():
    m = segment_metrics(Segment(0, "s", "The cat sat."))
    assert (m.word_count, m.sentence_count, m.syllable_count) == (3, 1, 3)
    # 206.835 - 1.015 * 3 - 84.6 * 1
    assert m.flesch_reading_ease == pytest.approx(119.19, abs=0.01)


def test_two_identical_sentences_same_score():
    assert flesch_reading_ease("The cat sat. The cat sat.") == pytest.approx(flesch_reading_ease("The cat sat."))


def test_empty_segment():
    with pytest.raises(MetricError):
        flesch_reading_ease(Segment(0, "s", "... !!"))


@pytest.mark.parametrize("word,n", [
    ("the", 1), ("cat", 1), ("make", 1), ("free", 1), ("water", 2),
    ("harbour", 2), ("fisherman", 3), ("rhythm", 1), ("1984", 1), ("don't", 1), ("yellow", 2),
])
def test_syllable_heuristic(word, n):
    assert count_syllables(word) == n


@pytest.mark.parametrize("text,n", [
    ("One. Two! Three?", 3),
    ("No terminator here", 1),
    ("Ends well. Then trails off", 2),
    ("Mr. Smith went home.", 2),  # abbreviations are not special-cased
    ("3.14 is pi.", 1),
    ("Wait... what?!", 2),
])
def test_sentence_counter(text, n):
    assert count_sentences(text) == n


def test_per_segment_records_and_chart():
    doc = Document("d", "", (Segment(0, "a", "The cat sat."), Segment(1, "b", "The cat sat.")))
    records, chart = per_segment_metrics(doc)
    assert records[0].flesch_reading_ease == records[1].flesch_reading_ease
    assert chart.kind == "line" and len(chart.xs) == 2


def test_word_counts_by_hand():
    doc = Document("d", "", (Segment(0, "a", "One two three."), Segment(1, "b", "A b c. D e f.")))
    records, _ = per_segment_metrics(doc)
    assert [r.word_count for r in records] == [3, 6]


def test_failing_segment_is_isolated():
    doc = Document("d", "", (Segment(0, "a", "Fine words here."), Segment(1, "b", "?!")))
    records, chart = per_segment_metrics(doc)
    assert records[0].error is None
    assert records[1].error and records[1].flesch_reading_ease is None
    assert len(chart.xs) == 1


_words = st.lists(st.sampled_from(["cat", "harbour", "the", "make", "over", "rhythm", "a"]), min_size=1, max_size=8)
sentences = st.lists(
    st.tuples(_words, st.sampled_from(".!?")).map(lambda t: " ".join(t[0]) + t[1]),
    min_size=1, max_size=5,
)


@given(sentences)
def test_self_concatenation_invariance(sents):
    text = " ".join(sents)
    assert flesch_reading_ease(text + " " + text) == pytest.approx(flesch_reading_ease(text), abs=1e-9)


@given(st.text(max_size=80))
def test_word_count_matches_tokenizer(text):
    m = segment_metrics(Segment(0, "s", text))
    assert m.word_count == len(tokenize(text, METRIC_TOKEN_RULES))
    if m.word_count:
        assert m.sentence_count >= 1
