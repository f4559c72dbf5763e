import numpy as np
import pytest
from hypothesis import given, strategies as st

from narrmap.crosstab import (
    CrossTab,
    TokenRules,
    VocabularyPolicy,
    build_crosstab,
    profile,
    tokenize,
)
from narrmap.errors import CrossTabError
from narrmap.ingest import Segment

from conftest import count_tables


def segs(*texts):
    return [Segment(i, f"s{i}", t) for i, t in enumerate(texts)]


def test_tokenize_case_folding():
    assert tokenize("The cat, the CAT.", TokenRules(lowercase=True)) == ["the", "cat", "the", "cat"]


def test_tokenize_keeps_internal_apostrophes():
    assert tokenize("don't stop") == ["don't", "stop"]
    assert tokenize("don’t 'quoted'") == ["don't", "quoted"]


def test_tokenize_stopwords():
    assert tokenize("The cat", TokenRules(stopword_list=frozenset({"the"}))) == ["cat"]


def test_tokenize_numerals():
    assert tokenize("in 1984 we") == ["in", "we"]
    assert tokenize("in 1984 we", TokenRules(strip_numerals=False)) == ["in", "1984", "we"]


def test_tokenize_unicode_letters():
    assert tokenize("Café naïve Ünïcode") == ["café", "naïve", "ünïcode"]


@given(st.lists(st.text(alphabet="ab cd'.,", max_size=12), min_size=1, max_size=6))
def test_tokenization_is_local(parts):
    # tokenizing pieces separated by whitespace equals tokenizing the whole
    whole = tokenize(" ".join(parts))
    assert whole == [t for p in parts for t in tokenize(p)]


def test_build_hand_counted():
    tab = build_crosstab(segs("a b", "a a"), policy=VocabularyPolicy(1, 1))
    assert tab.counts.tolist() == [[1, 1], [2, 0]]
    assert tab.col_labels == ("a", "b")
    assert tab.n == 4
    np.testing.assert_allclose(tab.row_masses, [0.5, 0.5])
    np.testing.assert_allclose(tab.col_masses, [0.75, 0.25])


def test_build_with_pruning():
    tab = build_crosstab(segs("a b", "a a"), policy=VocabularyPolicy(min_total_count=2))
    assert tab.col_labels == ("a",)
    assert tab.counts.tolist() == [[1], [2]]
    assert tab.raw_vocabulary_size == 2


def test_build_needs_two_segments():
    with pytest.raises(CrossTabError):
        build_crosstab(segs("a b"))


def test_build_empty_vocabulary():
    with pytest.raises(CrossTabError, match="empty"):
        build_crosstab(segs("a", "b"), policy=VocabularyPolicy(min_total_count=5))


def test_build_zero_row_names_segment():
    with pytest.raises(CrossTabError, match="s1"):
        build_crosstab(segs("a a", "b"), policy=VocabularyPolicy(min_total_count=2))


def test_min_presence():
    tab = build_crosstab(segs("a a b", "a b c c"), policy=VocabularyPolicy(1, 2))
    assert tab.col_labels == ("a", "b")


def test_profiles():
    tab = CrossTab.from_counts([[1, 1], [2, 0]])
    np.testing.assert_allclose(profile(tab, 0), [0.5, 0.5])
    np.testing.assert_allclose(profile(tab, 1), [1.0, 0.0])
    with pytest.raises(IndexError):
        profile(tab, 2)


def test_uniform_profile():
    tab = CrossTab.from_counts([[3, 3, 3], [1, 2, 3]])
    np.testing.assert_allclose(profile(tab, 0), [1 / 3] * 3)


def test_rejects_negative_and_zero_lines():
    with pytest.raises(CrossTabError):
        CrossTab.from_counts([[1, -1], [1, 1]])
    with pytest.raises(CrossTabError):
        CrossTab.from_counts([[0, 0], [1, 1]])
    with pytest.raises(CrossTabError):
        CrossTab.from_counts([[0, 1], [0, 1]])


def test_tsv_export():
    tab = build_crosstab(segs("a b", "a a"), policy=VocabularyPolicy(1, 1))
    assert tab.to_tsv() == "segment\ta\tb\ns0\t1\t1\ns1\t2\t0\n"


@given(count_tables())
def test_masses_and_profiles_sum_to_one(t):
    tab = CrossTab.from_counts(t)
    assert abs(tab.row_masses.sum() - 1) < 1e-12
    assert abs(tab.col_masses.sum() - 1) < 1e-12
    for i in range(t.shape[0]):
        assert abs(profile(tab, i).sum() - 1) < 1e-12


@given(st.lists(st.text(alphabet="abcde ", min_size=1, max_size=20), min_size=2, max_size=5))
def test_unit_thresholds_keep_full_vocabulary(texts):
    ss = segs(*texts)
    vocab = sorted({w for s in ss for w in tokenize(s)})
    try:
        tab = build_crosstab(ss, policy=VocabularyPolicy(1, 1))
    except CrossTabError:
        assert any(not tokenize(s) for s in ss) or not vocab
        return
    assert list(tab.col_labels) == vocab
