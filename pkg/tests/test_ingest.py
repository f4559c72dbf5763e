import re

import pytest
from hypothesis import given, settings, strategies as st

from narrmap.errors import EmptyInputError, EncodingError, SegmentationError
from narrmap.ingest import (
    DEFAULT_BOUNDARY_PATTERN,
    Document,
    SegmentationRules,
    load_document,
    segment_document,
)


def seg(text, **rules):
    return segment_document(Document("t", text), SegmentationRules(**rules))


def test_load_passes_text_through():
    doc = load_document(b"Chapter 1\nIt began.", "x")
    assert doc.raw_text == "Chapter 1\nIt began."
    assert doc.segments == ()
    assert doc.source_name == "x"


def test_load_normalizes_crlf():
    assert load_document(b"a\r\nb").raw_text == "a\nb"


def test_load_tolerates_bom():
    assert load_document(b"\xef\xbb\xbfhello").raw_text == "hello"


def test_load_reports_byte_offset_of_bad_utf8():
    with pytest.raises(EncodingError) as exc:
        load_document(b"abc\xffdef")
    assert exc.value.offset == 3
    assert "offset 3" in str(exc.value)


def test_load_offset_counts_bom_bytes():
    with pytest.raises(EncodingError) as exc:
        load_document(b"\xef\xbb\xbfab\xff")
    assert exc.value.offset == 5


@pytest.mark.parametrize("data", [b"", b"  \n\n "])
def test_load_empty(data):
    with pytest.raises(EmptyInputError):
        load_document(data)


def test_load_from_path(tmp_path):
    p = tmp_path / "novel.txt"
    p.write_bytes(b"Chapter 1\nx")
    assert load_document(p).source_name == "novel"


def test_two_headings():
    doc = seg("Chapter 1\naaa\nChapter 2\nbbb")
    assert doc.labels == ["Chapter 1", "Chapter 2"]
    assert [s.text for s in doc.segments] == ["aaa", "bbb"]
    assert [s.index for s in doc.segments] == [0, 1]


def test_single_chapter():
    doc = seg("Chapter 1\naaa")
    assert len(doc.segments) == 1


def test_fallback_blank_lines():
    doc = seg("first block\nstill first\n\n\n\nsecond block", fallback_blank_lines=2)
    assert doc.labels == ["Section 1", "Section 2"]
    assert doc.segments[1].text == "second block"


def test_fallback_needs_enough_blank_lines():
    # one blank line is a paragraph break, not a section break
    doc = seg("para one\n\npara two", fallback_blank_lines=2)
    assert doc.labels == ["Section 1"]
    assert doc.segments[0].text == "para one\n\npara two"


def test_markdown_headings_and_label_cleanup():
    doc = seg("# The Beginning\nx\n## Middle\ny")
    assert doc.labels == ["The Beginning", "Middle"]


@pytest.mark.parametrize("line", ["Chapter 12", "CHAPTER IV", "  Chapter Two: The Storm", "Chapter"])
def test_default_pattern_matches(line):
    assert re.match(DEFAULT_BOUNDARY_PATTERN, line, re.MULTILINE)


@pytest.mark.parametrize("line", ["Chapter and verse were quoted at him.", "#hashtag", "The chapter ended"])
def test_default_pattern_rejects_prose(line):
    assert not re.match(DEFAULT_BOUNDARY_PATTERN, line, re.MULTILINE)


def test_front_matter_kept():
    doc = seg("A Title\nChapter 1\naaa")
    assert doc.labels == ["Front matter", "Chapter 1"]


def test_front_matter_dropped_below_threshold(caplog):
    doc = seg("Title\nChapter 1\n" + "a" * 20, min_segment_chars=10)
    assert doc.labels == ["Chapter 1"]
    assert any("front matter" in n for n in doc.notes)
    assert "front matter" in caplog.text


def test_short_segment_folds_into_predecessor():
    doc = seg("Chapter 1\n" + "a" * 30 + "\nChapter 2\nbb\nChapter 3\n" + "c" * 30, min_segment_chars=5)
    assert doc.labels == ["Chapter 1", "Chapter 3"]
    assert "bb" in doc.segments[0].text


def test_empty_chapter_body_is_folded():
    doc = seg("Chapter 1\n\nChapter 2\nbody")
    assert doc.labels == ["Chapter 2"]


def test_headings_only_is_an_error():
    with pytest.raises(SegmentationError):
        seg("Chapter 1\nChapter 2\n")


def test_rules_validation():
    with pytest.raises(ValueError):
        SegmentationRules(fallback_blank_lines=1)
    with pytest.raises(ValueError):
        SegmentationRules(min_segment_chars=-1)


_line = st.text(alphabet="abc xyz.,'\t", max_size=30)
_block = st.lists(st.one_of(_line, st.just("Chapter 3"), st.just("# Part"), st.just("")), max_size=12)


@settings(max_examples=200)
@given(_block)
def test_segmentation_is_total_and_lossless(lines):
    text = "\n".join(lines)
    if not text.strip():
        return
    try:
        doc = seg(text)
    except SegmentationError:
        # only allowed when every non-blank line is a heading
        pat = re.compile(DEFAULT_BOUNDARY_PATTERN)
        assert all(pat.match(l) or not l.strip() for l in lines)
        return
    assert len(doc.segments) >= 1
    assert [s.index for s in doc.segments] == list(range(len(doc.segments)))
    assert all(s.text.strip() for s in doc.segments)
    # every non-heading, non-whitespace character lands in exactly one segment
    pat = re.compile(DEFAULT_BOUNDARY_PATTERN)
    body = "".join(l for l in lines if not pat.match(l))
    joined = "".join(s.text for s in doc.segments)
    assert re.sub(r"\s", "", joined) == re.sub(r"\s", "", body)
    assert seg(text) == doc
