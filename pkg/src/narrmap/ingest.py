"""Loading manuscripts and splitting them into ordered narrative segments."""
from __future__ import annotations

import codecs
import logging
import re
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import EmptyInputError, EncodingError, SegmentationError

log = logging.getLogger(__name__)

# A heading line: "Chapter"/"CHAPTER" with an optional numeral or word and an
# optional punctuated title, or a markdown "#" heading.
DEFAULT_BOUNDARY_PATTERN = (
    r"^[ \t]*(?:"
    r"(?:Chapter|CHAPTER)(?:[ \t]+[\w]+)?[ \t]*(?:[.:\-\u2013\u2014][^\n]*)?"
    r"|#{1,6}[ \t]+[^\n]*\S"
    r")[ \t]*$"
)

FRONT_MATTER_LABEL = "Front matter"


@dataclass(frozen=True)
class Segment:
    index: int
    label: str
    text: str


@dataclass(frozen=True)
class Document:
    source_name: str
    raw_text: str
    segments: tuple[Segment, ...] = ()
    # Human-readable notes produced during segmentation (dropped front matter, merges).
    notes: tuple[str, ...] = ()

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.segments]


@dataclass(frozen=True)
class SegmentationRules:
    boundary_pattern: str = DEFAULT_BOUNDARY_PATTERN
    fallback_blank_lines: int = 2
    min_segment_chars: int = 1

    def __post_init__(self):
        if self.fallback_blank_lines < 2:
            raise ValueError("fallback_blank_lines must be >= 2")
        if self.min_segment_chars < 0:
            raise ValueError("min_segment_chars must be >= 0")
        try:
            re.compile(self.boundary_pattern, re.MULTILINE)
        except re.error as exc:
            raise ValueError(f"invalid boundary_pattern: {exc}") from exc


def load_document(source: str | Path | bytes, name: str | None = None) -> Document:
    """Read a UTF-8 manuscript (BOM tolerated) and normalise line endings.

    ``source`` is either raw bytes or a filesystem path.
    """
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
        name = name if name is not None else "<bytes>"
    else:
        path = Path(source)
        data = path.read_bytes()
        name = name if name is not None else path.stem

    bom = len(codecs.BOM_UTF8) if data.startswith(codecs.BOM_UTF8) else 0
    try:
        text = data[bom:].decode("utf-8")
    except UnicodeDecodeError as exc:
        offset = exc.start + bom
        raise EncodingError(
            f"{name}: invalid UTF-8 at byte offset {offset}", offset=offset
        ) from exc

    text = text.replace("\r\n", "\n").replace("\r", "\n")
    if not text.strip():
        raise EmptyInputError(f"{name}: input is empty")
    return Document(source_name=name, raw_text=text)


def _merge_short(pieces: list[tuple[str, str]], min_chars: int, notes: list[str]):
    """Fold candidates shorter than ``min_chars`` into their predecessor.

    A short leading candidate has no predecessor and is carried into the next one.
    Empty bodies are always folded, since a segment must carry text.
    """
    floor = max(min_chars, 1)
    out: list[tuple[str, str]] = []
    carry = ""
    for label, text in pieces:
        if carry:
            text = carry + "\n" + text if text.strip() else carry
            carry = ""
        if len(text.strip()) >= floor:
            out.append((label, text))
        elif out:
            prev_label, prev_text = out[-1]
            if text.strip():
                out[-1] = (prev_label, prev_text + "\n" + text)
            notes.append(f"segment {label!r} shorter than {floor} chars folded into {prev_label!r}")
        else:
            carry = text if text.strip() else ""
            notes.append(f"segment {label!r} shorter than {floor} chars folded into its successor")
    if carry:
        if out:
            prev_label, prev_text = out[-1]
            out[-1] = (prev_label, prev_text + "\n" + carry)
        else:
            out.append((pieces[-1][0], carry))
    return out


def _heading_label(line: str) -> str:
    label = line.strip().lstrip("#").strip()
    return label or line.strip()


def _split_headings(text: str, pattern: re.Pattern) -> tuple[str, list[tuple[str, str]]] | None:
    matches = list(pattern.finditer(text))
    if not matches:
        return None
    front = text[: matches[0].start()]
    pieces = []
    for m, nxt in zip(matches, matches[1:] + [None]):
        end = nxt.start() if nxt is not None else len(text)
        body = text[m.end() : end].strip("\n")
        pieces.append((_heading_label(m.group(0)), body))
    return front, pieces


def _split_blank_lines(text: str, blank_lines: int) -> list[str]:
    sep = re.compile(r"\n(?:[ \t]*\n){%d,}" % blank_lines)
    return [b.strip("\n") for b in sep.split(text) if b.strip()]


def segment_document(doc: Document, rules: SegmentationRules | None = None) -> Document:
    """Split ``doc.raw_text`` into segments and return a new Document.

    Heading lines delimit segments and become labels; heading text is not
    part of any segment body. Without headings, runs of at least
    ``rules.fallback_blank_lines`` blank lines act as section breaks.
    """
    rules = rules or SegmentationRules()
    if not doc.raw_text.strip():
        raise SegmentationError(f"{doc.source_name}: nothing to segment")
    pattern = re.compile(rules.boundary_pattern, re.MULTILINE)
    notes: list[str] = []

    split = _split_headings(doc.raw_text, pattern)
    if split is not None:
        front, pieces = split
        front = front.strip("\n")
        if front.strip():
            if len(front.strip()) >= rules.min_segment_chars:
                pieces.insert(0, (FRONT_MATTER_LABEL, front))
            else:
                msg = f"front matter ({len(front.strip())} chars) below min_segment_chars, dropped"
                log.warning("%s: %s", doc.source_name, msg)
                notes.append(msg)
        pieces = _merge_short(pieces, rules.min_segment_chars, notes)
    else:
        blocks = _split_blank_lines(doc.raw_text, rules.fallback_blank_lines)
        pieces = [(f"Section {k}", b) for k, b in enumerate(blocks, start=1)]
        pieces = _merge_short(pieces, rules.min_segment_chars, notes)
        pieces = [(f"Section {k}", text) for k, (_, text) in enumerate(pieces, start=1)]
        if len(pieces) <= 1:
            pieces = [("Section 1", doc.raw_text.strip("\n"))] if doc.raw_text.strip() else []

    if not pieces:
        raise SegmentationError(f"{doc.source_name}: segmentation produced no segments")
    segments = tuple(Segment(i, label, text) for i, (label, text) in enumerate(pieces))
    return replace(doc, segments=segments, notes=tuple(notes))


def read_and_segment(path: str | Path, rules: SegmentationRules | None = None, name: str | None = None) -> Document:
    return segment_document(load_document(path, name), rules)
