"""Command-line interface: ``narrmap analyze | compare | diff``.

Exit codes: 0 success, 1 usage error, 2 input/segmentation error,
3 numerical error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .compare import snapshot_diff
from .crosstab import TokenRules, VocabularyPolicy
from .errors import InputError, NumericalError
from .ingest import DEFAULT_BOUNDARY_PATTERN, SegmentationRules, load_document, segment_document
from .outliers import DEFAULT_FLAG_FRACTION
from .pipeline import AnalysisConfig, analyze_document, compare_documents
from .report import AnalysisReport, dumps
from .viz import render_factor_map

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3

log = logging.getLogger("narrmap")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _axes(text: str) -> tuple[int, int]:
    try:
        i, j = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated axis numbers, got {text!r}")
    if i < 1 or j < 1:
        raise argparse.ArgumentTypeError("axes are numbered from 1")
    return i, j


def _fraction(text: str) -> float:
    p = float(text)
    if not 0 < p <= 1:
        raise argparse.ArgumentTypeError(f"flag fraction must be in (0, 1], got {p}")
    return p


def _add_analysis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", required=True, type=Path, help="output directory")
    p.add_argument("--segment-regex", default=DEFAULT_BOUNDARY_PATTERN,
                   help="regular expression matching a chapter heading line")
    p.add_argument("--fallback-blank-lines", type=int, default=2,
                   help="blank lines that separate sections when no heading matches")
    p.add_argument("--min-segment-chars", type=int, default=1)
    p.add_argument("--stopwords", type=Path, metavar="FILE",
                   help="file of stopwords, one per line (default: none)")
    p.add_argument("--keep-numerals", action="store_true", help="keep numerals as tokens")
    p.add_argument("--min-count", type=int, default=2, help="minimum total count of a word")
    p.add_argument("--min-presence", type=int, default=1,
                   help="minimum number of segments a word must occur in")
    p.add_argument("--linkage", choices=("complete", "ward"), default="complete")
    p.add_argument("--axes", type=_axes, default=(1, 2), metavar="I,J")
    p.add_argument("--flag-fraction", type=_fraction, default=DEFAULT_FLAG_FRACTION, metavar="P")
    p.add_argument("--words", type=int, default=0, metavar="N",
                   help="overlay the N highest-inertia words on the factor map")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="narrmap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"narrmap {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="map one manuscript")
    a.add_argument("input", type=Path)
    a.add_argument("--name", help="document label (default: file stem)")
    _add_analysis_flags(a)

    c = sub.add_parser("compare", help="pool several manuscripts into one map")
    c.add_argument("inputs", type=Path, nargs="+")
    c.add_argument("--labels", help="comma-separated labels, one per input")
    _add_analysis_flags(c)

    d = sub.add_parser("diff", help="compare two reports of successive drafts")
    d.add_argument("report_a", type=Path)
    d.add_argument("report_b", type=Path)
    d.add_argument("--out", required=True, type=Path, help="output directory")
    return parser


def config_from_args(args) -> AnalysisConfig:
    stop = None
    if args.stopwords is not None:
        try:
            lines = args.stopwords.read_text(encoding="utf-8").split()
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read stopwords file {args.stopwords}: {exc}") from exc
        stop = frozenset(w.strip().lower() for w in lines if w.strip())
    try:
        return AnalysisConfig(
            segmentation=SegmentationRules(
                boundary_pattern=args.segment_regex,
                fallback_blank_lines=args.fallback_blank_lines,
                min_segment_chars=args.min_segment_chars,
            ),
            tokens=TokenRules(stopword_list=stop, strip_numerals=not args.keep_numerals),
            vocabulary=VocabularyPolicy(args.min_count, args.min_presence),
            linkage=args.linkage,
            axes=args.axes,
            flag_fraction=args.flag_fraction,
            n_words=args.words,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _read(path: Path, rules: SegmentationRules, name: str | None = None):
    try:
        doc = load_document(path, name)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return segment_document(doc, rules)


def _write_all(out: Path, files: dict[str, str]) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    config = config_from_args(args)
    doc = _read(args.input, config.segmentation, args.name)
    analysis = analyze_document(doc, config)
    files = {"report.json": analysis.report.to_json(), **analysis.svgs()}
    _write_all(args.out, files)
    flagged = ", ".join(doc.segments[i].label for i in analysis.outliers.flagged)
    print(f"{doc.source_name}: {len(doc.segments)} segments, "
          f"{analysis.crosstab.shape[1]} words, {analysis.embedding.n_axes} axes; "
          f"flagged: {flagged}")
    return EXIT_OK


def cmd_compare(args) -> int:
    if len(args.inputs) < 2:
        raise UsageError("compare needs at least two inputs")
    labels = None
    if args.labels is not None:
        labels = [s.strip() for s in args.labels.split(",")]
        if len(labels) != len(args.inputs):
            raise UsageError(f"{len(labels)} labels for {len(args.inputs)} inputs")
        if len(set(labels)) != len(labels):
            raise UsageError("labels must be unique")
    else:
        stems = [p.stem for p in args.inputs]
        if len(set(stems)) != len(stems):
            raise UsageError("input names collide; pass --labels")
    config = config_from_args(args)
    docs = [_read(p, config.segmentation, lab)
            for p, lab in zip(args.inputs, labels or [None] * len(args.inputs))]
    pooled, report = compare_documents(docs, labels, config)
    _write_all(args.out, {
        "report.json": report.to_json(),
        "comparison.svg": render_factor_map(pooled.plot),
    })
    print(f"{'document':<24} {'glyph':>5} {'segments':>8} {'dispersion':>12}")
    for row in report.documents:
        print(f"{row['label']:<24} {row['glyph']:>5} {row['segment_count']:>8} "
              f"{row['dispersion']:>12.6f}")
    return EXIT_OK


def cmd_diff(args) -> int:
    a = AnalysisReport.read(args.report_a)
    b = AnalysisReport.read(args.report_b)
    delta = snapshot_diff(a, b)
    for w in delta.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _write_all(args.out, {"delta.json": dumps(delta.to_dict())})
    print(f"{'segment':<28} {'before':>10} {'after':>10} {'delta':>10} {'rank':>9}")
    for d in delta.matched:
        print(f"{d.label[:28]:<28} {d.score_before:>10.4f} {d.score_after:>10.4f} "
              f"{d.delta:>+10.4f} {d.rank_before:>4}->{d.rank_after:<4}")
    for label in delta.removed:
        print(f"removed: {label}")
    for label in delta.added:
        print(f"added: {label}")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "compare": cmd_compare, "diff": cmd_diff}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"narrmap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"narrmap: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"narrmap: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
