"""Analyze two drafts of a synthetic manuscript and diff their outlier scores.

The first draft has a skeletal chapter 9 and two chapters in a borrowed
register; the second rewrites them. Writes both reports, a pooled comparison
and the delta table:

    python scripts/draft_diff.py --out runs/drafts
"""
import argparse
from pathlib import Path

from narrmap.cli import main as narrmap_main
from narrmap.synthetic import draft_pair


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("runs/drafts"))
    ap.add_argument("--seed", type=int, default=44)
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in zip(("draft1", "draft2"), draft_pair(args.seed)):
        path = args.out / f"{name}.md"
        path.write_text(text, encoding="utf-8")
        paths.append(path)
        code = narrmap_main(["analyze", str(path), "--out", str(args.out / name)])
        if code:
            raise SystemExit(code)
    code = narrmap_main(["compare", *map(str, paths), "--out", str(args.out / "pooled")])
    if code:
        raise SystemExit(code)
    raise SystemExit(narrmap_main([
        "diff", str(args.out / "draft1/report.json"), str(args.out / "draft2/report.json"),
        "--out", str(args.out / "delta"),
    ]))


if __name__ == "__main__":
    main()
