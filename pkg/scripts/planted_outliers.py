"""Plant off-voice chapters in a synthetic manuscript and check they are found.

Sweeps the generator seed and the share of foreign vocabulary in the planted
chapters, then writes the full CLI output for one manuscript:

    python scripts/planted_outliers.py --out runs/planted
"""
import argparse
from pathlib import Path

from narrmap.cli import main as narrmap_main
from narrmap.ingest import Document, segment_document
from narrmap.pipeline import analyze_document
from narrmap.synthetic import divergent_manuscript


def recovered(seed: int, share: float, planted=(6, 17, 25)) -> bool:
    doc = segment_document(Document("synthetic", divergent_manuscript(30, planted, outlier_share=share, seed=seed)))
    return analyze_document(doc).outliers.flagged == sorted(planted)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("runs/planted"))
    ap.add_argument("--seeds", type=int, default=10)
    args = ap.parse_args()

    print(f"{'share':>6}  recovered/{args.seeds}")
    for share in (0.2, 0.3, 0.4, 0.6, 0.8):
        hits = sum(recovered(s, share) for s in range(args.seeds))
        print(f"{share:>6.1f}  {hits}")

    args.out.mkdir(parents=True, exist_ok=True)
    text_path = args.out / "manuscript.md"
    text_path.write_text(divergent_manuscript(), encoding="utf-8")
    raise SystemExit(narrmap_main(["analyze", str(text_path), "--out", str(args.out), "--words", "15"]))


if __name__ == "__main__":
    main()
