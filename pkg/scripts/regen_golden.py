"""Rewrite the golden outputs for the bundled fixture.

Run after an intentional change to the report or SVG format, then review
the diff before committing:

    python scripts/regen_golden.py
"""
from pathlib import Path

from narrmap.cli import main

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    code = main(["analyze", str(ROOT / "tests/data/harbour.md"), "--out", str(ROOT / "tests/golden")])
    raise SystemExit(code)
