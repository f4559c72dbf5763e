"""The JSON report: the single persisted format shared by all commands.

Reals are stored with 12 significant digits and keys are sorted, so
serialise -> parse -> serialise is byte-identical.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .errors import ReportError

SCHEMA_ID = "narrmap.report/1"
SIGNIFICANT_DIGITS = 12
REQUIRED_FIELDS = (
    "kind", "inputs", "segmentation", "vocabulary", "ca", "rows", "outliers", "metrics", "config",
)


def normalize(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples to JSON types, rounding reals."""
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    if isinstance(value, np.ndarray):
        return [normalize(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            return None
        v = float(f"{v:.{SIGNIFICANT_DIGITS}g}")
        return 0.0 if v == 0 else v
    if isinstance(value, (frozenset, set)):
        return sorted(normalize(v) for v in value)
    return value


def dumps(data: Any) -> str:
    return json.dumps(normalize(data), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


@dataclass
class AnalysisReport:
    kind: str
    inputs: list
    segmentation: dict
    vocabulary: dict
    ca: dict
    rows: list
    outliers: dict
    metrics: list
    config: dict
    dendrogram: dict | None = None
    documents: list | None = None
    schema_id: str = SCHEMA_ID
    tool_version: str = __version__

    def to_dict(self) -> dict:
        return normalize(asdict(self))

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        if not isinstance(data, dict):
            raise ReportError("report must be a JSON object")
        schema = data.get("schema_id", "")
        if not str(schema).startswith("narrmap.report/"):
            raise ReportError(f"not a narrmap report (schema_id={schema!r})")
        names = {f.name for f in fields(cls)}
        missing = [k for k in REQUIRED_FIELDS if k not in data]
        if missing:
            raise ReportError(f"report is missing fields: {', '.join(missing)}")
        return cls(**{k: v for k, v in data.items() if k in names})

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ReportError(f"report is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def read(cls, path: str | Path) -> "AnalysisReport":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise ReportError(f"cannot read report {path}: {exc}") from exc
        return cls.from_json(text)

    def segment_scores(self) -> list[tuple[str, float]]:
        """(label, centroid distance) per segment in reading order."""
        segs = sorted(self.outliers["segments"], key=lambda s: s["index"])
        return [(s["label"], s["centroid_distance"]) for s in segs]
