"""Deterministic JSON and CSV emission."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .brackets import fmt

CELL_COLUMNS = ("d", "n", "F_size", "sigma", "F_radius", "F_index", "delta", "eps", "tag",
                "lo", "hi", "mode")


def normalize(obj):
    """Round every float to 12 significant digits; infinities become strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if hasattr(obj, "to_json"):
        return normalize(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(normalize(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def cells_csv(report: dict) -> str:
    cells = report.get("cells", [])
    present = [c for c in CELL_COLUMNS if any(c in cell for cell in cells)]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=present, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for cell in cells:
        writer.writerow({k: ("" if cell.get(k) is None else cell.get(k)) for k in present})
    return buf.getvalue()


def write_reports(report: dict, outdir) -> tuple[Path, Path]:
    """Write report.json and cells.csv into ``outdir``."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    report = normalize(report)
    js, cs = out / "report.json", out / "cells.csv"
    js.write_text(dumps(report))
    cs.write_text(cells_csv(report))
    return js, cs
