"""
Report serialization.

Reports are deterministic: JSON keys are sorted, no timestamps are written,
non-finite floats become the strings "inf", "-inf" and "nan", and CSV uses
17 significant digits with LF line endings.
"""

import csv
import hashlib
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from infodist.models.schemas import from_matrix

CSV_FORMAT = "{:.17g}"


@dataclass(frozen=True)
class Table:
    header: List[str]
    rows: List[List[Any]]


def config_hash(effective_config: Dict[str, Any]) -> str:
    """sha256 of the canonical JSON form of the effective job config."""
    canonical = json.dumps(effective_config, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _float(x: float) -> Any:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def jsonable(obj: Any) -> Any:
    """Convert numpy values, matrices and non-finite floats to plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return jsonable(from_matrix(obj))
        if np.iscomplexobj(obj):
            return [[_float(z.real), _float(z.imag)] for z in obj.ravel()]
        return [_float(float(v)) for v in obj.ravel()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_float(obj.real), _float(obj.imag)]
    return obj


def render_json(payload: Dict[str, Any], indent: int = 2) -> str:
    return json.dumps(jsonable(payload), indent=indent, sort_keys=True, ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            return _float(v)
        return CSV_FORMAT.format(v)
    return str(value)


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=",", lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def write_text(text: str, path: Optional[str]) -> None:
    """Write to `path` with LF endings, or to stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def scalar_or_trace(matrix: np.ndarray) -> float:
    """The entry of a 1×1 Fisher matrix, the real trace otherwise."""
    return float(np.trace(np.asarray(matrix)).real)
