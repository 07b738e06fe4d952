"""File formats: series CSVs, symbol CSVs, measure records and run manifests."""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .groups import FiniteGroup, symmetric_group
from .symbolization import RealSeries, SymbolSeries

SIG_DIGITS = 12


class DataError(ValueError):
    """Malformed input data (maps to exit code 65 in the CLI)."""


def fmt(value: float) -> str:
    return f"{value:.{SIG_DIGITS}g}"


def jsonable(value):
    """Round floats to 12 significant digits; encode non-finite values as strings."""
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return float(fmt(value))
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Series CSVs
# ---------------------------------------------------------------------------


def _rows(path: Path) -> list[list[str]]:
    with open(path, newline="") as fh:
        return [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_real_csv(path, column=None) -> RealSeries:
    """One numeric column of a CSV file, with or without a header row.

    ``column`` is a header name or a 0-based index; the first column by default.
    """
    path = Path(path)
    rows = _rows(path)
    if not rows:
        raise DataError(f"{path}: no data rows")
    header = None if all(_is_number(c) for c in rows[0]) else [c.strip() for c in rows[0]]
    body = rows[1:] if header else rows
    if column is None:
        j = 0
    elif header and str(column) in header:
        j = header.index(str(column))
    elif str(column).lstrip("-").isdigit():
        j = int(column)
    else:
        raise DataError(f"{path}: no column {column!r}")
    first = 2 if header else 1
    values = []
    for k, row in enumerate(body):
        line = k + first
        if j >= len(row):
            raise DataError(f"{path}: row {line} has no column {column if column is not None else 0}")
        try:
            v = float(row[j])
        except ValueError:
            raise DataError(f"{path}: row {line}: {row[j]!r} is not a number") from None
        if not math.isfinite(v):
            raise DataError(f"{path}: row {line}: non-finite value {row[j]!r}")
        values.append(v)
    if not values:
        raise DataError(f"{path}: no data rows")
    return RealSeries(np.array(values), label=str(column) if column is not None else path.stem)


def symbols_csv(s: SymbolSeries) -> str:
    """Columns ``t, symbol_index, one_line_form``."""
    labels = s.group.labels
    lines = ["t,symbol_index,one_line_form"]
    for t, i in enumerate(s.symbols):
        form = labels[i]
        lines.append(f'{t},{i},"{form}"' if "," in form else f"{t},{i},{form}")
    return "\n".join(lines) + "\n"


def write_symbols_csv(s: SymbolSeries, path) -> None:
    Path(path).write_text(symbols_csv(s))


def is_symbols_csv(path) -> bool:
    rows = _rows(Path(path))
    return bool(rows) and "symbol_index" in [c.strip() for c in rows[0]]


def read_symbols_csv(path, group: FiniteGroup | None = None) -> SymbolSeries:
    """Inverse of :func:`write_symbols_csv`.  The group is inferred from the one-line forms."""
    path = Path(path)
    rows = _rows(path)
    header = [c.strip() for c in rows[0]]
    j = header.index("symbol_index")
    k = header.index("one_line_form") if "one_line_form" in header else None
    if group is None:
        if k is None or len(rows) < 2:
            raise DataError(f"{path}: cannot infer the group without one_line_form")
        form = rows[1][k].strip()
        group = symmetric_group(len(form.split(",")) if "," in form else len(form))
    symbols = []
    for n, row in enumerate(rows[1:], start=2):
        try:
            i = int(row[j])
        except (ValueError, IndexError):
            raise DataError(f"{path}: row {n}: bad symbol index") from None
        if not 0 <= i < len(group):
            raise DataError(f"{path}: row {n}: symbol {i} outside 0..{len(group) - 1}")
        if k is not None and row[k].strip() != group.labels[i]:
            raise DataError(f"{path}: row {n}: {row[k]!r} does not match index {i}")
        symbols.append(i)
    return SymbolSeries(group, symbols, {"label": path.stem})


# ---------------------------------------------------------------------------
# Records and manifests
# ---------------------------------------------------------------------------


@dataclass
class MeasureRecord:
    measure: str
    value: object
    log_base: object = None
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return jsonable({"measure": self.measure, "value": self.value,
                         "log_base": self.log_base, "params": self.params})


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    command: str
    params: dict
    input_hashes: dict = field(default_factory=dict)
    tool_version: str = __version__
    timestamp: str = ""

    @classmethod
    def create(cls, command: str, params: dict, inputs=()) -> RunManifest:
        hashes = {str(p): sha256_file(p) for p in inputs}
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return cls(command, params, hashes, __version__, stamp)

    def write(self, path) -> None:
        Path(path).write_text(dumps(self.__dict__))
