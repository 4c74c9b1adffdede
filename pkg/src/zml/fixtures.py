"""Embedded reference tables and coefficient-file ingestion.

The data directory defaults to the package's ``data`` folder; the
``ZML_DATA_DIR`` environment variable points it elsewhere.

Coefficient files hold one record per line, either JSON objects
``{"k": 10, "r": 2, "c": "7.702336630e-141"}`` or CSV with a ``k,r,c`` header.
Values stay decimal strings until they are turned into balls.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "data_dir",
    "RawCoefficient",
    "read_coefficient_lines",
    "read_coefficient_file",
    "table1_rows",
    "table2_rows",
    "Table1Row",
    "Table2Row",
]


def data_dir() -> Path:
    override = os.environ.get("ZML_DATA_DIR")
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


@dataclass(frozen=True)
class RawCoefficient:
    k: int
    r: int
    text: str


def _strip_comments(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def read_coefficient_lines(text: str) -> list[RawCoefficient]:
    """Parse JSON-lines or headed CSV coefficient records."""
    lines = _strip_comments(text)
    if not lines:
        return []
    out = []
    if lines[0].lstrip().startswith("{"):
        for n, ln in enumerate(lines, 1):
            try:
                obj = json.loads(ln)
                k, r, c = int(obj["k"]), int(obj["r"]), obj["c"]
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"line {n}: bad coefficient record ({exc})") from None
            if not isinstance(c, str):
                raise ValueError(f"line {n}: coefficient must be a decimal string")
            out.append(RawCoefficient(k, r, c.strip()))
        return out
    reader = csv.DictReader(io.StringIO("\n".join(lines)))
    missing = {"k", "r", "c"} - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"CSV header lacks columns {sorted(missing)}")
    for n, row in enumerate(reader, 2):
        try:
            out.append(RawCoefficient(int(row["k"]), int(row["r"]), row["c"].strip()))
        except (ValueError, AttributeError):
            raise ValueError(f"line {n}: bad coefficient record") from None
    return out


def read_coefficient_file(path: str | os.PathLike) -> list[RawCoefficient]:
    return read_coefficient_lines(Path(path).read_text())


@dataclass(frozen=True)
class Table1Row:
    k: int
    r: int
    c: str
    ratio: str


@dataclass(frozen=True)
class Table2Row:
    k: int
    T: str
    moment: str
    integral_Pk: str
    leading_term: str
    integral_bound: str


def _read_csv(name: str) -> list[dict]:
    text = (data_dir() / name).read_text()
    return list(csv.DictReader(io.StringIO("\n".join(_strip_comments(text)))))


def table1_rows() -> list[Table1Row]:
    return [Table1Row(int(d["k"]), int(d["r"]), d["c"], d["ratio"]) for d in _read_csv("table1.csv")]


def table2_rows() -> list[Table2Row]:
    return [
        Table2Row(int(d["k"]), d["T"], d["moment"], d["integral_Pk"], d["leading_term"], d["integral_bound"])
        for d in _read_csv("table2.csv")
    ]
