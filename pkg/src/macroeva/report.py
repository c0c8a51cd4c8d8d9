"""Report document model and deterministic text/JSON rendering.

Both renderings are generated from one ReportDocument holding full-precision
numbers: the text renderer applies the declared per-kind precision, the JSON
renderer emits the numbers untouched. Nothing here reads clocks or any other
ambient state, so identical inputs produce byte-identical output.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

# Declared rendering precision per numeric kind (text output only).
KIND_PRECISION = {
    "billions": 2,
    "rate": 4,
    "pvalue": 5,
}


@dataclass(frozen=True)
class Num:
    """A numeric cell tagged with its rendering kind."""

    value: float
    kind: str

    def __post_init__(self):
        if self.kind not in KIND_PRECISION:
            raise ValueError(f"unknown numeric kind {self.kind!r}")


Cell = Union[Num, int, str]


@dataclass
class TableSection:
    title: str
    columns: list[str]
    rows: list[list[Cell]]


@dataclass
class EntriesSection:
    title: str
    entries: dict[str, Cell]


Section = Union[TableSection, EntriesSection]


@dataclass
class ReportDocument:
    command: str
    inputs_digest: str
    sections: list[Section] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def digest_inputs(paths: Sequence[Path]) -> str:
    """SHA-256 over the byte content of every input file, in argument order."""
    h = hashlib.sha256()
    for path in paths:
        data = Path(path).read_bytes()
        h.update(f"{len(data)}:".encode("ascii"))
        h.update(data)
    return h.hexdigest()


def format_cell(cell: Cell, precision: int | None = None) -> str:
    """Text rendering of one cell at its declared (or overridden) precision."""
    if isinstance(cell, Num):
        digits = precision if precision is not None else KIND_PRECISION[cell.kind]
        return f"{cell.value:.{digits}f}"
    if isinstance(cell, bool):  # bool is an int; keep it readable
        return "yes" if cell else "no"
    if isinstance(cell, int):
        return str(cell)
    return str(cell)


def _json_cell(cell: Cell):
    if isinstance(cell, Num):
        return cell.value
    return cell


def render_text(doc: ReportDocument, precision: int | None = None) -> str:
    """Aligned plain-text rendering of the document."""
    lines = [f"command: {doc.command}", f"inputs_digest: {doc.inputs_digest}"]
    for section in doc.sections:
        lines.append("")
        lines.append(f"== {section.title} ==")
        if isinstance(section, TableSection):
            header = list(section.columns)
            body = [[format_cell(c, precision) for c in row] for row in section.rows]
            widths = [len(h) for h in header]
            for row in body:
                for i, cell in enumerate(row):
                    widths[i] = max(widths[i], len(cell))
            def fmt_row(cells, is_numeric):
                out = []
                for i, cell in enumerate(cells):
                    if is_numeric[i]:
                        out.append(cell.rjust(widths[i]))
                    else:
                        out.append(cell.ljust(widths[i]))
                return "  ".join(out).rstrip()
            numeric_cols = [
                any(isinstance(row[i], (Num, int)) for row in section.rows)
                if section.rows else False
                for i in range(len(header))
            ]
            lines.append(fmt_row(header, numeric_cols))
            for row in body:
                lines.append(fmt_row(row, numeric_cols))
        else:
            for key, cell in section.entries.items():
                lines.append(f"{key}: {format_cell(cell, precision)}")
    if doc.warnings:
        lines.append("")
        lines.append("warnings:")
        for warning in doc.warnings:
            lines.append(f"  - {warning}")
    return "\n".join(lines) + "\n"


def render_json(doc: ReportDocument) -> str:
    """Machine rendering with numbers at full precision."""
    sections = []
    for section in doc.sections:
        if isinstance(section, TableSection):
            sections.append(
                {
                    "title": section.title,
                    "columns": list(section.columns),
                    "rows": [[_json_cell(c) for c in row] for row in section.rows],
                }
            )
        else:
            sections.append(
                {
                    "title": section.title,
                    "entries": {k: _json_cell(v) for k, v in section.entries.items()},
                }
            )
    payload = {
        "command": doc.command,
        "inputs_digest": doc.inputs_digest,
        "sections": sections,
        "warnings": list(doc.warnings),
    }
    return json.dumps(payload, indent=2) + "\n"
