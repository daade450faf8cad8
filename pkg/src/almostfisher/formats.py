"""Family documents, Hadamard matrix files, graph files and CSV tables.

A family document is JSON with keys in the fixed order ``n``, ``lambda``,
``k``, ``sets`` (the middle two optional) and one set per line, so the
canonical text of a family is unique and diffs cleanly.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from typing import Iterable

from .constructions import HadamardMatrix, hadamard_from_rows
from .errors import FormatError, ParameterError
from .family import SetFamily, build_family
from .search import SearchResult
from .structure import SimpleGraph

CSV_COLUMNS = ("n", "k", "lambda", "f", "certified", "witness_id")


@dataclass(frozen=True)
class FamilyDocument:
    family: SetFamily
    lam: int | None = None
    k: int | None = None


def serialize_family(family: SetFamily, lam: int | None = None, k: int | None = None) -> str:
    lines = ["{", f'  "n": {family.ground_size},']
    if lam is not None:
        lines.append(f'  "lambda": {lam},')
    if k is not None:
        lines.append(f'  "k": {k},')
    members = family.members()
    if not members:
        lines.append('  "sets": []')
    else:
        lines.append('  "sets": [')
        body = ["    " + json.dumps(s) for s in members]
        lines.append(",\n".join(body))
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _optional_int(data: dict, key: str) -> int | None:
    v = data.get(key)
    if v is None:
        return None
    if not _is_int(v) or v < 0:
        raise FormatError(f'"{key}" must be a non-negative integer')
    return v


def parse_family(text: str) -> FamilyDocument:
    """Parse a family document.

    Raises
    ------
    FormatError
        On invalid JSON (with line and column) or a wrong field shape.
    FamilyError
        If an element is out of range or two sets coincide; the message
        names the offending indices.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise FormatError("family document must be a JSON object")
    unknown = set(data) - {"n", "lambda", "k", "sets"}
    if unknown:
        raise FormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    n = data.get("n")
    if not _is_int(n) or n < 1:
        raise FormatError('"n" must be a positive integer')
    sets = data.get("sets")
    if not isinstance(sets, list):
        raise FormatError('"sets" must be a list of integer lists')
    for i, s in enumerate(sets):
        if not isinstance(s, list) or not all(_is_int(e) for e in s):
            raise FormatError(f"set {i} must be a list of integers")
        if len(set(s)) != len(s):
            raise FormatError(f"set {i} repeats an element")
    family = build_family(n, sets)
    return FamilyDocument(family, _optional_int(data, "lambda"), _optional_int(data, "k"))


def load_family(path: str) -> FamilyDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_family(fh.read())


def parse_hadamard(text: str) -> HadamardMatrix:
    """One row per line of whitespace-separated ``+1``/``-1`` (or ``1``) entries."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for match in re.finditer(r"\S+", line):
            tok = match.group()
            if tok not in ("1", "+1", "-1"):
                raise FormatError(f"entry {tok!r} is not +1 or -1", lineno, match.start() + 1)
            row.append(int(tok))
        rows.append(row)
    if not rows:
        raise FormatError("empty Hadamard matrix file")
    width = len(rows[0])
    if any(len(r) != width for r in rows) or width != len(rows):
        raise FormatError(f"matrix is not square ({len(rows)} rows)")
    try:
        return hadamard_from_rows(rows)
    except ParameterError as exc:
        raise FormatError(f"not a Hadamard matrix: {exc}") from None


def serialize_hadamard(h: HadamardMatrix) -> str:
    return "".join(" ".join("+1" if x == 1 else "-1" for x in row) + "\n" for row in h.rows())


def load_hadamard(path: str) -> HadamardMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_hadamard(fh.read())


def parse_graph(text: str) -> SimpleGraph:
    """JSON ``{"vertex_count": V, "edges": [[u, v], ...]}`` with 0-based vertices."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or not _is_int(data.get("vertex_count")) or data["vertex_count"] < 0:
        raise FormatError('graph document needs a non-negative integer "vertex_count"')
    edges = data.get("edges", [])
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(_is_int(x) for x in e) for e in edges
    ):
        raise FormatError('"edges" must be a list of integer pairs')
    try:
        return SimpleGraph(data["vertex_count"], frozenset(tuple(e) for e in edges))
    except ParameterError as exc:
        raise FormatError(str(exc)) from None


def search_csv(results: Iterable[SearchResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow([r.n, r.k, r.lam, r.max_size, str(r.exhaustive_certificate).lower(),
                         format(r.witness_id, "x")])
    return buf.getvalue()


def parse_search_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise FormatError(f"expected columns {','.join(CSV_COLUMNS)}", 1)
    out = []
    for lineno, row in enumerate(reader, start=2):
        try:
            out.append({
                "n": int(row["n"]), "k": int(row["k"]), "lambda": int(row["lambda"]),
                "f": int(row["f"]), "certified": row["certified"] == "true",
                "witness_id": int(row["witness_id"], 16),
            })
        except (TypeError, ValueError):
            raise FormatError("malformed row", lineno) from None
    return out
