"""The documents module reads matrix files and turns matrices, trees, segments and reports into JSON documents."""

import codecs
import json
import pathlib
import sys
from fractions import Fraction

import numpy as np

from ..core.maxplus import DimensionError, ProjectivePoint, as_matrix, as_scalar, canonicalize
from ..core.tree import MetricTree, SpineEdge, SpineVertex, format_split


class DocumentError(ValueError):
    """Indicate a matrix, tree or Newick document that cannot be read."""

    def __init__(self, source, message="Cannot read {source}: {reason}", reason=""):
        self.source = source
        self.reason = reason
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return self.message.format(source=self.source, reason=self.reason)


def _read_source(source) -> str:
    if str(source) == "-":
        return sys.stdin.read()
    try:
        with codecs.open(source, "r", encoding="utf-8") as fdata:
            return fdata.read()
    except (OSError, UnicodeDecodeError) as error:
        raise DocumentError(source, reason=str(error))


def _identify_format(text: str) -> str:
    # JSON documents start with an object or an array, text matrices with a number
    stripped = text.lstrip()
    if stripped[:1] in ("{", "["):
        return "json"
    return "text"


def _reject_constant(name):
    raise ValueError(f"{name} is not an exact number")


def _parse_json(text: str, source):
    try:
        document = json.loads(text, parse_float=Fraction, parse_constant=_reject_constant)
    except ValueError as error:
        raise DocumentError(source, reason=str(error))
    if isinstance(document, list):
        return document
    if not isinstance(document, dict) or "entries" not in document:
        raise DocumentError(source, reason='expected an object with "n" and "entries"')
    entries = document["entries"]
    if "n" in document and (not isinstance(entries, list) or len(entries) != document["n"]):
        raise DocumentError(source, reason=f'"n" is {document["n"]} but entries do not match')
    return entries


def _parse_text(text: str):
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def parse_matrix(text: str, source="<string>", square: bool = True) -> np.ndarray:
    """
    Parse a matrix document.

    Two formats are accepted and told apart by their first character: JSON, either
    ``{"n": n, "entries": [[...], ...]}`` or a bare array of rows, and plain text with one row
    per line and whitespace between entries (``#`` starts a comment). Entries are integers,
    decimals or "num/den" strings and are read exactly.

    Parameters
    ----------
    text : str
    source : str, optional
        Name used in error messages.
    square : bool, optional
        Require an n x n matrix. Defaults to True.

    Returns
    ----------
    np.ndarray
        Object array of exact scalars.

    Raises
    ----------
    DocumentError
        If the text is empty, malformed, not rectangular (or square) or holds a non-finite or
        inexact entry.
    """
    if not text.strip():
        raise DocumentError(source, reason="the document is empty")
    rows = _parse_json(text, source) if _identify_format(text) == "json" else _parse_text(text)
    try:
        matrix = as_matrix(rows)
    except (DimensionError, ValueError, TypeError) as error:
        raise DocumentError(source, reason=str(error))
    if square and matrix.shape[0] != matrix.shape[1]:
        raise DocumentError(source, reason=f"expected a square matrix, got shape {matrix.shape}")
    return matrix


def read_matrix(source, square: bool = True) -> np.ndarray:
    """Read a matrix file; ``"-"`` reads standard input. See :func:`parse_matrix`."""
    return parse_matrix(_read_source(source), str(source), square)


def read_document(source) -> dict:
    """Read a JSON document (a tree document for instance) from a file or ``"-"``."""
    try:
        return json.loads(_read_source(source))
    except ValueError as error:
        raise DocumentError(source, reason=str(error))


def format_scalar(value) -> str:
    """Exact text form of a scalar: "12", "-7/2"."""
    value = as_scalar(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _point(point: ProjectivePoint):
    return [format_scalar(x) for x in point.coords]


def _labels(labels):
    return sorted(int(k) for k in labels)


def matrix_document(A) -> dict:
    entries = A.entries if hasattr(A, "entries") else as_matrix(A)
    return {
        "n": int(entries.shape[0]),
        "entries": [[format_scalar(x) for x in row] for row in entries.tolist()],
    }


def fracture_document(record) -> dict:
    return {
        "stage": record.stage,
        "row": record.row,
        "victim": list(record.victim),
        "victim_length": format_scalar(record.victim_length),
        "parts": [list(part) for part in record.parts],
        "part_lengths": [format_scalar(x) for x in record.part_lengths],
        "tie": record.tie,
        "zero_part": record.zero_part,
    }


def stage_document(record) -> dict:
    return {
        "stage": record.stage,
        "leaf": record.leaf,
        "case": record.case,
        "offset": format_scalar(record.offset),
        "vertex": _point(record.vertex),
        "lengths": [format_scalar(x) for x in record.lengths],
        "bipartitions": [format_split(split) for split in record.splits],
        "fracture": fracture_document(record.fracture),
    }


def tree_document(tree: MetricTree, stages=None) -> dict:
    """
    JSON document of a tree, keys in a fixed order.

    Parameters
    ----------
    tree : MetricTree
    stages : list of StageRecord, optional
        Appended under "stages" when given.

    Returns
    ----------
    dict
        Keys n, columns, p, q, bipartitions, spine, edges, marks, lengths, total, newick
        (and stages). Scalars are exact strings.
    """
    from .newick import to_newick

    i, j = tree.columns
    document = {
        "n": tree.n,
        "columns": [i, j],
        "p": _point(tree.p),
        "q": _point(tree.q),
        "bipartitions": [format_split(split) for split in tree.bipartitions],
        "spine": [
            {
                "coords": _point(v.coords),
                "leaves": _labels(v.leaves),
                "offset": format_scalar(v.offset),
            }
            for v in tree.vertices
        ],
        "edges": [
            {
                "length": format_scalar(e.length),
                "p_side": _labels(e.split[0]),
                "q_side": _labels(e.split[1]),
            }
            for e in tree.edges
        ],
        "marks": {
            "p": {"ray": j, "offset": format_scalar(tree.p_offset)},
            "q": {"ray": i, "offset": format_scalar(tree.q_offset)},
        },
        "lengths": [format_scalar(x) for x in tree.lengths],
        "total": format_scalar(tree.total_length),
        "newick": to_newick(tree),
    }
    if stages is not None:
        document["stages"] = [stage_document(record) for record in stages]
    return document


def tree_from_document(document: dict) -> MetricTree:
    """
    Rebuild a MetricTree from :func:`tree_document` output.

    Raises
    ----------
    DocumentError
        If a key is missing or a value cannot be read.
    """
    try:
        vertices = tuple(
            SpineVertex(
                canonicalize(v["coords"]),
                frozenset(int(k) for k in v["leaves"]),
                as_scalar(v["offset"]),
            )
            for v in document["spine"]
        )
        edges = tuple(
            SpineEdge(
                as_scalar(e["length"]),
                (frozenset(e["p_side"]), frozenset(e["q_side"])),
            )
            for e in document["edges"]
        )
        return MetricTree(
            n=int(document["n"]),
            columns=tuple(document["columns"]),
            p=canonicalize(document["p"]),
            q=canonicalize(document["q"]),
            vertices=vertices,
            edges=edges,
            p_offset=as_scalar(document["marks"]["p"]["offset"]),
            q_offset=as_scalar(document["marks"]["q"]["offset"]),
        )
    except (KeyError, TypeError, ValueError) as error:
        raise DocumentError("tree document", reason=f"{type(error).__name__}: {error}")


def segment_document(segment) -> dict:
    return {
        "p": _point(segment.start),
        "q": _point(segment.end),
        "breakpoints": [_point(b) for b in segment.breakpoints],
        "pieces": [
            {"slope": _labels(slope), "length": format_scalar(length)}
            for slope, length in zip(segment.slopes, segment.lengths)
        ],
        "total": format_scalar(segment.total),
    }


def violations_document(report) -> dict:
    return {
        "ni": report.ok,
        "violations": [
            {
                "kind": v.kind,
                "indices": [v.i, v.j] + ([v.k] if v.k is not None else []),
                "message": str(v),
            }
            for v in report
        ],
    }


def report_document(report) -> dict:
    return {
        "overall": report.overall,
        "checks": [
            {"name": c.name, "passed": c.passed, "witness": c.witness} for c in report.checks
        ],
    }


def dumps(document) -> str:
    """Serialize with a fixed layout so identical input gives byte-identical output."""
    return json.dumps(document, indent=2, ensure_ascii=True)
