"""
This module contains tests for reading matrices and writing JSON documents in troplin.backend.documents.

Contains tests: test_parse_text, test_parse_json, test_parse_rectangular, test_parse_errors,
test_read_matrix, test_read_matrix_stdin, test_format_scalar, test_matrix_document,
test_tree_document, test_tree_document_stages, test_tree_round_trip, test_tree_from_document_errors,
test_segment_document, test_violations_document, test_report_document
"""

import io
import json
from fractions import Fraction

import pytest

from troplin.backend.documents import (
    DocumentError,
    dumps,
    format_scalar,
    matrix_document,
    parse_matrix,
    read_document,
    read_matrix,
    report_document,
    segment_document,
    tree_document,
    tree_from_document,
    violations_document,
)
from troplin.core.builder import build_tree, trace_line
from troplin.core.maxplus import tconv
from troplin.core.nimatrix import check_ni
from troplin.core.oracle import CheckResult, VerificationReport
from troplin.utils.get_data import example_matrix

TEXT45 = """\
# the 4 x 4 worked example
0   -12 -10 -10
-10 0   -10 -10
-11 -14 0   -15  # row 3
-15 -13 -15 0
"""

KEYS = [
    "n",
    "columns",
    "p",
    "q",
    "bipartitions",
    "spine",
    "edges",
    "marks",
    "lengths",
    "total",
    "newick",
]


def test_parse_text():
    A = parse_matrix(TEXT45)
    assert A.tolist() == example_matrix("example45").tolist()
    halves = parse_matrix("0 -1/2\n-0.5 0")
    assert halves.tolist() == [[0, Fraction(-1, 2)], [Fraction(-1, 2), 0]]


def test_parse_json():
    document = json.dumps({"n": 2, "entries": [[0, "-1/2"], [-0.25, 0]]})
    assert parse_matrix(document).tolist() == [[0, Fraction(-1, 2)], [Fraction(-1, 4), 0]]
    assert parse_matrix("[[0, -3], [-2, 0]]").tolist() == [[0, -3], [-2, 0]]
    # JSON floats are read from their text, never through binary floating point
    assert parse_matrix('[[0, -0.1], [-0.2, 0]]')[0, 1] == Fraction(-1, 10)


def test_parse_rectangular():
    columns = parse_matrix("0 -12\n-10 0\n-11 -14\n-15 -13", square=False)
    assert columns.shape == (4, 2)
    with pytest.raises(DocumentError):
        parse_matrix("0 -12\n-10 0\n-11 -14\n-15 -13")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "  \n# only a comment\n",
        "0 1\n2",
        "0 abc\n1 0",
        '{"n": 3, "entries": [[0, -1], [-1, 0]]}',
        '{"rows": [[0]]}',
        "[[0, NaN], [0, 0]]",
        "[[0, -1], [-1, 0]",
        '"just a string"',
    ],
)
def test_parse_errors(text):
    with pytest.raises(DocumentError) as error:
        parse_matrix(text, source="input.txt")
    assert str(error.value).startswith("Cannot read input.txt: ")


def test_read_matrix(tmp_path):
    path = tmp_path / "a.txt"
    path.write_text(TEXT45)
    assert read_matrix(path).shape == (4, 4)
    with pytest.raises(DocumentError) as error:
        read_matrix(tmp_path / "missing.txt")
    assert "missing.txt" in str(error.value)


def test_read_matrix_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("[[0, -1], [-2, 0]]"))
    assert read_matrix("-").tolist() == [[0, -1], [-2, 0]]


@pytest.mark.parametrize(
    "value, text",
    [(4, "4"), (Fraction(-7, 2), "-7/2"), (Fraction(4, 2), "2"), ("0.75", "3/4"), (-0, "0")],
)
def test_format_scalar(value, text):
    assert format_scalar(value) == text


def test_matrix_document():
    document = matrix_document(example_matrix("example45"))
    assert document == {
        "n": 4,
        "entries": [
            ["0", "-12", "-10", "-10"],
            ["-10", "0", "-10", "-10"],
            ["-11", "-14", "0", "-15"],
            ["-15", "-13", "-15", "0"],
        ],
    }
    assert parse_matrix(dumps(document)).tolist() == example_matrix("example45").tolist()


def test_tree_document():
    document = tree_document(build_tree(example_matrix("example45")))
    assert list(document) == KEYS
    assert document["columns"] == [1, 2]
    assert document["p"] == ["15", "5", "4", "0"]
    assert document["q"] == ["1", "13", "-1", "0"]
    assert document["bipartitions"] == ["{13,24}"]
    assert document["spine"] == [
        {"coords": ["15", "13", "4", "0"], "leaves": [2, 4], "offset": "8"},
        {"coords": ["10", "13", "-1", "0"], "leaves": [1, 3], "offset": "13"},
    ]
    assert document["edges"] == [{"length": "5", "p_side": [2, 4], "q_side": [1, 3]}]
    assert document["marks"] == {"p": {"ray": 2, "offset": "8"}, "q": {"ray": 1, "offset": "9"}}
    assert document["lengths"] == ["8", "5", "9"]
    assert document["total"] == "22"
    assert document["newick"] == "(2,4,(1,3):5)[&columns=1:2,p_offset=8,q_offset=9];"

    text = dumps(document)
    assert text.startswith('{\n  "n": 4,\n  "columns": [\n')
    assert text == dumps(tree_document(build_tree(example_matrix("example45"))))


def test_tree_document_stages():
    tree, stages = trace_line(example_matrix("example54"))
    document = tree_document(tree, stages)
    assert list(document) == KEYS + ["stages"]
    assert [s["case"] for s in document["stages"]] == ["tripod", "q_ray", "q_ray", "edge", "p_ray"]
    fifth = document["stages"][2]
    assert fifth["vertex"] == ["20", "21", "7", "7", "0"]
    assert fifth["lengths"] == ["12", "1", "3", "18"]
    assert fifth["bipartitions"] == ["{145,23}", "{15,234}"]
    assert fifth["fracture"] == {
        "stage": 5,
        "row": 4,
        "victim": [1, 4],
        "victim_length": "21",
        "parts": [[1, 5], [4, 5]],
        "part_lengths": ["18", "3"],
        "tie": False,
        "zero_part": False,
    }


@pytest.mark.parametrize("name", ["example45", "example54"])
def test_tree_round_trip(tmp_path, name):
    tree = build_tree(example_matrix(name))
    path = tmp_path / "tree.json"
    path.write_text(dumps(tree_document(tree)))
    assert tree_from_document(read_document(path)) == tree


def test_tree_from_document_errors(tmp_path):
    document = tree_document(build_tree(example_matrix("example45")))
    del document["marks"]
    with pytest.raises(DocumentError):
        tree_from_document(document)
    document = tree_document(build_tree(example_matrix("example45")))
    document["edges"] = []
    with pytest.raises(DocumentError):
        tree_from_document(document)
    path = tmp_path / "broken.json"
    path.write_text("{")
    with pytest.raises(DocumentError):
        read_document(path)


def test_segment_document():
    document = segment_document(tconv([0, -10, -11, -15], [-12, 0, -14, -13]))
    assert document == {
        "p": ["15", "5", "4", "0"],
        "q": ["1", "13", "-1", "0"],
        "breakpoints": [
            ["15", "5", "4", "0"],
            ["15", "13", "4", "0"],
            ["10", "13", "-1", "0"],
            ["1", "13", "-1", "0"],
        ],
        "pieces": [
            {"slope": [2], "length": "8"},
            {"slope": [2, 4], "length": "5"},
            {"slope": [2, 3, 4], "length": "9"},
        ],
        "total": "22",
    }


def test_violations_document():
    document = violations_document(check_ni([[0, -5, -1], [-1, 0, -9], [-9, -9, 0]]))
    assert document == {
        "ni": False,
        "violations": [
            {
                "kind": "triangle",
                "indices": [2, 3, 1],
                "message": "triangle (2,3,1): a[2,1] + a[1,3] = -2 > a[2,3] = -9",
            }
        ],
    }
    assert violations_document(check_ni(example_matrix("example45"))) == {
        "ni": True,
        "violations": [],
    }


def test_report_document():
    report = VerificationReport(
        (CheckResult("balancing", True), CheckResult("caterpillar", False, "leaf 3"))
    )
    assert report_document(report) == {
        "overall": False,
        "checks": [
            {"name": "balancing", "passed": True, "witness": ""},
            {"name": "caterpillar", "passed": False, "witness": "leaf 3"},
        ],
    }
