"""
This module contains tests for the brute-force checks of troplin.core.oracle.

Contains tests: test_verify_examples, test_verify_degenerate, test_verify_other_columns,
test_mutated_offset, test_mutated_split, test_misplaced_vertex, test_wrong_columns,
test_verify_balancing, test_report, test_cross_check_n4, test_run_sweep,
test_acceptance_sweep, test_tie_heavy_sweep, test_sweep_summary
"""

from dataclasses import replace

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from troplin.core.builder import build_tree
from troplin.core.differences import build_F
from troplin.core.maxplus import DegenerateInputError, DimensionError, canonicalize
from troplin.core.nimatrix import random_ni
from troplin.core.oracle import (
    CheckResult,
    SweepSummary,
    VerificationReport,
    cross_check_n4,
    run_sweep,
    verify_balancing,
    verify_tree,
)
from troplin.core.tree import SpineEdge
from troplin.utils.get_data import example_matrix

CHECKS = [
    "rank2_membership",
    "tconv_containment",
    "distance_additivity",
    "balancing",
    "caterpillar",
    "column_separation",
    "edge_samples",
]

F34_ZERO = [[0, -12, -10, -10], [-10, 0, -10, -10], [-11, -14, 0, -15], [-15, -18, -15, 0]]

ZERO_PART = [
    [0, -19, -14, -14, -14],
    [-15, 0, -14, -14, -14],
    [-17, -14, 0, -14, -14],
    [-16, -14, -14, 0, -14],
    [-17, -14, -14, -14, 0],
]


@pytest.fixture(scope="module")
def tree45():
    return build_tree(example_matrix("example45"))


@pytest.mark.parametrize("name", ["example45", "example54"])
def test_verify_examples(name):
    A = example_matrix(name)
    report = verify_tree(A, 1, 2, build_tree(A))
    assert [c.name for c in report] == CHECKS
    assert report.overall, str(report)
    assert report.failed == ()


@pytest.mark.parametrize("A", [F34_ZERO, ZERO_PART])
def test_verify_degenerate(A):
    assert verify_tree(A, 1, 2, build_tree(A)).overall


@given(st.integers(3, 7), st.integers(0, 10**6), st.data())
@settings(max_examples=40, deadline=None)
def test_verify_other_columns(n, seed, data):
    A = random_ni(n, seed=seed)
    i = data.draw(st.integers(1, n - 1))
    j = data.draw(st.integers(i + 1, n))
    assume(build_F(A, i, j).f(i, j) != 0)
    tree = build_tree(A, i, j)
    report = verify_tree(A, i, j, tree)
    assert report.overall, str(report)


def test_mutated_offset(tree45):
    moved = replace(tree45, p_offset=tree45.p_offset + 1)
    report = verify_tree(example_matrix("example45"), 1, 2, moved)
    assert not report.overall
    assert not report["distance_additivity"].passed
    assert "23" in report["distance_additivity"].witness
    assert report["rank2_membership"].passed


def test_mutated_split(tree45):
    (edge,) = tree45.edges
    swapped = replace(tree45, edges=(SpineEdge(edge.length, edge.split[::-1]),))
    report = verify_tree(example_matrix("example45"), 1, 2, swapped)
    assert not report["caterpillar"].passed
    assert not report["column_separation"].passed
    assert report["distance_additivity"].passed


def test_misplaced_vertex(tree45):
    off_line = replace(tree45.vertices[0], coords=canonicalize([15, 13, 5, 0]))
    moved = replace(tree45, vertices=(off_line, tree45.vertices[1]))
    report = verify_tree(example_matrix("example45"), 1, 2, moved)
    assert not report.overall
    assert not report["tconv_containment"].passed
    assert "vertex 0" in report["tconv_containment"].witness


def test_wrong_columns(tree45):
    assert not verify_tree(example_matrix("example45"), 1, 3, tree45).overall


def test_verify_balancing(tree45):
    assert verify_balancing(tree45)
    assert verify_balancing(build_tree(example_matrix("example54")))
    lopsided = replace(
        tree45,
        vertices=(
            replace(tree45.vertices[0], leaves=frozenset({2, 3})),
            replace(tree45.vertices[1], leaves=frozenset({1, 4})),
        ),
    )
    assert not verify_balancing(lopsided)


def test_report():
    report = VerificationReport((CheckResult("a", True), CheckResult("b", False, "vertex 2")))
    assert not report.overall
    assert report.failed == (CheckResult("b", False, "vertex 2"),)
    assert report["a"].passed
    assert str(report) == "a: ok\nb: FAILED: vertex 2"
    with pytest.raises(KeyError):
        report["c"]
    assert VerificationReport().overall


@pytest.mark.parametrize(
    "A",
    [example_matrix("example45"), example_matrix("example54")[:4, :4], F34_ZERO],
)
def test_cross_check_n4(A):
    report = cross_check_n4(A)
    assert [c.name for c in report] == [
        "pluecker_relation",
        "type_agreement",
        "vertex_agreement",
        "spine_distances",
    ]
    assert report.overall, str(report)


def test_cross_check_n4_dimension():
    with pytest.raises(DimensionError):
        cross_check_n4(example_matrix("example54"))


@pytest.mark.parametrize("n", range(3, 9))
def test_run_sweep(n):
    summary = run_sweep(n, 25, seed=n)
    assert summary.ok, summary.failures
    assert summary.passed + summary.skipped == 25
    assert (summary.n, summary.count, summary.seed) == (n, 25, n)


@pytest.mark.parametrize("n", range(3, 9))
def test_acceptance_sweep(n):
    # n = 4 instances are also cross-checked against the closed forms
    summary = run_sweep(n, 1000, seed=0)
    assert summary.ok, summary.failures
    assert summary.passed + summary.skipped == 1000


@pytest.mark.parametrize("low, high", [(-3, -1), (-2, 0)])
@pytest.mark.parametrize("n", range(3, 9))
def test_tie_heavy_sweep(n, low, high):
    # narrow ranges make the closure act and produce many ties and equal columns
    for seed in range(40):
        A = random_ni(n, low, high, seed=seed)
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                if build_F(A, i, j).f(i, j) == 0:
                    with pytest.raises(DegenerateInputError):
                        build_tree(A, i, j)
                    continue
                report = verify_tree(A, i, j, build_tree(A, i, j))
                assert report.overall, f"seed={seed} cols={i},{j}\n{report}"
        if n == 4 and build_F(A, 1, 2).f(1, 2) != 0:
            assert cross_check_n4(A).overall, f"seed={seed}"


def test_sweep_summary():
    summary = SweepSummary(5, 3, 10, 2, failures={11: ("balancing", "caterpillar")})
    assert not summary.ok
    assert summary.as_dict() == {
        "n": 5,
        "count": 3,
        "seed": 10,
        "passed": 2,
        "skipped": 0,
        "failures": {"11": ["balancing", "caterpillar"]},
    }
    with pytest.raises(DimensionError):
        run_sweep(2, 10)
