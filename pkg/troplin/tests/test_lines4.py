"""
This module contains tests for the closed-form lines in Q^3 of troplin.core.lines4.

Contains tests: test_pluecker, test_pluecker_relation, test_classify_type4, test_vertices4,
test_line4, test_lines4_errors
"""

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from troplin.core.differences import build_F
from troplin.core.lines4 import (
    LineType4,
    classify_type4,
    line4,
    pluecker,
    vertices4,
)
from troplin.core.maxplus import (
    DegenerateInputError,
    DimensionError,
    canonicalize,
)
from troplin.utils.get_data import example_matrix

P45 = (0, -10, -11, -15)
Q45 = (-12, 0, -14, -13)

F34_ZERO = [[0, -12, -10, -10], [-10, 0, -10, -10], [-11, -14, 0, -15], [-15, -18, -15, 0]]


def test_pluecker():
    data = pluecker(P45, Q45)
    assert data.minors == {
        (1, 2): 0,
        (1, 3): -14,
        (1, 4): -13,
        (2, 3): -11,
        (2, 4): -15,
        (3, 4): -24,
    }
    assert data.m(4, 3) == -24
    assert data.value == -24
    assert data.sums == {LineType4.T12_34: -24, LineType4.T13_24: -29, LineType4.T14_23: -24}
    assert set(data.attained) == {LineType4.T12_34, LineType4.T14_23}
    assert data.line_type is LineType4.T13_24
    assert str(data.line_type) == "{13,24}"

    single = pluecker([0, -10, -11, -15], [-12, 0, -14, -18])
    assert len(single.attained) == 3
    assert single.line_type is LineType4.T1234


@given(
    st.lists(st.integers(-30, 30), min_size=4, max_size=4),
    st.lists(st.integers(-30, 30), min_size=4, max_size=4),
)
@settings(max_examples=300, deadline=None)
def test_pluecker_relation(p, q):
    assume(canonicalize(p) != canonicalize(q))
    data = pluecker(p, q)
    assert len(data.attained) >= 2
    assert all(data.sums[t] <= data.value for t in data.sums)


def test_classify_type4():
    assert classify_type4(build_F(example_matrix("example45"))) is LineType4.T13_24
    assert classify_type4(build_F(example_matrix("example54")[:4, :4])) is LineType4.T14_23
    assert classify_type4(build_F(F34_ZERO)) is LineType4.T1234


@pytest.mark.parametrize(
    "p, q, line_type, pq, qp, lengths",
    [
        (P45, Q45, LineType4.T13_24, (15, 13, 4, 0), (10, 13, -1, 0), (8, 5, 9)),
        (
            (0, -15, -17, -16),
            (-19, 0, -14, -14),
            LineType4.T14_23,
            (16, 13, -1, 0),
            (16, 14, 0, 0),
            (12, 1, 21),
        ),
        (
            (0, 1, -5, -7),
            (-10, -9, 0, 2),
            LineType4.T12_34,
            (3, 4, -2, 0),
            (-12, -11, -2, 0),
            (4, 15, 0),
        ),
        (
            (0, -10, -11, -15),
            (-12, 0, -14, -18),
            LineType4.T1234,
            (15, 18, 4, 0),
            (15, 18, 4, 0),
            (13, 9),
        ),
    ],
)
def test_vertices4(p, q, line_type, pq, qp, lengths):
    closed = vertices4(p, q, line_type)
    assert closed.line_type is line_type
    assert closed.pq.coords == pq
    assert closed.qp.coords == qp
    assert closed.lengths == lengths
    # representatives do not matter once the type is fixed
    shifted = vertices4([x + 3 for x in p], q, line_type)
    assert (shifted.pq, shifted.qp) == (closed.pq, closed.qp)


def test_line4():
    closed = line4(example_matrix("example45"))
    assert closed.line_type is LineType4.T13_24
    assert (closed.p_offset, closed.edge, closed.q_offset) == (8, 5, 9)

    flat = line4(F34_ZERO)
    assert flat.pq == flat.qp
    assert flat.edge == 0
    assert flat.lengths == (13, 9)


def test_lines4_errors():
    with pytest.raises(ValueError):
        vertices4(P45, Q45, LineType4.T14_23)
    with pytest.raises(DimensionError):
        pluecker([0, 0, 0], [1, 0, 0])
    with pytest.raises(DegenerateInputError):
        pluecker([0, 1, 2, 3], [1, 2, 3, 4])
    with pytest.raises(ValueError):
        classify_type4(build_F(example_matrix("example54")))
    with pytest.raises(ValueError):
        classify_type4(build_F(example_matrix("example45"), 1, 3))
    with pytest.raises(DimensionError):
        line4(example_matrix("example54"))
