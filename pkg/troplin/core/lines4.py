"""
The lines4 module contains the closed-form description of tropical lines in Q^3 (n = 4).

The type of L(p, q) is read off the six tropical 2x2 minors m_kl of [p q] through the tropical
Pluecker relation: of the three sums m12 + m34, m13 + m24 and m14 + m23 the maximum is attained
at least twice, and the type is the pairing whose sum stays strictly below it (all three
attained gives the type {1234} with a single vertex).

Contains public functions: pluecker, classify_type4, vertices4, line4
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, NamedTuple, Tuple

from .differences import DifferenceMatrix, build_F
from .maxplus import (
    ConsistencyError,
    DegenerateInputError,
    DimensionError,
    ProjectivePoint,
    Scalar,
    as_scalar,
    canonicalize,
    trop_distance,
    tropical_minor,
)
from .nimatrix import validate_ni


class LineType4(Enum):
    T12_34 = "{12,34}"
    T13_24 = "{13,24}"
    T14_23 = "{14,23}"
    T1234 = "{1234}"

    def __str__(self):
        return self.value


# the two pairs of each two-vertex type
_PAIRINGS = {
    LineType4.T12_34: ((1, 2), (3, 4)),
    LineType4.T13_24: ((1, 3), (2, 4)),
    LineType4.T14_23: ((1, 4), (2, 3)),
}


@dataclass(frozen=True)
class PlueckerData:
    """
    Tropical minors of the 4 x 2 matrix [p q].

    Attributes
    ----------
    minors : dict
        m_kl for 1 <= k < l <= 4, keyed by (k, l).
    value : Scalar
        m, the maximum of the three pairing sums.
    sums : dict
        Pairing sum per two-vertex type.
    attained : tuple of LineType4
        The pairings whose sum equals m, at least two of them.
    """

    minors: Dict[Tuple[int, int], Scalar]
    value: Scalar
    sums: Dict[LineType4, Scalar]
    attained: Tuple[LineType4, ...]

    @property
    def line_type(self) -> LineType4:
        if len(self.attained) == 3:
            return LineType4.T1234
        (below,) = [t for t in _PAIRINGS if t not in self.attained]
        return below

    def m(self, k: int, l: int) -> Scalar:
        return self.minors[(min(k, l), max(k, l))]


def _points4(p, q):
    p = p.coords if isinstance(p, ProjectivePoint) else tuple(as_scalar(x) for x in p)
    q = q.coords if isinstance(q, ProjectivePoint) else tuple(as_scalar(x) for x in q)
    if len(p) != 4 or len(q) != 4:
        raise DimensionError(f"closed forms need n = 4, got {len(p)} and {len(q)}")
    if canonicalize(p) == canonicalize(q):
        raise DegenerateInputError("p and q coincide; they do not span a line")
    return p, q


def pluecker(p, q) -> PlueckerData:
    """
    Tropical Pluecker data of two points of Q^3.

    Minors are evaluated on the representatives passed in, so raw matrix columns reproduce
    the minors of the matrix itself.

    Parameters
    ----------
    p, q : ProjectivePoint or sequence of 4 numbers

    Returns
    ----------
    PlueckerData

    Raises
    ----------
    DegenerateInputError
        If p = q in Q^3.
    ConsistencyError
        If the tropical Pluecker relation fails, which exact arithmetic rules out.

    Examples
    --------
    >>> str(pluecker([0, -10, -11, -15], [-12, 0, -14, -13]).line_type)
    '{13,24}'
    """
    p, q = _points4(p, q)
    minors = {
        (k, l): tropical_minor(p, q, k, l) for k, l in itertools.combinations(range(1, 5), 2)
    }
    sums = {t: as_scalar(minors[a] + minors[b]) for t, (a, b) in _PAIRINGS.items()}
    value = max(sums.values())
    attained = tuple(t for t, total in sums.items() if total == value)
    if len(attained) < 2:
        raise ConsistencyError(
            f"tropical Pluecker relation fails: only {attained[0]} attains {value}"
        )
    return PlueckerData(minors, value, sums, attained)


def classify_type4(F: DifferenceMatrix) -> LineType4:
    """
    Type of L(p, q) from the sign of f_34: {13,24} if positive, {14,23} if negative, {1234} if 0.

    Raises
    ----------
    ValueError
        If F is not the 4 x 4 difference matrix of columns 1 and 2.
    """
    if F.n != 4 or (F.i, F.j) != (1, 2):
        raise ValueError("classification needs the difference matrix of columns 1, 2 with n = 4")
    f34 = F.f(3, 4)
    if f34 > 0:
        return LineType4.T13_24
    if f34 < 0:
        return LineType4.T14_23
    return LineType4.T1234


class Vertices4(NamedTuple):
    line_type: LineType4
    pq: ProjectivePoint
    qp: ProjectivePoint
    p_offset: Scalar
    edge: Scalar
    q_offset: Scalar

    @property
    def lengths(self) -> Tuple[Scalar, ...]:
        if self.line_type is LineType4.T1234:
            return self.p_offset, self.q_offset
        return self.p_offset, self.edge, self.q_offset


def _formulas(data: PlueckerData, line_type: LineType4):
    m = data.m
    if line_type is LineType4.T13_24:
        return [
            (-m(2, 4), -m(1, 4), -m(2, 4) - m(1, 4) + m(3, 4), -m(1, 2)),
            (-m(2, 3), -m(1, 3), -m(1, 2), -m(1, 3) - m(1, 2) + m(1, 4)),
        ]
    if line_type is LineType4.T14_23:
        return [
            (-m(2, 3), -m(1, 3), -m(1, 2), -m(2, 3) - m(1, 3) + m(3, 4)),
            (-m(2, 4), -m(1, 4), -m(1, 4) - m(1, 2) + m(1, 3), -m(1, 2)),
        ]
    if line_type is LineType4.T12_34:
        return [
            (m(1, 3) - m(2, 3) - m(3, 4), -m(3, 4), -m(2, 4), -m(2, 3)),
            (-m(2, 4), -m(1, 4), m(1, 3) - m(1, 2) - m(1, 4), -m(1, 2)),
        ]
    return [(m(1, 3) + m(1, 4) - m(3, 4), m(1, 2), m(1, 3), m(1, 4))]


def vertices4(p, q, line_type: LineType4) -> Vertices4:
    """
    Vertices of L(p, q) in Q^3 from the closed-form expressions in the minors.

    The vertex nearer to p is returned as pq. For a type {ik, jl} with (i, j) = (1, 2) the
    distances are d(p, pq) = |f_jl|, d(pq, qp) = |f_kl| and d(qp, q) = |f_ik|.

    Parameters
    ----------
    p, q : ProjectivePoint or sequence of 4 numbers
    line_type : LineType4
        Must be the type the Pluecker data of (p, q) gives.

    Returns
    ----------
    Vertices4
        pq equals qp and ``edge`` is 0 for the type {1234}.

    Raises
    ----------
    ValueError
        If ``line_type`` does not match the data.
    """
    p, q = _points4(p, q)
    data = pluecker(p, q)
    if data.line_type is not line_type:
        raise ValueError(f"points give a line of type {data.line_type}, not {line_type}")
    p, q = canonicalize(p), canonicalize(q)
    candidates = [canonicalize(v) for v in _formulas(data, line_type)]
    if len(candidates) == 1:
        pq = qp = candidates[0]
    else:
        pq, qp = sorted(candidates, key=lambda v: trop_distance(p, v))
    return Vertices4(
        line_type,
        pq,
        qp,
        trop_distance(p, pq),
        trop_distance(pq, qp),
        trop_distance(qp, q),
    )


def line4(A) -> Vertices4:
    """Closed-form line through the first two columns of a 4 x 4 NI matrix."""
    A = validate_ni(A)
    if A.n != 4:
        raise DimensionError(f"closed forms need n = 4, got {A.n}")
    line_type = classify_type4(build_F(A, 1, 2))
    return vertices4(A.column(1), A.column(2), line_type)
