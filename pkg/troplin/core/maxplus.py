"""
The maxplus module contains the exact max-plus arithmetic the rest of troplin is built on.

Scalars are exact rationals: Python ints when integral, fractions.Fraction otherwise. Points of
the quotient space Q^{n-1} = R^n / R(1, ..., 1) are stored by their representative whose last
coordinate is 0.

Contains public functions: as_scalar, as_matrix, canonicalize, trop_add, trop_scale,
trop_distance, trop_matmul, trop_det, tropical_minor, rank2_membership, tconv, integer_length,
primitive_direction
"""

import itertools
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import FrozenSet, Iterable, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    """Indicate a vector or matrix whose size does not fit the operation."""

    pass


class DegenerateInputError(ValueError):
    """Indicate two points that are equal in Q^{n-1}."""

    pass


class ConsistencyError(RuntimeError):
    """Indicate a broken internal invariant, either a bug or input that is not normal idempotent."""

    pass


def _exact(value) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    return value


def as_scalar(value) -> Scalar:
    """
    Convert a number to an exact scalar.

    Parameters
    ----------
    value : int, Fraction, Decimal, float, str or numpy number
        Strings are read exactly ("3", "-2.5", "7/2", "1e3"). Floats are converted to the
        rational they represent, without rounding.

    Returns
    ----------
    int or Fraction
        An int when the value is integral.

    Raises
    ----------
    ValueError
        If the value is infinite, not a number, or a string that is not an exact number.
    TypeError
        If the value is not a number at all.
    """
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans are not max-plus scalars")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return _exact(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError(f"{value!r} is not a finite scalar; -inf is never used")
        return _exact(Fraction(float(value)))
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"{value!r} is not a finite scalar; -inf is never used")
        return _exact(Fraction(value))
    if isinstance(value, str):
        try:
            return _exact(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot read {value!r} as an exact number")
    if isinstance(value, Rational):
        return _exact(Fraction(value.numerator, value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as a max-plus scalar")


def as_matrix(entries) -> np.ndarray:
    """
    Convert nested sequences (or an array) to a 2-D numpy object array of exact scalars.

    Parameters
    ----------
    entries : array_like
        Rectangular nested sequence of numbers.

    Returns
    ----------
    np.ndarray
        Object array holding ints and Fractions.

    Raises
    ----------
    DimensionError
        If the entries are not a non-empty rectangular 2-D table.
    """
    try:
        array = np.array(entries, dtype=object)
    except ValueError:
        raise DimensionError("matrix rows have different lengths")
    if array.ndim != 2 or 0 in array.shape:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {array.shape}")
    exact = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        exact[index] = as_scalar(value)
    return exact


@dataclass(frozen=True)
class ProjectivePoint:
    """
    A point of Q^{n-1}, stored by its representative with last coordinate 0.

    Build instances with :func:`canonicalize`; the constructor only accepts canonical tuples.
    Coordinates are addressed with 1-based labels in :meth:`coord`, matching leaf labels.
    """

    coords: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.coords) < 2:
            raise DimensionError(f"points of Q^(n-1) need n >= 2, got {len(self.coords)}")
        if self.coords[-1] != 0:
            raise ValueError("last coordinate must be 0; use canonicalize()")

    @property
    def n(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def coord(self, label: int) -> Scalar:
        return self.coords[label - 1]

    def translate(self, length, slope: Iterable[int]) -> "ProjectivePoint":
        """Return self + length * e_S, where S is a set of 1-based coordinate labels."""
        slope = set(slope)
        length = as_scalar(length)
        return canonicalize(
            [x + length if label in slope else x for label, x in enumerate(self.coords, 1)]
        )

    def restrict(self, labels: Sequence[int]) -> "ProjectivePoint":
        """Project onto the coordinates ``labels`` (in that order), canonicalized."""
        return canonicalize([self.coords[label - 1] for label in labels])

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.coords) + "]"


def canonicalize(raw) -> ProjectivePoint:
    """
    Return the canonical representative of a vector in Q^{n-1}.

    Parameters
    ----------
    raw : sequence of numbers or ProjectivePoint
        Any representative; numbers are converted with :func:`as_scalar`.

    Returns
    ----------
    ProjectivePoint
        raw - (raw_n, ..., raw_n).

    Raises
    ----------
    DimensionError
        If the vector has fewer than 2 coordinates.

    Examples
    --------
    >>> canonicalize([3, 0, -14]) == canonicalize([0, -3, -17])
    True
    >>> canonicalize([5, 5, 5]).coords
    (0, 0, 0)
    """
    if isinstance(raw, ProjectivePoint):
        return raw
    values = [as_scalar(x) for x in raw]
    if len(values) < 2:
        raise DimensionError(f"points of Q^(n-1) need n >= 2, got {len(values)}")
    last = values[-1]
    return ProjectivePoint(tuple(_exact(x - last) for x in values))


def _same_dimension(*points: ProjectivePoint) -> int:
    sizes = {p.n for p in points}
    if len(sizes) != 1:
        raise DimensionError(f"points live in different dimensions: {sorted(sizes)}")
    return sizes.pop()


def trop_add(u: Sequence, v: Sequence) -> Tuple[Scalar, ...]:
    """Tropical sum u ⊕ v, the entrywise maximum."""
    if len(u) != len(v):
        raise DimensionError(f"cannot add vectors of length {len(u)} and {len(v)}")
    return tuple(max(as_scalar(a), as_scalar(b)) for a, b in zip(u, v))


def trop_scale(lam, u: Sequence) -> Tuple[Scalar, ...]:
    """Tropical scalar multiple λ ⊙ u, i.e. u + λ."""
    lam = as_scalar(lam)
    return tuple(_exact(as_scalar(a) + lam) for a in u)


def trop_distance(p, q) -> Scalar:
    """
    Tropical distance between two points of Q^{n-1}.

    Evaluates max over i, j of {|p_i - q_i|, |p_i - q_i - p_j + q_j|} on canonical
    representatives. On canonical representatives the first family of terms is already
    covered by the second (take j = n); both are kept as written.

    Parameters
    ----------
    p, q : ProjectivePoint or sequence of numbers

    Returns
    ----------
    int or Fraction

    Raises
    ----------
    DimensionError
        If p and q have different dimensions.

    Examples
    --------
    >>> trop_distance([-2, -2, 0], [0, 0, 0])
    2
    >>> trop_distance([-5, -2, 0], [-2, -5, 0])
    6
    """
    p, q = canonicalize(p), canonicalize(q)
    _same_dimension(p, q)
    diffs = [a - b for a, b in zip(p.coords, q.coords)]
    pointwise = max(abs(d) for d in diffs)
    pairwise = max(diffs) - min(diffs)
    return _exact(max(pointwise, pairwise))


def trop_matmul(A, B) -> np.ndarray:
    """
    Max-plus matrix product, (A ⊙ B)_ij = max_k (a_ik + b_kj).

    Parameters
    ----------
    A, B : array_like
        Matrices with matching inner dimension.

    Returns
    ----------
    np.ndarray
        Object array of exact scalars.

    Raises
    ----------
    DimensionError
        If the inner dimensions differ.
    """
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    return (A[:, :, None] + B[None, :, :]).max(axis=1)


class TropicalDeterminant(NamedTuple):
    value: Scalar
    attain_count: int

    @property
    def singular(self) -> bool:
        """Tropically singular: the maximum is attained by at least two permutations."""
        return self.attain_count >= 2


def trop_det(A) -> TropicalDeterminant:
    """
    Tropical determinant by enumeration of all permutations.

    Parameters
    ----------
    A : array_like
        Square matrix.

    Returns
    ----------
    TropicalDeterminant
        The maximum of sum_i a_{i,sigma(i)} and how many permutations sigma reach it.

    Raises
    ----------
    DimensionError
        If A is not square.
    """
    A = as_matrix(A)
    rows, cols = A.shape
    if rows != cols:
        raise DimensionError(f"tropical determinant needs a square matrix, got {A.shape}")
    table = A.tolist()
    best, count = None, 0
    for perm in itertools.permutations(range(rows)):
        total = sum(table[r][c] for r, c in enumerate(perm))
        if best is None or total > best:
            best, count = total, 1
        elif total == best:
            count += 1
    return TropicalDeterminant(_exact(best), count)


def tropical_minor(p, q, k: int, l: int) -> Scalar:
    """
    Tropical 2x2 minor m_kl = max(p_k + q_l, p_l + q_k) of the n x 2 matrix [p q].

    k and l are 1-based labels; the value depends on the representatives passed in.
    """
    p = [as_scalar(x) for x in p]
    q = [as_scalar(x) for x in q]
    return _exact(max(p[k - 1] + q[l - 1], p[l - 1] + q[k - 1]))


def _singular3(rows) -> bool:
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    terms = (
        a1 + b2 + c3,
        a1 + b3 + c2,
        a2 + b1 + c3,
        a2 + b3 + c1,
        a3 + b1 + c2,
        a3 + b2 + c1,
    )
    return terms.count(max(terms)) >= 2


def _integral_columns(points: Sequence[ProjectivePoint]):
    # tropical singularity is unchanged by scaling all entries with a positive integer
    scale = 1
    for point in points:
        for x in point.coords:
            if isinstance(x, Fraction):
                scale = math.lcm(scale, x.denominator)
    return [[int(x * scale) for x in point.coords] for point in points]


def _nonsingular_minor(p, q, x) -> Optional[Tuple[int, int, int]]:
    cols = _integral_columns([p, q, x])
    for triple in itertools.combinations(range(p.n), 3):
        rows = [(cols[0][r], cols[1][r], cols[2][r]) for r in triple]
        if not _singular3(rows):
            return triple
    return None


def rank2_membership(p, q, x) -> bool:
    """
    Decide whether x lies on the tropical line L(p, q).

    x is on the line if and only if every 3x3 tropical minor of the n x 3 matrix [p q x] is
    tropically singular.

    Parameters
    ----------
    p, q, x : ProjectivePoint or sequence of numbers
        Points of Q^{n-1}, n >= 3.

    Returns
    ----------
    bool

    Raises
    ----------
    DimensionError
        If the dimensions differ or n < 3.
    DegenerateInputError
        If p = q.
    """
    p, q, x = canonicalize(p), canonicalize(q), canonicalize(x)
    n = _same_dimension(p, q, x)
    if n < 3:
        raise DimensionError("rank-2 membership needs n >= 3")
    if p == q:
        raise DegenerateInputError("p and q coincide; they do not span a line")
    return _nonsingular_minor(p, q, x) is None


@dataclass(frozen=True)
class TropicalSegment:
    """
    The tropical segment tconv(p, q) as a chain of classical segments.

    ``breakpoints`` runs from p to q. Sub-segment ``a`` goes from ``breakpoints[a]`` to
    ``breakpoints[a + 1]`` in direction e_S with ``S = slopes[a]`` (1-based coordinate labels)
    and has integer length ``lengths[a]``. The slope sets grow strictly from p to q.
    """

    start: ProjectivePoint
    end: ProjectivePoint
    breakpoints: Tuple[ProjectivePoint, ...]
    slopes: Tuple[FrozenSet[int], ...]
    lengths: Tuple[Scalar, ...]

    def __post_init__(self):
        if not (len(self.breakpoints) == len(self.slopes) + 1 == len(self.lengths) + 1):
            raise ValueError("a segment needs one more breakpoint than sub-segments")

    @property
    def endpoints(self) -> Tuple[ProjectivePoint, ProjectivePoint]:
        return self.start, self.end

    @property
    def total(self) -> Scalar:
        return _exact(sum(self.lengths))

    def offsets(self) -> Tuple[Scalar, ...]:
        """Cumulative offsets of the breakpoints from p."""
        return tuple(_exact(x) for x in itertools.accumulate((0,) + self.lengths))

    def point_at(self, offset) -> ProjectivePoint:
        """
        Return the point of the segment at integer-length distance ``offset`` from p.

        Raises
        ----------
        ValueError
            If offset is outside [0, d(p, q)].
        """
        offset = as_scalar(offset)
        if offset < 0 or offset > self.total:
            raise ValueError(f"offset {offset} outside [0, {self.total}]")
        start = 0
        for index, (slope, length) in enumerate(zip(self.slopes, self.lengths)):
            if offset <= start + length:
                return self.breakpoints[index].translate(offset - start, slope)
            start += length
        return self.end

    def switch_offset(self, label: int) -> Scalar:
        """Offset from p at which coordinate ``label`` joins the slope set (d(p, q) if never)."""
        start = 0
        for slope, length in zip(self.slopes, self.lengths):
            if label in slope:
                return _exact(start)
            start += length
        return _exact(start)

    def reversed(self) -> "TropicalSegment":
        """tconv(q, p), the same segment walked from q."""
        return tconv(self.end, self.start)


def tconv(p, q) -> TropicalSegment:
    """
    Tropical segment between two points.

    The segment is the set of points max(λ + p, q); its breakpoints are obtained as λ sweeps
    the distinct values of q_i - p_i in decreasing order.

    Parameters
    ----------
    p, q : ProjectivePoint or sequence of numbers

    Returns
    ----------
    TropicalSegment

    Raises
    ----------
    DimensionError
        If p and q have different dimensions.
    DegenerateInputError
        If p = q.
    """
    p, q = canonicalize(p), canonicalize(q)
    n = _same_dimension(p, q)
    if p == q:
        raise DegenerateInputError("p and q coincide; tconv(p, q) is a point")
    thresholds = [b - a for a, b in zip(p.coords, q.coords)]
    levels = sorted(set(thresholds), reverse=True)

    breakpoints = [canonicalize(trop_add(trop_scale(lam, p.coords), q.coords)) for lam in levels]
    slopes = []
    lengths = []
    for upper, lower in zip(levels, levels[1:]):
        slopes.append(frozenset(k for k in range(1, n + 1) if thresholds[k - 1] >= upper))
        lengths.append(_exact(upper - lower))
    return TropicalSegment(p, q, tuple(breakpoints), tuple(slopes), tuple(lengths))


def integer_length(segment: TropicalSegment) -> Scalar:
    """Sum of the integer lengths of the classical pieces of a tropical segment."""
    return segment.total


def primitive_direction(u, v) -> Tuple[int, ...]:
    """
    Primitive integer direction of the classical segment from u to v in Q^{n-1}.

    The representative returned has minimum coordinate 0.

    Raises
    ----------
    DegenerateInputError
        If u = v.
    """
    u, v = canonicalize(u), canonicalize(v)
    _same_dimension(u, v)
    diffs = [b - a for a, b in zip(u.coords, v.coords)]
    low = min(diffs)
    shifted = [d - low for d in diffs]
    if not any(shifted):
        raise DegenerateInputError("a segment of length 0 has no direction")
    scale = 1
    for d in shifted:
        if isinstance(d, Fraction):
            scale = math.lcm(scale, d.denominator)
    integral = [int(d * scale) for d in shifted]
    divisor = math.gcd(*integral)
    return tuple(d // divisor for d in integral)
