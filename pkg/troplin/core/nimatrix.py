"""
The nimatrix module validates, completes and generates normal idempotent (NI) max-plus matrices.

A square matrix A is normal when a_ii = 0 and a_ij <= 0. It is normal idempotent when moreover
A ⊙ A = A, which for normal matrices is equivalent to a_ik + a_kj <= a_ij for all i, j, k.

Contains public functions: check_ni, validate_ni, is_ni, is_idempotent, closure, random_ni,
complete_two_columns, northwest
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from .maxplus import (
    ConsistencyError,
    DimensionError,
    Scalar,
    as_matrix,
    as_scalar,
    trop_matmul,
)

logger = logging.getLogger(__name__)


class NotNormalError(ValueError):
    """Indicate a matrix with a nonzero diagonal entry or a positive entry."""

    pass


class InconsistentColumnsError(ValueError):
    """Indicate two columns that cannot be columns of the same NI matrix."""

    pass


class CompletionError(RuntimeError):
    """Indicate that no NI completion preserving the given columns was found."""

    pass


@dataclass(frozen=True)
class Violation:
    """One failed NI condition. Indices are 1-based; ``k`` is only set for triangle violations."""

    kind: str
    i: int
    j: int
    k: Optional[int] = None
    lhs: Scalar = 0
    rhs: Scalar = 0

    def __str__(self):
        if self.kind == "diagonal":
            return f"diagonal ({self.i},{self.j}): a[{self.i},{self.j}] = {self.lhs}, expected 0"
        if self.kind == "positivity":
            return f"positivity ({self.i},{self.j}): a[{self.i},{self.j}] = {self.lhs} > 0"
        return (
            f"triangle ({self.i},{self.j},{self.k}): a[{self.i},{self.k}] + a[{self.k},{self.j}]"
            f" = {self.lhs} > a[{self.i},{self.j}] = {self.rhs}"
        )


@dataclass(frozen=True)
class ViolationReport:
    """All violated NI conditions of a matrix: diagonal, then positivity, then triangle ones."""

    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def __len__(self):
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __str__(self):
        if self.ok:
            return "normal idempotent"
        return "\n".join(str(v) for v in self.violations)


class NotNormalIdempotentError(ValueError):
    """Indicate a matrix failing the NI inequalities."""

    def __init__(
        self,
        report,
        message="Matrix is not normal idempotent ({count} violated condition(s)), first {first}.",
    ):
        self.report = report
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return self.message.format(count=len(self.report), first=self.report.first)


def _square(A) -> np.ndarray:
    if isinstance(A, NormalMatrix):
        return A.entries
    array = as_matrix(A)
    if array.shape[0] != array.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {array.shape}")
    return array


def _normality_violations(array: np.ndarray):
    n = array.shape[0]
    found = []
    for i in range(n):
        if array[i, i] != 0:
            found.append(Violation("diagonal", i + 1, i + 1, lhs=array[i, i]))
    for i in range(n):
        for j in range(n):
            if i != j and array[i, j] > 0:
                found.append(Violation("positivity", i + 1, j + 1, lhs=array[i, j]))
    return found


def _triangle_violations(array: np.ndarray):
    # through[i, k, j] = a_ik + a_kj
    through = array[:, :, None] + array[None, :, :]
    excess = np.asarray(through > array[:, None, :], dtype=bool)
    found = []
    for i, k, j in sorted(np.argwhere(excess).tolist(), key=lambda t: (t[0], t[2], t[1])):
        if k in (i, j):
            continue
        found.append(
            Violation("triangle", i + 1, j + 1, k + 1, lhs=through[i, k, j], rhs=array[i, j])
        )
    return found


class NormalMatrix:
    """
    Square max-plus matrix with zero diagonal and nonpositive entries.

    Entries are exact scalars held in a read-only numpy object array. Indexing with
    ``matrix[r, c]`` is 0-based like numpy; :meth:`column` takes a 1-based label.

    Parameters
    ----------
    entries : array_like
        Square table of numbers.

    Raises
    ----------
    DimensionError
        If the table is not square.
    NotNormalError
        If a diagonal entry is nonzero or an entry is positive.
    """

    def __init__(self, entries):
        array = _square(entries).copy()
        found = _normality_violations(array)
        if found:
            raise NotNormalError(f"matrix is not normal: {found[0]}")
        array.setflags(write=False)
        self._entries = array

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __getitem__(self, index):
        return self._entries[index]

    def column(self, label: int) -> Tuple[Scalar, ...]:
        return tuple(self._entries[:, label - 1])

    def tolist(self):
        return self._entries.tolist()

    def __eq__(self, other):
        if isinstance(other, NormalMatrix):
            other = other.entries
        try:
            other = as_matrix(other)
        except (DimensionError, ValueError, TypeError):
            return NotImplemented
        return other.shape == self._entries.shape and bool(np.all(other == self._entries))

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}({self.tolist()!r})"


class NIMatrix(NormalMatrix):
    """
    Normal idempotent matrix, certified at construction.

    Raises
    ----------
    NotNormalIdempotentError
        If any NI condition fails; the exception carries the full ViolationReport.
    """

    def __init__(self, entries):
        array = _square(entries)
        report = check_ni(array)
        if not report.ok:
            raise NotNormalIdempotentError(report)
        super().__init__(array)


def check_ni(A) -> ViolationReport:
    """
    List every violated NI condition of a square matrix.

    Triangle conditions a_ik + a_kj <= a_ij are reported for k outside {i, j}; the cases
    k = i and k = j reduce to the diagonal condition.

    Parameters
    ----------
    A : array_like or NormalMatrix
        Square matrix.

    Returns
    ----------
    ViolationReport

    Raises
    ----------
    DimensionError
        If A is not square.
    """
    array = _square(A)
    return ViolationReport(tuple(_normality_violations(array) + _triangle_violations(array)))


def validate_ni(A) -> NIMatrix:
    """
    Certify a matrix as normal idempotent.

    Parameters
    ----------
    A : array_like or NormalMatrix

    Returns
    ----------
    NIMatrix

    Raises
    ----------
    NotNormalIdempotentError
        Carrying the report of all violations.
    DimensionError
        If A is not square.
    """
    if isinstance(A, NIMatrix):
        return A
    return NIMatrix(A)


def is_ni(A) -> bool:
    return check_ni(A).ok


def is_idempotent(A) -> bool:
    """A ⊙ A == A, exactly."""
    array = _square(A)
    return bool(np.all(trop_matmul(array, array) == array))


def closure(A) -> NIMatrix:
    """
    Idempotent closure of a normal matrix.

    Computes the tropical power A^(n-1) by repeated squaring. For a normal matrix the powers
    increase entrywise and are stationary from n-1 on, so overshooting is harmless. The
    result is checked to be idempotent before it is certified.

    Parameters
    ----------
    A : array_like or NormalMatrix
        Normal matrix.

    Returns
    ----------
    NIMatrix
        Equal to A when A is already NI.

    Raises
    ----------
    NotNormalError
        If A is not normal.
    """
    normal = A if isinstance(A, NormalMatrix) else NormalMatrix(A)
    result = normal.entries
    power = 1
    while power < normal.n - 1:
        result = trop_matmul(result, result)
        power *= 2
    if not is_idempotent(result):
        raise ConsistencyError("closure of a normal matrix did not stabilise")
    return NIMatrix(result)


def _sample_bounds(low, high, denominator: int) -> Tuple[int, int]:
    low, high = as_scalar(low), as_scalar(high)
    if not low <= high <= 0:
        raise ValueError(f"need low <= high <= 0, got low={low}, high={high}")
    if int(denominator) != denominator or denominator < 1:
        raise ValueError(f"denominator must be a positive integer, got {denominator}")
    lo, hi = math.ceil(low * denominator), math.floor(high * denominator)
    if lo > hi:
        raise ValueError(f"no multiple of 1/{denominator} lies in [{low}, {high}]")
    return lo, hi


def _draw(rng: np.random.Generator, n: int, lo: int, hi: int, denominator: int):
    draw = rng.integers(lo, hi, size=(n, n), endpoint=True)
    return [
        [0 if r == c else Fraction(int(draw[r, c]), denominator) for c in range(n)]
        for r in range(n)
    ]


def random_ni(n: int, low=-20, high=-10, seed=None, denominator: int = 1) -> NIMatrix:
    """
    Seeded random NI matrix.

    Draws a normal matrix with off-diagonal entries k / denominator, k uniform among the
    integers with low <= k / denominator <= high, and returns its closure. The stream is one
    ``integers(..., size=(n, n), endpoint=True)`` call on ``numpy.random.default_rng(seed)``
    (PCG64), diagonal then set to 0.

    Parameters
    ----------
    n : int
        Order, n >= 2.
    low, high : number
        Sampling range, low <= high <= 0.
    seed : int, optional
        Seed; the same seed always gives the same matrix.
    denominator : int, optional
        Entries are multiples of 1/denominator. Defaults to 1.

    Returns
    ----------
    NIMatrix

    Raises
    ----------
    ValueError
        If the range is invalid.
    DimensionError
        If n < 2.
    """
    if n < 2:
        raise DimensionError(f"need n >= 2, got {n}")
    lo, hi = _sample_bounds(low, high, denominator)
    rng = np.random.default_rng(seed)
    return closure(_fractions(_draw(rng, n, lo, hi, denominator)))


def _fractions(rows):
    return as_matrix([[as_scalar(x) for x in row] for row in rows])


def _check_columns(col_i, col_j, i: int, j: int):
    n = len(col_i)
    if col_i[i - 1] != 0:
        raise InconsistentColumnsError(f"a[{i},{i}] = {col_i[i - 1]}, expected 0")
    if col_j[j - 1] != 0:
        raise InconsistentColumnsError(f"a[{j},{j}] = {col_j[j - 1]}, expected 0")
    for label, column in ((i, col_i), (j, col_j)):
        for k, value in enumerate(column, 1):
            if value > 0:
                raise InconsistentColumnsError(f"a[{k},{label}] = {value} > 0")
    for k in range(1, n + 1):
        a_ki, a_kj = col_i[k - 1], col_j[k - 1]
        if a_ki + col_j[i - 1] > a_kj:
            raise InconsistentColumnsError(
                f"a[{k},{i}] + a[{i},{j}] <= a[{k},{j}] fails: "
                f"{a_ki} + {col_j[i - 1]} > {a_kj}"
            )
        if a_kj + col_i[j - 1] > a_ki:
            raise InconsistentColumnsError(
                f"a[{k},{j}] + a[{j},{i}] <= a[{k},{i}] fails: "
                f"{a_kj} + {col_i[j - 1]} > {a_ki}"
            )


def complete_two_columns(
    col_i: Sequence,
    col_j: Sequence,
    i: int = 1,
    j: int = 2,
    low=-20,
    high=-10,
    seed=None,
    denominator: int = 1,
    retries: int = 100,
) -> NIMatrix:
    """
    Complete two given columns to an NI matrix.

    The other entries are drawn as in :func:`random_ni`, the given columns are written into
    columns i and j, and the closure is taken. When the closure would change a given entry the
    draw is discarded and a new one is taken, up to ``retries`` times.

    Parameters
    ----------
    col_i, col_j : sequence of numbers
        Columns i and j, each of length n.
    i, j : int
        1-based positions, i < j.
    low, high, seed, denominator
        As in :func:`random_ni`.
    retries : int
        Number of draws before giving up.

    Returns
    ----------
    NIMatrix
        Columns i and j equal the input exactly.

    Raises
    ----------
    InconsistentColumnsError
        If the two columns violate an NI condition among themselves.
    CompletionError
        If every draw altered the given columns.

    Examples
    --------
    >>> A = complete_two_columns([0, -10, -11, -15], [-12, 0, -14, -13], low=-20, high=-10, seed=1)
    >>> A.column(1), A.column(2)
    ((0, -10, -11, -15), (-12, 0, -14, -13))
    """
    col_i = [as_scalar(x) for x in col_i]
    col_j = [as_scalar(x) for x in col_j]
    n = len(col_i)
    if len(col_j) != n or n < 2:
        raise DimensionError(f"columns must have the same length n >= 2, got {n} and {len(col_j)}")
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    _check_columns(col_i, col_j, i, j)
    lo, hi = _sample_bounds(low, high, denominator)
    rng = np.random.default_rng(seed)

    for attempt in range(1, retries + 1):
        rows = _draw(rng, n, lo, hi, denominator)
        for r in range(n):
            rows[r][i - 1] = col_i[r]
            rows[r][j - 1] = col_j[r]
        completed = closure(_fractions(rows))
        if completed.column(i) == tuple(col_i) and completed.column(j) == tuple(col_j):
            return completed
        logger.info("completion attempt %d changed the fixed columns, drawing again", attempt)
    logger.warning("no completion found in %d attempts", retries)
    raise CompletionError(
        f"could not complete columns {i} and {j} within {retries} draws from [{low}, {high}]"
    )


def northwest(A, s: int, i: int = 1, j: int = 2) -> bool:
    """
    Orientation inequalities of row s against columns i and j.

    Checks -a_si >= a_ij - a_sj and a_ji - a_si <= -a_sj; both hold for every NI matrix.
    """
    array = _square(A)
    a = lambda r, c: array[r - 1, c - 1]
    return -a(s, i) >= a(i, j) - a(s, j) and a(j, i) - a(s, i) <= -a(s, j)
