"""
The differences module holds the matrix of differences F and the ledger of active entries.

For columns i < j of A, f_kl is the difference (main diagonal minus secondary diagonal) of the
2x2 minor of A on rows k, l and columns i, j. F is additive, f_kl + f_lr = f_kr, and |f_ij| is
the tropical distance between columns i and j.

During the construction of a line, an entry f_kl is active while |f_kl| is the length of an
edge or of one of the two end offsets of the current tree. Each new leaf s fractures one active
entry f_kl into f_ks and f_ls with |f_kl| = |f_ks| + |f_ls|.

Contains public functions: difference, build_F, distance_given_columns, find_fracture
"""

import itertools
from dataclasses import dataclass, replace
from typing import Dict, Tuple

import numpy as np

from .maxplus import ConsistencyError, DimensionError, Scalar, as_matrix, as_scalar
from .nimatrix import NormalMatrix

Pair = Tuple[int, int]


def difference(m) -> Scalar:
    """
    Difference of a 2x2 matrix: principal diagonal minus secondary diagonal.

    Examples
    --------
    >>> difference([[0, -12], [-10, 0]])
    22
    """
    m = as_matrix(m)
    if m.shape != (2, 2):
        raise DimensionError(f"difference needs a 2x2 matrix, got shape {m.shape}")
    return as_scalar(m[0, 0] + m[1, 1] - m[0, 1] - m[1, 0])


class DifferenceMatrix:
    """
    Matrix of differences F for the column pair (i, j).

    Values are stored as the full antisymmetric n x n table; :meth:`f` reads f_kl for any
    1-based k, l, with f_lk = -f_kl and f_kk = 0. :meth:`rows` gives the strictly upper
    triangular display.
    """

    def __init__(self, values, i: int, j: int):
        values = as_matrix(values)
        if values.shape[0] != values.shape[1]:
            raise DimensionError(f"F must be square, got shape {values.shape}")
        values.setflags(write=False)
        self._values = values
        self.i = i
        self.j = j

    @property
    def n(self) -> int:
        return self._values.shape[0]

    def f(self, k: int, l: int) -> Scalar:
        return self._values[k - 1, l - 1]

    def rows(self):
        return [[self.f(k, l) for l in range(k + 1, self.n + 1)] for k in range(1, self.n)]

    def superdiagonal(self):
        return [self.f(k, k + 1) for k in range(1, self.n)]

    def max_abs(self) -> Scalar:
        return max(abs(x) for x in self._values.flat)

    @classmethod
    def from_superdiagonal(cls, values, i: int = 1, j: int = 2) -> "DifferenceMatrix":
        """Rebuild F from f_12, f_23, ..., f_{n-1,n} by additivity."""
        steps = [as_scalar(x) for x in values]
        positions = [0]
        for step in steps:
            positions.append(positions[-1] - step)
        # f_kl = positions[k] - positions[l]
        n = len(positions)
        table = [[as_scalar(positions[k] - positions[l]) for l in range(n)] for k in range(n)]
        return cls(table, i, j)

    def __eq__(self, other):
        if not isinstance(other, DifferenceMatrix):
            return NotImplemented
        return (self.i, self.j) == (other.i, other.j) and bool(
            np.all(self._values == other._values)
        )

    __hash__ = None

    def __repr__(self):
        return f"DifferenceMatrix(i={self.i}, j={self.j}, rows={self.rows()!r})"


def _check_additivity(F: DifferenceMatrix):
    for k, l, r in itertools.combinations(range(1, F.n + 1), 3):
        if F.f(k, l) + F.f(l, r) != F.f(k, r):
            raise ConsistencyError(f"additivity fails for ({k},{l},{r})")


def _check_signs(F: DifferenceMatrix):
    for l in range(1, F.n + 1):
        if F.f(F.i, l) < 0:
            raise ConsistencyError(
                f"f[{F.i},{l}] = {F.f(F.i, l)} < 0: the matrix is not normal idempotent"
            )
        if F.f(F.j, l) > 0:
            raise ConsistencyError(
                f"f[{F.j},{l}] = {F.f(F.j, l)} > 0: the matrix is not normal idempotent"
            )
    if abs(F.f(F.i, F.j)) != F.max_abs():
        raise ConsistencyError(
            f"|f[{F.i},{F.j}]| is not the largest difference: the matrix is not normal idempotent"
        )


def build_F(A, i: int = 1, j: int = 2) -> DifferenceMatrix:
    """
    Matrix of differences of A for the columns i < j.

    f_kl = a_ki + a_lj - a_kj - a_li. Additivity is checked for all triples and the sign
    pattern of NI matrices (f_il >= 0, f_jl <= 0, |f_ij| maximal) for every l.

    Parameters
    ----------
    A : array_like or NormalMatrix
        Square NI matrix.
    i, j : int
        1-based column labels, i < j.

    Returns
    ----------
    DifferenceMatrix

    Raises
    ----------
    ValueError
        If not 1 <= i < j <= n.
    ConsistencyError
        If an invariant fails, which means A was not NI.
    """
    entries = A.entries if isinstance(A, NormalMatrix) else as_matrix(A)
    n = entries.shape[0]
    if entries.shape != (n, n):
        raise DimensionError(f"expected a square matrix, got shape {entries.shape}")
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    ci, cj = entries[:, i - 1], entries[:, j - 1]
    values = ci[:, None] + cj[None, :] - cj[:, None] - ci[None, :]
    F = DifferenceMatrix(values, i, j)
    _check_additivity(F)
    _check_signs(F)
    return F


def distance_given_columns(F: DifferenceMatrix) -> Scalar:
    """Tropical distance between columns i and j, |f_ij|."""
    return abs(F.f(F.i, F.j))


def _role(pair: Pair) -> str:
    # p sits on the ray of leaf 2, q on the ray of leaf 1
    if pair == (1, 2):
        return "span"
    if 2 in pair:
        return "p_offset"
    if 1 in pair:
        return "q_offset"
    return "edge"


@dataclass(frozen=True)
class ActiveEntry:
    pair: Pair
    length: Scalar
    role: str


@dataclass(frozen=True)
class FractureRecord:
    """
    Result of :func:`find_fracture` for one stage.

    ``row`` is the smallest index minimizing |f_ks|, ``victim`` the active pair (k, l) that is
    split into ``parts`` (k, s) and (l, s). ``tie`` flags a minimum attained by several rows,
    ``zero_part`` a part of length 0; both only happen for non-generic input.
    """

    stage: int
    row: int
    victim: Pair
    victim_length: Scalar
    parts: Tuple[Pair, Pair]
    part_lengths: Tuple[Scalar, Scalar]
    tie: bool = False
    zero_part: bool = False

    @property
    def generic(self) -> bool:
        return not (self.tie or self.zero_part)


@dataclass(frozen=True)
class ActiveSet:
    """Active entries after a stage. Stage 2 holds the single entry f_12 for the whole segment."""

    stage: int
    entries: Tuple[ActiveEntry, ...]

    @classmethod
    def initial(cls, F: DifferenceMatrix) -> "ActiveSet":
        _require_frame(F)
        return cls(2, (ActiveEntry((1, 2), abs(F.f(1, 2)), "span"),))

    def lengths(self) -> Dict[Pair, Scalar]:
        return {e.pair: e.length for e in self.entries}

    def pairs(self):
        return [e.pair for e in self.entries]

    def __contains__(self, pair):
        return tuple(sorted(pair)) in self.lengths()

    def containing(self, index: int):
        return [e for e in self.entries if index in e.pair]

    def total(self) -> Scalar:
        return as_scalar(sum(e.length for e in self.entries))

    def apply(self, record: FractureRecord) -> "ActiveSet":
        """Retire the victim and activate the two parts."""
        if record.stage != self.stage + 1:
            raise ValueError(f"stage {record.stage} cannot follow stage {self.stage}")
        if record.victim not in self.lengths():
            raise ConsistencyError(f"{record.victim} is not active at stage {self.stage}")
        kept = [e for e in self.entries if e.pair != record.victim]
        for pair, length in zip(record.parts, record.part_lengths):
            pair = tuple(sorted(pair))
            kept.append(ActiveEntry(pair, length, _role(pair)))
        return replace(self, stage=record.stage, entries=tuple(sorted(kept, key=lambda e: e.pair)))

    def check(self, F: DifferenceMatrix):
        """
        Assert the four properties of the active set after stage s.

        1. every index 1..s is an endpoint of an active entry;
        2. exactly two active entries contain s;
        3. active differences of both signs occur (checked when no active length is 0);
        4. the active lengths add up to |f_12|.

        Raises
        ----------
        ConsistencyError
            Naming the failed property.
        """
        s = self.stage
        covered = {k for e in self.entries for k in e.pair}
        missing = set(range(1, s + 1)) - covered
        if missing:
            raise ConsistencyError(f"stage {s}: indices {sorted(missing)} have no active entry")
        if s >= 3 and len(self.containing(s)) != 2:
            raise ConsistencyError(
                f"stage {s}: {len(self.containing(s))} active entries contain {s}, expected 2"
            )
        if s >= 3 and all(e.length != 0 for e in self.entries):
            signs = {F.f(*e.pair) > 0 for e in self.entries}
            if signs != {True, False}:
                raise ConsistencyError(f"stage {s}: active differences all have the same sign")
        if self.total() != abs(F.f(1, 2)):
            raise ConsistencyError(
                f"stage {s}: active lengths add up to {self.total()}, expected {abs(F.f(1, 2))}"
            )


def _require_frame(F: DifferenceMatrix):
    if (F.i, F.j) != (1, 2):
        raise ValueError("the fracture recursion runs on the difference matrix of columns 1, 2")


def find_fracture(F: DifferenceMatrix, active: ActiveSet, s: int) -> FractureRecord:
    """
    Find the active entry that leaf s fractures.

    The row i minimizing |f_is| over i < s (smallest index on ties) is the leaf whose vertex is
    nearest to the new one; the victim is the active entry f_kl, preferring those with i in
    {k, l}, that satisfies |f_kl| = |f_ks| + |f_ls|.

    Parameters
    ----------
    F : DifferenceMatrix
        Built for columns (1, 2).
    active : ActiveSet
        Active set of stage s - 1.
    s : int
        Stage, 3 <= s <= n.

    Returns
    ----------
    FractureRecord

    Raises
    ----------
    ValueError
        If s or the active set do not fit.
    ConsistencyError
        If no active entry satisfies the fracture relation.

    Examples
    --------
    In the 7 x 7 worked example, leaf 3 splits f_12: 34 = 22 + 12.
    """
    _require_frame(F)
    if not 3 <= s <= F.n:
        raise ValueError(f"stage must be in 3..{F.n}, got {s}")
    if active.stage != s - 1:
        raise ValueError(f"stage {s} needs the active set of stage {s - 1}, got {active.stage}")

    distances = {k: abs(F.f(k, s)) for k in range(1, s)}
    minimum = min(distances.values())
    rows = [k for k, d in distances.items() if d == minimum]
    row = rows[0]

    ordered = active.containing(row) + [e for e in active.entries if row not in e.pair]
    for entry in ordered:
        k, l = entry.pair
        if entry.length == distances[k] + distances[l]:
            break
    else:
        raise ConsistencyError(f"stage {s}: no active entry fractures by leaf {s}")

    parts = ((k, s), (l, s))
    part_lengths = (distances[k], distances[l])
    return FractureRecord(
        stage=s,
        row=row,
        victim=entry.pair,
        victim_length=entry.length,
        parts=parts,
        part_lengths=part_lengths,
        tie=len(rows) > 1,
        zero_part=0 in part_lengths,
    )
