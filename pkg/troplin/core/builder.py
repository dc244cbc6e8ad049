"""functionality to build the tropical line through two columns of an NI matrix."""
import logging
from dataclasses import dataclass, replace
from typing import Dict, List, Tuple

import numpy as np

from .differences import (
    ActiveSet,
    FractureRecord,
    build_F,
    find_fracture,
)
from .maxplus import (
    ConsistencyError,
    DegenerateInputError,
    DimensionError,
    ProjectivePoint,
    Scalar,
    canonicalize,
    tconv,
    tropical_minor,
)
from .nimatrix import northwest, validate_ni
from .tree import MetricTree, SpineEdge, SpineVertex, Split, contract_degeneracies

logger = logging.getLogger(__name__)

CASES = {
    "span": "tripod",
    "p_offset": "p_ray",
    "q_offset": "q_ray",
    "edge": "edge",
}


@dataclass(frozen=True)
class StageRecord:
    """
    One step of the construction, in output labels.

    ``vertex`` is the new vertex projected to the coordinates of the leaves present at this
    stage (columns i and j first, then the others in increasing order); ``lengths`` and
    ``splits`` describe the line on those leaves.
    """

    stage: int
    leaf: int
    case: str
    fracture: FractureRecord
    offset: Scalar
    vertex: ProjectivePoint
    lengths: Tuple[Scalar, ...]
    splits: Tuple[Split, ...]


class LineBuilder:
    """Build L(p, q) for columns i < j of an NI matrix as a metric caterpillar tree.

    The construction runs in the frame where columns i and j are columns 1 and 2: rows and
    columns are permuted to (i, j, the others in increasing order) and labels are mapped back
    on output. After the tripod of stage 3, every stage s adds leaf s by fracturing one active
    entry of F. The new vertex is placed on tconv(p, q) at the offset where coordinate s starts
    to move, and that offset is checked against both ends of the fractured entry. Zero-length
    edges of non-generic input are contracted at the end.

    Parameters
    ----------
    matrix : array_like or NIMatrix
        Normal idempotent matrix of order n >= 3.

    i, j : int
        1-based column labels, i < j. p is column i and q is column j.

    Examples
    --------
    >>> builder = LineBuilder([[0, -12, -10, -10], [-10, 0, -10, -10],
    ...                        [-11, -14, 0, -15], [-15, -13, -15, 0]])
    >>> builder.tree.lengths
    (8, 5, 9)
    >>> [r.case for r in builder.stages]
    ['tripod', 'p_ray']
    """

    def __init__(self, matrix, i: int = 1, j: int = 2):
        self.matrix = validate_ni(matrix)
        n = self.matrix.n
        if n < 3:
            raise DimensionError(f"a line needs n >= 3 leaves, got n = {n}")
        if not 1 <= i < j <= n:
            raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
        self.n = n
        self.columns = (i, j)
        self.labels = (i, j) + tuple(k for k in range(1, n + 1) if k not in (i, j))
        order = [label - 1 for label in self.labels]
        self.permuted = self.matrix.entries[np.ix_(order, order)]
        self.F = build_F(self.permuted, 1, 2)
        if self.F.f(1, 2) == 0:
            raise DegenerateInputError(f"columns {i} and {j} are equal in Q^{n - 1}")

        self.p = canonicalize(self.matrix.column(i))
        self.q = canonicalize(self.matrix.column(j))
        self.segment = tconv(self.p, self.q)
        if self.segment.total != abs(self.F.f(1, 2)):
            raise ConsistencyError(
                f"d(p, q) = {self.segment.total} differs from |f_12| = {abs(self.F.f(1, 2))}"
            )

        # internal labels; 2 marks p and 1 marks q
        self._positions: Dict[int, Scalar] = {2: 0, 1: self.segment.total}
        self._spine: List[int] = [2, 1]
        self._splits: List[Split] = []
        self.active = ActiveSet.initial(self.F)
        self.stages: List[StageRecord] = []
        self.tree = self._build()

    def _label(self, internal: int) -> int:
        return self.labels[internal - 1]

    def _inner(self) -> List[int]:
        return self._spine[1:-1]

    def _place(self, record: FractureRecord) -> Tuple[int, int, Scalar]:
        s = record.stage
        k, l = record.victim
        left, right = sorted((k, l), key=self._spine.index)
        if self._spine.index(right) - self._spine.index(left) != 1:
            raise ConsistencyError(f"stage {s}: active pair {record.victim} is not a spine edge")
        target = self.segment.switch_offset(self._label(s))
        from_left = self._positions[left] + abs(self.F.f(left, s))
        from_right = self._positions[right] - abs(self.F.f(right, s))
        if not target == from_left == from_right:
            raise ConsistencyError(
                f"stage {s}: leaf {self._label(s)} sits at {target} on tconv(p, q),"
                f" fracture of {record.victim} gives {from_left} and {from_right}"
            )
        return left, right, target

    def _grow_splits(self, s: int, case: str, left: int, right: int):
        inner = self._inner()
        add_p = lambda split: (split[0] | {s}, split[1])
        add_q = lambda split: (split[0], split[1] | {s})
        seen = frozenset(range(1, s + 1))

        if case == "tripod":
            return
        if case == "p_ray":
            self._splits = [(frozenset({2, s}), seen - {2, s})] + [
                add_p(split) for split in self._splits
            ]
        elif case == "q_ray":
            self._splits = [add_q(split) for split in self._splits] + [
                (seen - {1, s}, frozenset({1, s}))
            ]
        else:
            cut = inner.index(left)
            before = [add_q(split) for split in self._splits[:cut]]
            after = [add_p(split) for split in self._splits[cut + 1:]]
            p_side, q_side = self._splits[cut]
            self._splits = before + [(p_side, q_side | {s}), (p_side | {s}, q_side)] + after

    def _check_ledger(self, s: int):
        pairs = sorted(tuple(sorted(pair)) for pair in zip(self._spine, self._spine[1:]))
        if pairs != self.active.pairs():
            raise ConsistencyError(
                f"stage {s}: active entries {self.active.pairs()} are not the spine gaps {pairs}"
            )
        for entry in self.active.entries:
            k, l = entry.pair
            if entry.length != abs(self._positions[k] - self._positions[l]):
                raise ConsistencyError(f"stage {s}: active {entry.pair} does not measure its gap")
        inner = self._inner()
        seen = frozenset(range(1, s + 1))
        for a, split in enumerate(self._splits):
            p_side = frozenset({2}) | frozenset(inner[: a + 1])
            if split != (p_side, seen - p_side):
                raise ConsistencyError(f"stage {s}: split {a} does not cut the spine")
        if not northwest(self.permuted, s):
            raise ConsistencyError(f"stage {s}: row {self._label(s)} breaks the NI orientation")

    def _check_tripod(self):
        # the vertex of L^3 solves the Cramer system in the minors of the first three rows
        p3 = self.permuted[:3, 0]
        q3 = self.permuted[:3, 1]
        m = lambda k, l: tropical_minor(p3, q3, k, l)
        cramer = canonicalize([-m(2, 3), -m(1, 3), -m(1, 2)])
        direct = canonicalize([-self.permuted[2, 0], -self.permuted[2, 1], 0])
        placed = self.segment.point_at(self._positions[3]).restrict(self.labels[:3])
        if not cramer == direct == placed:
            raise ConsistencyError(f"tripod vertex {placed} differs from {cramer}")

    def _map_fracture(self, record: FractureRecord) -> FractureRecord:
        pair = lambda pr: tuple(sorted(self._label(k) for k in pr))
        return replace(
            record,
            row=self._label(record.row),
            victim=pair(record.victim),
            parts=(pair(record.parts[0]), pair(record.parts[1])),
        )

    def _map_split(self, split: Split) -> Split:
        return tuple(frozenset(self._label(k) for k in side) for side in split)

    def _lengths(self) -> Tuple[Scalar, ...]:
        marks = [self._positions[k] for k in self._spine]
        return tuple(b - a for a, b in zip(marks, marks[1:]))

    def _stage(self, s: int):
        record = find_fracture(self.F, self.active, s)
        role = {e.pair: e.role for e in self.active.entries}[record.victim]
        case = CASES[role]
        left, right, offset = self._place(record)
        if not record.generic:
            logger.info(
                "stage %d: non-generic fracture of %s (tie=%s, zero part=%s)",
                s,
                record.victim,
                record.tie,
                record.zero_part,
            )
        logger.debug("stage %d: leaf %d, %s, victim %s", s, self._label(s), case, record.victim)

        self._grow_splits(s, case, left, right)
        self._spine.insert(self._spine.index(right), s)
        self._positions[s] = offset
        self.active = self.active.apply(record)
        self.active.check(self.F)
        self._check_ledger(s)
        if s == 3:
            self._check_tripod()

        self.stages.append(
            StageRecord(
                stage=s,
                leaf=self._label(s),
                case=case,
                fracture=self._map_fracture(record),
                offset=offset,
                vertex=self.segment.point_at(offset).restrict(self.labels[:s]),
                lengths=self._lengths(),
                splits=tuple(self._map_split(split) for split in self._splits),
            )
        )

    def _build(self) -> MetricTree:
        for s in range(3, self.n + 1):
            self._stage(s)
        inner = self._inner()
        vertices = []
        for index, k in enumerate(inner):
            leaves = {self._label(k)}
            if index == 0:
                leaves.add(self._label(2))
            if index == len(inner) - 1:
                leaves.add(self._label(1))
            offset = self._positions[k]
            vertices.append(SpineVertex(self.segment.point_at(offset), frozenset(leaves), offset))
        edges = [
            SpineEdge(self._positions[b] - self._positions[a], self._map_split(split))
            for a, b, split in zip(inner, inner[1:], self._splits)
        ]
        tree = MetricTree(
            n=self.n,
            columns=self.columns,
            p=self.p,
            q=self.q,
            vertices=tuple(vertices),
            edges=tuple(edges),
            p_offset=self._positions[inner[0]],
            q_offset=self.segment.total - self._positions[inner[-1]],
        )
        return contract_degeneracies(tree)


def trace_line(A, i: int = 1, j: int = 2) -> Tuple[MetricTree, List[StageRecord]]:
    """
    Build L(p, q) and return it with the record of every stage 3..n.

    Parameters
    ----------
    A : array_like or NIMatrix
    i, j : int
        Columns, i < j.

    Returns
    ----------
    tuple
        The contracted MetricTree and the list of StageRecord.

    Raises
    ----------
    NotNormalIdempotentError
        If A is not NI.
    DegenerateInputError
        If columns i and j are equal in Q^{n-1}.
    """
    builder = LineBuilder(A, i, j)
    return builder.tree, builder.stages


def build_tree(A, i: int = 1, j: int = 2) -> MetricTree:
    """The stable tropical line through columns i and j of the NI matrix A."""
    return LineBuilder(A, i, j).tree
