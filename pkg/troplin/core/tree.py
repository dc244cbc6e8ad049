"""
The tree module contains the metric caterpillar tree that represents a tropical line L(p, q).

The inner vertices form a spine, ordered by increasing distance from p. Every leaf k is a ray
of direction -e_k attached to one spine vertex; p sits on the ray of leaf j at distance
``p_offset`` from the first vertex pq and q on the ray of leaf i at distance ``q_offset`` from
the last vertex qp.

Contains public functions: ray_direction, format_split, contract_degeneracies
"""

import logging
from dataclasses import dataclass, replace
from typing import FrozenSet, Optional, Tuple

from .maxplus import ConsistencyError, ProjectivePoint, Scalar, as_scalar

logger = logging.getLogger(__name__)

# (p side, q side)
Split = Tuple[FrozenSet[int], FrozenSet[int]]


@dataclass(frozen=True)
class SpineVertex:
    coords: ProjectivePoint
    leaves: FrozenSet[int]
    offset: Scalar


@dataclass(frozen=True)
class SpineEdge:
    length: Scalar
    split: Split


def ray_direction(k: int, n: int) -> Tuple[int, ...]:
    """
    Canonical direction of the ray of leaf k: -e_k, which for k = n is e_1 + ... + e_{n-1}.

    Examples
    --------
    >>> ray_direction(2, 3)
    (0, -1, 0)
    >>> ray_direction(3, 3)
    (1, 1, 0)
    """
    if not 1 <= k <= n:
        raise ValueError(f"leaf {k} outside 1..{n}")
    if k == n:
        return tuple([1] * (n - 1) + [0])
    return tuple(-1 if label == k else 0 for label in range(1, n + 1))


def _side(labels) -> str:
    labels = sorted(labels)
    if all(label < 10 for label in labels):
        return "".join(str(label) for label in labels)
    return "[" + ",".join(str(label) for label in labels) + "]"


def format_split(split: Split) -> str:
    """
    Format a bipartition as "{15,23467}", the side containing leaf 1 first.

    Labels of a side are concatenated when all are below 10 and bracketed otherwise, e.g.
    "{[1,10],[2,3]}".
    """
    first, second = split
    if 1 in second:
        first, second = second, first
    return "{" + _side(first) + "," + _side(second) + "}"


@dataclass(frozen=True)
class MetricTree:
    """
    A tropical line as a metric caterpillar tree.

    Attributes
    ----------
    n : int
        Number of leaves, labelled 1..n.
    columns : tuple of int
        The column pair (i, j) of the matrix; p is column i and q is column j.
    p, q : ProjectivePoint
        The two marked points.
    vertices : tuple of SpineVertex
        Spine from pq to qp.
    edges : tuple of SpineEdge
        ``edges[a]`` joins ``vertices[a]`` and ``vertices[a + 1]``.
    p_offset, q_offset : Scalar
        d(p, pq) and d(q, qp).
    """

    n: int
    columns: Tuple[int, int]
    p: ProjectivePoint
    q: ProjectivePoint
    vertices: Tuple[SpineVertex, ...]
    edges: Tuple[SpineEdge, ...]
    p_offset: Scalar
    q_offset: Scalar

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a tree needs at least one inner vertex")
        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError(
                f"{len(self.vertices)} spine vertices need {len(self.vertices) - 1} edges,"
                f" got {len(self.edges)}"
            )

    @property
    def pq(self) -> ProjectivePoint:
        return self.vertices[0].coords

    @property
    def qp(self) -> ProjectivePoint:
        return self.vertices[-1].coords

    @property
    def offsets(self) -> Tuple[Scalar, Scalar]:
        return self.p_offset, self.q_offset

    @property
    def lengths(self) -> Tuple[Scalar, ...]:
        """d(p, pq), the spine edge lengths from p to q, then d(qp, q)."""
        return (self.p_offset,) + tuple(e.length for e in self.edges) + (self.q_offset,)

    @property
    def total_length(self) -> Scalar:
        return as_scalar(sum(self.lengths))

    @property
    def bipartitions(self) -> Tuple[Split, ...]:
        return tuple(e.split for e in self.edges)

    def degree(self, index: int) -> int:
        """Leaves plus spine neighbours of ``vertices[index]``."""
        neighbours = (index > 0) + (index < len(self.vertices) - 1)
        return len(self.vertices[index].leaves) + neighbours

    @property
    def is_trivalent(self) -> bool:
        return all(self.degree(a) == 3 for a in range(len(self.vertices)))

    @property
    def is_caterpillar(self) -> bool:
        """Leaves attached once each, and each split cuts the spine between its two vertices."""
        seen = set()
        for vertex in self.vertices:
            if seen & vertex.leaves:
                return False
            seen |= vertex.leaves
        if seen != set(range(1, self.n + 1)):
            return False
        p_side = set()
        for vertex, edge in zip(self.vertices, self.edges):
            p_side |= vertex.leaves
            if edge.split != (frozenset(p_side), frozenset(seen - p_side)):
                return False
        return True

    def leaf_vertex(self, label: int) -> Optional[int]:
        for index, vertex in enumerate(self.vertices):
            if label in vertex.leaves:
                return index
        return None

    def ray_direction(self, k: int) -> Tuple[int, ...]:
        return ray_direction(k, self.n)

    def __str__(self):
        splits = ", ".join(format_split(s) for s in self.bipartitions) or "none"
        lengths = ", ".join(str(x) for x in self.lengths)
        return f"L({self.p}, {self.q}): splits {splits}; lengths {lengths}"


def contract_degeneracies(tree: MetricTree) -> MetricTree:
    """
    Contract the zero-length spine edges of a tree.

    The two ends of a contracted edge become one vertex carrying the leaves of both, and the
    bipartition of that edge is dropped. Zero offsets need no change: p then coincides with pq
    (or q with qp).

    Parameters
    ----------
    tree : MetricTree

    Returns
    ----------
    MetricTree
        The input itself when no edge has length 0.

    Raises
    ----------
    ConsistencyError
        If the ends of a zero-length edge have different coordinates.
    """
    if all(edge.length != 0 for edge in tree.edges):
        return tree
    vertices = [tree.vertices[0]]
    edges = []
    for edge, vertex in zip(tree.edges, tree.vertices[1:]):
        if edge.length == 0:
            merged = vertices.pop()
            if merged.coords != vertex.coords:
                raise ConsistencyError(
                    f"zero-length edge joins distinct points {merged.coords} and {vertex.coords}"
                )
            vertices.append(replace(merged, leaves=merged.leaves | vertex.leaves))
        else:
            edges.append(edge)
            vertices.append(vertex)
    logger.info(
        "contracted %d zero-length edge(s), %d spine vertices remain",
        len(tree.edges) - len(edges),
        len(vertices),
    )
    return replace(tree, vertices=tuple(vertices), edges=tuple(edges))
