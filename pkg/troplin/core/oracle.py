"""
The oracle module checks trees by brute force, independently of the construction.

The checks only use the max-plus primitives: rank-2 membership through 3x3 tropical minors,
positions on tconv(p, q), tropical distances and primitive directions. Each failed check carries
a witness naming the first offending vertex, edge or leaf.

Contains public functions: verify_tree, verify_balancing, cross_check_n4, run_sweep
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .builder import build_tree
from .differences import build_F
from .lines4 import LineType4, classify_type4, pluecker, vertices4
from .maxplus import (
    ConsistencyError,
    DegenerateInputError,
    DimensionError,
    ProjectivePoint,
    canonicalize,
    primitive_direction,
    rank2_membership,
    tconv,
    trop_distance,
)
from .nimatrix import random_ni, validate_ni
from .tree import MetricTree, format_split, ray_direction

logger = logging.getLogger(__name__)

SAMPLE_FRACTIONS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


class CheckFailed(Exception):
    """Raised inside a check with the witness of the failure."""

    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str = ""

    def __str__(self):
        status = "ok" if self.passed else f"FAILED: {self.witness}"
        return f"{self.name}: {status}"


@dataclass(frozen=True)
class VerificationReport:
    """Named check results in a fixed order; ``overall`` is their conjunction."""

    checks: Tuple[CheckResult, ...] = ()

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> Tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __iter__(self) -> Iterator[CheckResult]:
        return iter(self.checks)

    def __str__(self):
        return "\n".join(str(c) for c in self.checks)


def _run(name: str, check: Callable[[], None]) -> CheckResult:
    try:
        check()
    except CheckFailed as failure:
        return CheckResult(name, False, str(failure))
    except (ConsistencyError, ValueError) as error:
        return CheckResult(name, False, f"{type(error).__name__}: {error}")
    return CheckResult(name, True)


def _points_on_spine(tree: MetricTree) -> List[ProjectivePoint]:
    return [v.coords for v in tree.vertices]


def _cumulative_offsets(tree: MetricTree):
    offsets = [tree.p_offset]
    for edge in tree.edges:
        offsets.append(offsets[-1] + edge.length)
    return offsets


def _interpolate(u: ProjectivePoint, v: ProjectivePoint, t) -> ProjectivePoint:
    return canonicalize([a + t * (b - a) for a, b in zip(u.coords, v.coords)])


def _balance_defect(tree: MetricTree) -> Optional[Tuple[int, Tuple]]:
    points = _points_on_spine(tree)
    for index, vertex in enumerate(tree.vertices):
        directions = [ray_direction(k, tree.n) for k in sorted(vertex.leaves)]
        if index > 0:
            directions.append(primitive_direction(vertex.coords, points[index - 1]))
        if index < len(points) - 1:
            directions.append(primitive_direction(vertex.coords, points[index + 1]))
        total = tuple(sum(column) for column in zip(*directions))
        if len(set(total)) != 1:
            return index, total
    return None


def verify_balancing(tree: MetricTree) -> bool:
    """
    Check the balancing condition at every spine vertex.

    The primitive directions of the rays at a vertex and of the spine edges leaving it must add
    up to a constant vector, the zero class of Q^{n-1}.
    """
    try:
        return _balance_defect(tree) is None
    except DegenerateInputError:
        return False


def verify_tree(A, i: int, j: int, tree: MetricTree) -> VerificationReport:
    """
    Run every oracle check on a tree built for columns i and j of A.

    Parameters
    ----------
    A : array_like or NIMatrix
    i, j : int
        The columns the tree claims to connect.
    tree : MetricTree

    Returns
    ----------
    VerificationReport
        Checks in the order rank2_membership, tconv_containment, distance_additivity,
        balancing, caterpillar, column_separation, edge_samples. Failures are reported, never
        raised.
    """
    A = validate_ni(A)
    p = canonicalize(A.column(i))
    q = canonicalize(A.column(j))
    distance = abs(build_F(A, i, j).f(i, j))
    points = _points_on_spine(tree)

    def membership():
        for index, x in enumerate(points):
            if not rank2_membership(p, q, x):
                raise CheckFailed(f"vertex {index} {x} is not on L(p, q)")

    def containment():
        segment = tconv(p, q)
        backwards = segment.reversed()
        for index, (x, offset) in enumerate(zip(points, _cumulative_offsets(tree))):
            if tree.vertices[index].offset != offset:
                raise CheckFailed(
                    f"vertex {index} records offset {tree.vertices[index].offset},"
                    f" its edges add up to {offset}"
                )
            if segment.point_at(offset) != x:
                raise CheckFailed(f"vertex {index} {x} is not at offset {offset} on tconv(p, q)")
            if backwards.point_at(segment.total - offset) != x:
                raise CheckFailed(f"vertex {index} {x} is misplaced when walking from q")

    def additivity():
        if tree.total_length != distance:
            raise CheckFailed(f"lengths add up to {tree.total_length}, |f_ij| = {distance}")
        if trop_distance(p, q) != distance:
            raise CheckFailed(f"d(p, q) = {trop_distance(p, q)} but |f_ij| = {distance}")
        if trop_distance(p, tree.pq) != tree.p_offset:
            raise CheckFailed(f"d(p, pq) = {trop_distance(p, tree.pq)} != {tree.p_offset}")
        if trop_distance(q, tree.qp) != tree.q_offset:
            raise CheckFailed(f"d(q, qp) = {trop_distance(q, tree.qp)} != {tree.q_offset}")
        for index, edge in enumerate(tree.edges):
            if edge.length <= 0:
                raise CheckFailed(f"edge {index} has length {edge.length}")
            measured = trop_distance(points[index], points[index + 1])
            if measured != edge.length:
                raise CheckFailed(f"edge {index} has length {edge.length}, endpoints {measured}")

    def balancing():
        defect = _balance_defect(tree)
        if defect is not None:
            index, total = defect
            raise CheckFailed(f"directions at vertex {index} add up to {total}")

    def caterpillar():
        leaves: Dict[int, int] = {}
        for index, vertex in enumerate(tree.vertices):
            for k in vertex.leaves:
                if k in leaves:
                    raise CheckFailed(f"leaf {k} is attached to vertices {leaves[k]} and {index}")
                leaves[k] = index
        missing = set(range(1, tree.n + 1)) - set(leaves)
        if missing:
            raise CheckFailed(f"leaves {sorted(missing)} are not attached")
        for index, edge in enumerate(tree.edges):
            p_side = frozenset(k for k, at in leaves.items() if at <= index)
            q_side = frozenset(leaves) - p_side
            if edge.split != (p_side, q_side):
                raise CheckFailed(
                    f"edge {index} carries {format_split(edge.split)},"
                    f" removing it leaves {format_split((p_side, q_side))}"
                )

    def separation():
        if j not in tree.vertices[0].leaves:
            raise CheckFailed(f"p is not on the ray of leaf {j} at pq")
        if i not in tree.vertices[-1].leaves:
            raise CheckFailed(f"q is not on the ray of leaf {i} at qp")
        for index, (p_side, q_side) in enumerate(tree.bipartitions):
            if not (j in p_side and i in q_side):
                raise CheckFailed(f"edge {index} does not separate leaves {i} and {j}")

    def samples():
        ends = [(p, points[0]), *zip(points, points[1:]), (points[-1], q)]
        for u, v in ends:
            if u == v:
                continue
            for t in SAMPLE_FRACTIONS:
                x = _interpolate(u, v, t)
                if not rank2_membership(p, q, x):
                    raise CheckFailed(f"{x}, at {t} from {u} to {v}, is not on L(p, q)")

    checks = (
        ("rank2_membership", membership),
        ("tconv_containment", containment),
        ("distance_additivity", additivity),
        ("balancing", balancing),
        ("caterpillar", caterpillar),
        ("column_separation", separation),
        ("edge_samples", samples),
    )
    return VerificationReport(tuple(_run(name, check) for name, check in checks))


def cross_check_n4(A) -> VerificationReport:
    """
    Compare the recursive construction with the closed forms on a 4 x 4 NI matrix.

    Checks: pluecker_relation, type_agreement (sign of f_34 against the Pluecker data),
    vertex_agreement (vertices4 against build_tree) and spine_distances (for a type {ik, jl}:
    d(p, pq) = |f_jl|, d(pq, qp) = |f_kl|, d(qp, q) = |f_ik|).
    """
    A = validate_ni(A)
    if A.n != 4:
        raise DimensionError(f"cross check needs n = 4, got {A.n}")
    F = build_F(A, 1, 2)

    def relation():
        pluecker(A.column(1), A.column(2))

    def types():
        by_sign = classify_type4(F)
        by_minors = pluecker(A.column(1), A.column(2)).line_type
        if by_sign is not by_minors:
            raise CheckFailed(f"sign of f_34 gives {by_sign}, minors give {by_minors}")

    def vertices():
        closed = vertices4(A.column(1), A.column(2), classify_type4(F))
        tree = build_tree(A)
        if closed.line_type is LineType4.T1234:
            if len(tree.vertices) != 1 or tree.pq != closed.pq:
                raise CheckFailed(f"expected the single vertex {closed.pq}, tree has {tree}")
        elif (tree.pq, tree.qp) != (closed.pq, closed.qp):
            raise CheckFailed(
                f"closed forms give {closed.pq}, {closed.qp}; tree has {tree.pq}, {tree.qp}"
            )
        if tree.lengths != closed.lengths:
            raise CheckFailed(f"closed lengths {closed.lengths}, tree lengths {tree.lengths}")

    def distances():
        line_type = classify_type4(F)
        if line_type is LineType4.T14_23:
            k, l = 4, 3
        else:
            k, l = 3, 4
        expected = (abs(F.f(2, l)), abs(F.f(k, l)), abs(F.f(1, k)))
        tree = build_tree(A)
        if line_type is LineType4.T1234:
            expected = (expected[0], expected[2])
        if tree.lengths != expected:
            raise CheckFailed(f"tree lengths {tree.lengths}, expected {expected}")

    checks = (
        ("pluecker_relation", relation),
        ("type_agreement", types),
        ("vertex_agreement", vertices),
        ("spine_distances", distances),
    )
    return VerificationReport(tuple(_run(name, check) for name, check in checks))


@dataclass(frozen=True)
class SweepSummary:
    """
    Outcome of a seeded sweep. Instance k uses seed ``seed + k``.

    ``failures`` maps the seed of each failing instance to the names of its failed checks;
    ``skipped`` counts instances whose columns 1 and 2 coincide.
    """

    n: int
    count: int
    seed: int
    passed: int
    skipped: int = 0
    failures: Dict[int, Tuple[str, ...]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self):
        return {
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "passed": self.passed,
            "skipped": self.skipped,
            "failures": {str(s): list(names) for s, names in self.failures.items()},
        }


def _instance_failures(A) -> Tuple[str, ...]:
    try:
        tree = build_tree(A)
    except (ConsistencyError, ValueError) as error:
        logger.warning("construction failed: %s", error)
        return ("build_tree",)
    names = [c.name for c in verify_tree(A, 1, 2, tree).failed]
    if A.n == 4:
        names += [c.name for c in cross_check_n4(A).failed]
    return tuple(names)


def run_sweep(n: int, count: int, seed: int = 0, low=-20, high=-10) -> SweepSummary:
    """
    Build and verify the lines of ``count`` seeded random NI matrices of order n.

    For n = 4 every instance is also cross-checked against the closed forms.

    Parameters
    ----------
    n : int
        Order, n >= 3.
    count : int
        Number of instances.
    seed : int
        Instance k is ``random_ni(n, low, high, seed=seed + k)``.
    low, high : number
        Sampling range of :func:`random_ni`.

    Returns
    ----------
    SweepSummary
    """
    if n < 3:
        raise DimensionError(f"a sweep needs n >= 3, got {n}")
    passed, skipped, failures = 0, 0, {}
    for k in range(count):
        A = random_ni(n, low, high, seed=seed + k)
        if build_F(A, 1, 2).f(1, 2) == 0:
            skipped += 1
            continue
        failed = _instance_failures(A)
        if failed:
            logger.warning("n=%d seed=%d failed %s", n, seed + k, ", ".join(failed))
            failures[seed + k] = failed
        else:
            passed += 1
    logger.info("n=%d: %d of %d instances passed", n, passed, count)
    return SweepSummary(n, count, seed, passed, skipped, failures)
