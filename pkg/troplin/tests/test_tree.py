"""
This module contains tests for the caterpillar tree data model of troplin.core.tree.

Contains tests: test_ray_direction, test_format_split, test_tree_properties,
test_tree_validation, test_not_caterpillar, test_contract_degeneracies
"""

from dataclasses import replace

import pytest

from troplin.core.maxplus import ConsistencyError, canonicalize
from troplin.core.tree import (
    MetricTree,
    SpineEdge,
    SpineVertex,
    contract_degeneracies,
    format_split,
    ray_direction,
)


def _tree45(edge_length=5):
    """The line of the 4 x 4 worked example, entered by hand."""
    return MetricTree(
        n=4,
        columns=(1, 2),
        p=canonicalize([15, 5, 4, 0]),
        q=canonicalize([1, 13, -1, 0]),
        vertices=(
            SpineVertex(canonicalize([15, 13, 4, 0]), frozenset({2, 4}), 8),
            SpineVertex(canonicalize([10, 13, -1, 0]), frozenset({1, 3}), 8 + edge_length),
        ),
        edges=(SpineEdge(edge_length, (frozenset({2, 4}), frozenset({1, 3}))),),
        p_offset=8,
        q_offset=9,
    )


def test_ray_direction():
    assert ray_direction(1, 4) == (-1, 0, 0, 0)
    assert ray_direction(4, 4) == (1, 1, 1, 0)
    with pytest.raises(ValueError):
        ray_direction(5, 4)


@pytest.mark.parametrize(
    "split, text",
    [
        ((frozenset({2, 7}), frozenset({1, 3, 4, 5, 6})), "{13456,27}"),
        ((frozenset({1, 5}), frozenset({2, 3, 4, 6, 7})), "{15,23467}"),
        ((frozenset({2, 10}), frozenset({1, 3})), "{13,[2,10]}"),
    ],
)
def test_format_split(split, text):
    assert format_split(split) == text


def test_tree_properties():
    tree = _tree45()
    assert tree.pq.coords == (15, 13, 4, 0)
    assert tree.qp.coords == (10, 13, -1, 0)
    assert tree.offsets == (8, 9)
    assert tree.lengths == (8, 5, 9)
    assert tree.total_length == 22
    assert [format_split(s) for s in tree.bipartitions] == ["{13,24}"]
    assert [tree.degree(a) for a in range(2)] == [3, 3]
    assert tree.is_trivalent
    assert tree.is_caterpillar
    assert tree.leaf_vertex(4) == 0
    assert tree.leaf_vertex(3) == 1
    assert tree.leaf_vertex(7) is None
    assert tree.ray_direction(2) == (0, -1, 0, 0)
    assert str(tree) == "L([15,5,4,0], [1,13,-1,0]): splits {13,24}; lengths 8, 5, 9"


def test_tree_validation():
    tree = _tree45()
    with pytest.raises(ValueError):
        replace(tree, edges=())
    with pytest.raises(ValueError):
        replace(tree, vertices=(), edges=())


def test_not_caterpillar():
    tree = _tree45()
    swapped = replace(tree, edges=(SpineEdge(5, (frozenset({1, 3}), frozenset({2, 4}))),))
    assert not swapped.is_caterpillar
    doubled = replace(
        tree, vertices=(tree.vertices[0], replace(tree.vertices[1], leaves=frozenset({1, 3, 4})))
    )
    assert not doubled.is_caterpillar
    missing = replace(
        tree, vertices=(tree.vertices[0], replace(tree.vertices[1], leaves=frozenset({1})))
    )
    assert not missing.is_caterpillar


def test_contract_degeneracies():
    tree = _tree45()
    assert contract_degeneracies(tree) is tree

    point = canonicalize([15, 18, 4, 0])
    flat = MetricTree(
        n=4,
        columns=(1, 2),
        p=canonicalize([15, 5, 4, 0]),
        q=canonicalize([6, 18, 4, 0]),
        vertices=(
            SpineVertex(point, frozenset({2, 3}), 13),
            SpineVertex(point, frozenset({1, 4}), 13),
        ),
        edges=(SpineEdge(0, (frozenset({2, 3}), frozenset({1, 4}))),),
        p_offset=13,
        q_offset=9,
    )
    contracted = contract_degeneracies(flat)
    assert len(contracted.vertices) == 1
    assert contracted.vertices[0].leaves == frozenset({1, 2, 3, 4})
    assert contracted.bipartitions == ()
    assert contracted.lengths == (13, 9)
    assert contracted.degree(0) == 4
    assert contracted.is_caterpillar

    with pytest.raises(ConsistencyError):
        contract_degeneracies(_tree45(edge_length=0))
