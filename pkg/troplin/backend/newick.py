"""
Newick form of a tropical line.

The tree is rooted at pq. Each spine vertex is a parenthesised group holding its leaf labels
and, except for qp, the group of the next vertex with the edge length as branch length. Rays
carry no length. The marked points go into a trailing comment block, for the 7 leaf line of
the worked example::

    (2,7,(3,(4,(6,(1,5):2):1):1):9)[&columns=1:2,p_offset=3,q_offset=18];

Lengths are written exactly, fractions as "num/den".
"""

import re
from dataclasses import dataclass
from typing import FrozenSet, Tuple

from ..core.maxplus import Scalar, as_scalar
from ..core.tree import MetricTree
from .documents import DocumentError, format_scalar

_TOKEN = re.compile(r"\s*(\(|\)|,|:|;|\[[^\]]*\]|[^(),:;\[\]\s]+)")


def to_newick(tree: MetricTree) -> str:
    """Newick string of a tree, rooted at pq, with the marks in a comment block."""

    def group(index: int) -> str:
        items = [str(k) for k in sorted(tree.vertices[index].leaves)]
        if index < len(tree.edges):
            items.append(group(index + 1) + ":" + format_scalar(tree.edges[index].length))
        return "(" + ",".join(items) + ")"

    i, j = tree.columns
    marks = (
        f"[&columns={i}:{j},p_offset={format_scalar(tree.p_offset)},"
        f"q_offset={format_scalar(tree.q_offset)}]"
    )
    return group(0) + marks + ";"


@dataclass(frozen=True)
class NewickTree:
    """Spine read back from a Newick string: leaves per vertex from pq, edge lengths, marks."""

    leaves: Tuple[FrozenSet[int], ...]
    lengths: Tuple[Scalar, ...]
    columns: Tuple[int, int]
    p_offset: Scalar
    q_offset: Scalar

    def matches(self, tree: MetricTree) -> bool:
        return (
            self.leaves == tuple(v.leaves for v in tree.vertices)
            and self.lengths == tuple(e.length for e in tree.edges)
            and self.columns == tree.columns
            and (self.p_offset, self.q_offset) == tree.offsets
        )


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        position = 0
        text = text.rstrip()
        while position < len(text):
            match = _TOKEN.match(text, position)
            if not match:
                self.fail(f"unexpected character at {position}")
            self.tokens.append(match.group(1))
            position = match.end()
        self.position = 0

    def fail(self, reason):
        raise DocumentError("Newick string", reason=reason)

    def peek(self):
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def take(self, expected=None):
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            self.fail(f"expected {expected or 'a token'}, got {token}")
        self.position += 1
        return token

    def group(self, leaves, lengths):
        self.take("(")
        here = set()
        child = False
        while True:
            if self.peek() == "(":
                if child:
                    self.fail("a spine vertex has at most one inner child")
                child = True
                self.group(leaves, lengths)
                self.take(":")
                lengths.append(self.scalar(self.take()))
            else:
                here.add(self.label(self.take()))
            if self.peek() == ",":
                self.take(",")
                continue
            self.take(")")
            break
        # children are read first, so vertices arrive from qp back to pq
        leaves.append(frozenset(here))

    def label(self, token):
        if not token.isdigit():
            self.fail(f"{token!r} is not a leaf label")
        return int(token)

    def scalar(self, token):
        try:
            return as_scalar(token)
        except ValueError:
            self.fail(f"{token!r} is not an exact length")

    def marks(self):
        token = self.take()
        if not (token.startswith("[&") and token.endswith("]")):
            self.fail("missing the [&columns=...,p_offset=...,q_offset=...] block")
        fields = dict(item.split("=", 1) for item in token[2:-1].split(",") if "=" in item)
        try:
            i, j = (int(x) for x in fields["columns"].split(":"))
            return (i, j), as_scalar(fields["p_offset"]), as_scalar(fields["q_offset"])
        except (KeyError, ValueError) as error:
            self.fail(f"bad marks block {token}: {error}")

    def parse(self) -> NewickTree:
        leaves, lengths = [], []
        self.group(leaves, lengths)
        columns, p_offset, q_offset = self.marks()
        self.take(";")
        if self.peek() is not None:
            self.fail("text after the closing ';'")
        return NewickTree(
            tuple(reversed(leaves)), tuple(reversed(lengths)), columns, p_offset, q_offset
        )


def parse_newick(text: str) -> NewickTree:
    """
    Read a Newick string written by :func:`to_newick`.

    Raises
    ----------
    DocumentError
        If the string is not a spine in that layout.
    """
    return _Parser(text).parse()
