"""
Stable n-marked trees (dual graphs of boundary strata of M_{0,n}-bar).

A tree has vertices, edges and legs; leg i carries mark i.  Valence counts
incident edges plus legs, and stability means every vertex has valence at
least 3.  The stratum of a tree has dimension sum(val(v) - 3).

Trees compare up to isomorphism fixing the legs.  The canonical form roots
the tree at the vertex carrying mark 1 and orders children by the smallest
mark in their subtree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from m0nkappa.errors import InputError
from m0nkappa.setcomb import Permutation, SetPartition, enumerate_partitions

MAX_ENUMERATION_MARKS = 8


class TreeType(Enum):
    POINT = "point"
    TYPE_I = "type_i"
    TYPE_II = "type_ii"


class _Collapsed:
    """Result of forgetting a mark when the image stratum has smaller dimension."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "COLLAPSED"


COLLAPSED = _Collapsed()


@dataclass(frozen=True)
class StratumClass:
    """Class of a stratum in Q_{d,n}: zero, or the partition of a Type I tree."""

    partition: SetPartition | None = None

    def __post_init__(self):
        if self.partition is not None and self.partition.num_blocks < 4:
            raise InputError("a nonzero stratum class needs a partition with at least 4 parts")

    @property
    def is_zero(self) -> bool:
        return self.partition is None

    def __repr__(self):
        return "StratumClass(0)" if self.partition is None else f"StratumClass({self.partition.encode()})"


ZERO = StratumClass()


class MarkedTree:
    """A tree with legs marked 1..n.

    Construction checks that the graph is a tree and that the legs are
    exactly 1..n.  Stability is checked by the operations that need it, so
    that intermediate unstable trees can still be represented.
    """

    __slots__ = ("vertices", "edges", "legs", "_adj", "_legs_at", "_canon")

    def __init__(self, vertices: Iterable[int], edges: Iterable[Iterable[int]], legs: Mapping[int, int]):
        self.vertices = tuple(sorted(set(vertices)))
        self.edges = tuple(sorted(tuple(sorted(e)) for e in edges))
        self.legs = dict(sorted((int(m), v) for m, v in legs.items()))
        self._canon = None
        vs = set(self.vertices)
        if not vs:
            raise InputError("a tree needs at least one vertex")
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if len(e) != 2 or e[0] == e[1] or not set(e) <= vs:
                raise InputError(f"bad edge {e}")
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
        if len(set(self.edges)) != len(self.edges):
            raise InputError("repeated edge")
        if len(self.edges) != len(self.vertices) - 1:
            raise InputError("|edges| must equal |vertices| - 1")
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if seen != vs:
            raise InputError("graph is not connected")
        if sorted(self.legs) != list(range(1, len(self.legs) + 1)):
            raise InputError(f"marks must be exactly 1..n, got {sorted(self.legs)}")
        legs_at: dict[int, list[int]] = {v: [] for v in self.vertices}
        for m, v in self.legs.items():
            if v not in vs:
                raise InputError(f"leg {m} attached to unknown vertex {v}")
            legs_at[v].append(m)
        self._adj = {v: tuple(sorted(a)) for v, a in adj.items()}
        self._legs_at = {v: tuple(ls) for v, ls in legs_at.items()}

    @property
    def n(self) -> int:
        return len(self.legs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def legs_at(self, v: int) -> tuple[int, ...]:
        return self._legs_at[v]

    def valence(self, v: int) -> int:
        return len(self._adj[v]) + len(self._legs_at[v])

    def is_stable(self) -> bool:
        return all(self.valence(v) >= 3 for v in self.vertices)

    def require_stable(self) -> None:
        bad = [v for v in self.vertices if self.valence(v) < 3]
        if bad:
            raise InputError(f"unstable tree: vertices {bad} have valence < 3")

    @property
    def dimension(self) -> int:
        return sum(self.valence(v) - 3 for v in self.vertices)

    def big_vertices(self) -> list[int]:
        return [v for v in self.vertices if self.valence(v) >= 4]

    def canonical_form(self) -> tuple:
        if self._canon is None:
            root = self.legs[1] if self.legs else self.vertices[0]
            self._canon = self._canon_at(root, None)[1]
        return self._canon

    def _canon_at(self, v: int, parent: int | None) -> tuple[int, tuple]:
        kids = [self._canon_at(u, v) for u in self._adj[v] if u != parent]
        kids.sort()
        legs = self._legs_at[v]
        low = min([m for m, _ in kids] + list(legs))
        return low, (legs, tuple(k for _, k in kids))

    def __eq__(self, other):
        if not isinstance(other, MarkedTree):
            return NotImplemented
        return self.n == other.n and self.canonical_form() == other.canonical_form()

    def __hash__(self):
        return hash((self.n, self.canonical_form()))

    def __repr__(self):
        return f"MarkedTree(vertices={list(self.vertices)}, edges={[list(e) for e in self.edges]}, legs={self.legs})"

    def relabel_marks(self, g: Permutation) -> "MarkedTree":
        if g.n != self.n:
            raise InputError(f"permutation of degree {g.n} cannot act on a tree with {self.n} marks")
        return MarkedTree(self.vertices, self.edges, {g(m): v for m, v in self.legs.items()})

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "legs": {str(m): v for m, v in self.legs.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict | str) -> "MarkedTree":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], data["edges"], {int(k): v for k, v in data["legs"].items()})


def classify(t: MarkedTree) -> TreeType:
    t.require_stable()
    big = len(t.big_vertices())
    if big == 0:
        return TreeType.POINT
    return TreeType.TYPE_I if big == 1 else TreeType.TYPE_II


def partition_at_vertex(t: MarkedTree, v: int) -> SetPartition:
    """Marks grouped by connected component of the tree with v removed.

    Legs on v itself are singleton blocks, so the block count is val(v).
    """
    if v not in t._adj:
        raise InputError(f"no vertex {v}")
    blocks = [[m] for m in t.legs_at(v)]
    for u in t.neighbors(v):
        marks = []
        stack = [(u, v)]
        while stack:
            w, parent = stack.pop()
            marks.extend(t.legs_at(w))
            stack.extend((x, w) for x in t.neighbors(w) if x != parent)
        blocks.append(marks)
    if any(not b for b in blocks):
        raise InputError("a branch carries no marks; tree is not stable")
    return SetPartition.of(t.n, blocks)


def stratum_class(t: MarkedTree) -> StratumClass:
    kind = classify(t)
    if kind is TreeType.POINT:
        raise InputError("stratum classes are defined for dimension >= 1")
    if kind is TreeType.TYPE_II:
        return ZERO
    (v,) = t.big_vertices()
    return StratumClass(partition_at_vertex(t, v))


def _drop_leg(t: MarkedTree, mark: int) -> tuple[MarkedTree, bool]:
    """Remove a leg and stabilise; also report whether the dimension fell."""
    t.require_stable()
    if t.n < 4:
        raise InputError("forgetting a mark needs at least 4 marks")
    v = t.legs[mark]
    legs = {m: w for m, w in t.legs.items() if m != mark}
    if t.valence(v) >= 4:
        return MarkedTree(t.vertices, t.edges, legs), True
    others = [m for m in t.legs_at(v) if m != mark]
    nbrs = t.neighbors(v)
    vertices = [w for w in t.vertices if w != v]
    edges = [e for e in t.edges if v not in e]
    if len(nbrs) == 2:
        edges.append(nbrs)
    else:
        (u,) = nbrs
        (m,) = others
        legs[m] = u
    out = MarkedTree(vertices, edges, legs)
    # removing one leg lowers one valence by one, so one contraction suffices
    assert out.is_stable(), "stabilisation needed more than one contraction"
    return out, False


def stabilized_forget(t: MarkedTree, mark: int | None = None) -> MarkedTree:
    """The stable tree whose stratum is the image of X_t under forgetting ``mark``."""
    mark = _forget_target(t, mark)
    return _drop_leg(t, mark)[0]


def forget_mark(t: MarkedTree, mark: int | None = None):
    """Pushforward of [X_t] along the map forgetting the last mark.

    Returns the stabilised tree when dimension is preserved, and `COLLAPSED`
    when the image has smaller dimension (the pushforward is then zero).
    """
    mark = _forget_target(t, mark)
    out, dropped = _drop_leg(t, mark)
    return COLLAPSED if dropped else out


def _forget_target(t: MarkedTree, mark: int | None) -> int:
    if mark is None:
        return t.n
    if mark != t.n:
        raise InputError(f"only the last mark ({t.n}) can be forgotten, got {mark}")
    return mark


def corolla(n: int) -> MarkedTree:
    if n < 3:
        raise InputError("a corolla needs at least 3 marks")
    return MarkedTree([0], [], {m: 0 for m in range(1, n + 1)})


def type_i_tree(p: SetPartition) -> MarkedTree:
    """A Type I (or, for 3 blocks, point) tree whose central vertex yields ``p``.

    Blocks of size k >= 2 hang off the centre as trivalent caterpillars.
    """
    if p.num_blocks < 3:
        raise InputError("need at least 3 blocks")
    vertices = [0]
    edges = []
    legs = {}
    nxt = 1
    for b in p.blocks:
        if len(b) == 1:
            legs[b[0]] = 0
            continue
        parent = 0
        for i, m in enumerate(b[:-2]):
            vertices.append(nxt)
            edges.append((parent, nxt))
            legs[m] = nxt
            parent = nxt
            nxt += 1
        vertices.append(nxt)
        edges.append((parent, nxt))
        legs[b[-2]] = nxt
        legs[b[-1]] = nxt
        nxt += 1
    return MarkedTree(vertices, edges, legs)


@lru_cache(maxsize=None)
def _rooted_shapes(labels: tuple[int, ...]) -> tuple:
    """Rooted trees with leaves ``labels``, every internal node having >= 2 children.

    A shape is a leaf label (int) or a tuple of child shapes.
    """
    if len(labels) == 1:
        return (labels[0],)
    out = []
    k = len(labels)
    for parts in range(2, k + 1):
        for p in enumerate_partitions(k, parts):
            blocks = [tuple(labels[i - 1] for i in b) for b in p.blocks]
            out.extend(product(*(_rooted_shapes(b) for b in blocks)))
    return tuple(out)


def _tree_from_shape(root_mark: int, shape: tuple) -> MarkedTree:
    vertices, edges, legs = [], [], {root_mark: 0}
    counter = [0]

    def build(v: int, node: tuple) -> None:
        vertices.append(v)
        for child in node:
            if isinstance(child, int):
                legs[child] = v
            else:
                counter[0] += 1
                u = counter[0]
                edges.append((v, u))
                build(u, child)

    build(0, shape)
    return MarkedTree(vertices, edges, legs)


def enumerate_trees(n: int) -> list[MarkedTree]:
    """Every stable n-marked tree up to leg-fixing isomorphism (n <= 8).

    Trees are rooted at leg n; the rest is a rooted tree on marks 1..n-1
    whose internal nodes have at least two children.
    """
    if n < 3:
        raise InputError("stable trees need at least 3 marks")
    if n > MAX_ENUMERATION_MARKS:
        raise InputError(f"tree enumeration is limited to n <= {MAX_ENUMERATION_MARKS}")
    trees = [_tree_from_shape(n, s) for s in _rooted_shapes(tuple(range(1, n)))]
    seen = set()
    for t in trees:
        key = t.canonical_form()
        assert key not in seen, "tree enumeration produced a duplicate"
        seen.add(key)
    trees.sort(key=lambda t: (t.dimension, repr(t.canonical_form())))
    return trees


def enumerate_trees_of_dimension(n: int, d: int) -> list[MarkedTree]:
    return [t for t in enumerate_trees(n) if t.dimension == d]
