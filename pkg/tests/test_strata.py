from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from m0nkappa.errors import InputError
from m0nkappa.setcomb import Permutation, SetPartition, act, enumerate_partitions
from m0nkappa.strata import (
    COLLAPSED,
    MarkedTree,
    TreeType,
    classify,
    corolla,
    enumerate_trees,
    enumerate_trees_of_dimension,
    forget_mark,
    partition_at_vertex,
    stabilized_forget,
    stratum_class,
    type_i_tree,
)


def splits(t: MarkedTree) -> frozenset:
    """Mark sets cut off by internal edges, normalised to the side holding 1."""
    out = set()
    for u, v in t.edges:
        side = []
        stack = [(u, v)]
        while stack:
            w, parent = stack.pop()
            side.extend(t.legs_at(w))
            stack.extend((x, w) for x in t.neighbors(w) if x != parent)
        s = frozenset(side)
        if 1 not in s:
            s = frozenset(range(1, t.n + 1)) - s
        out.add(s)
    return frozenset(out)


def compatible_split_systems(n: int) -> int:
    """Count sets of pairwise compatible splits A|B with |A|, |B| >= 2."""
    full = frozenset(range(1, n + 1))
    all_splits = [
        frozenset(c) | {1}
        for k in range(1, n - 2)
        for c in combinations(range(2, n + 1), k)
    ]

    def compatible(a, b):
        return not (a & b) or a <= b or b <= a or not ((full - a) & (full - b))

    def count(start, chosen):
        total = 1
        for i in range(start, len(all_splits)):
            s = all_splits[i]
            if all(compatible(s, c) for c in chosen):
                total += count(i + 1, chosen + [s])
        return total

    return count(0, [])


@pytest.mark.parametrize("n", range(3, 8))
def test_tree_enumeration_against_split_systems(n):
    trees = enumerate_trees(n)
    assert len(trees) == compatible_split_systems(n)
    systems = {splits(t) for t in trees}
    assert len(systems) == len(trees)
    for t in trees:
        assert t.is_stable()
        assert t.dimension == n - 3 - len(t.edges)


def test_tree_counts_up_to_eight():
    assert [len(enumerate_trees(n)) for n in range(4, 9)] == [4, 26, 236, 2752, 39208]


def test_enumerate_limits():
    with pytest.raises(InputError):
        enumerate_trees(9)
    assert [t.dimension for t in enumerate_trees_of_dimension(6, 2)] == [2] * 25


def test_classify_corolla():
    assert classify(corolla(3)) is TreeType.POINT
    assert classify(corolla(5)) is TreeType.TYPE_I
    assert stratum_class(corolla(5)).partition == SetPartition.decode("1|2|3|4|5")


def test_type_ii_example():
    # two 4-valent vertices joined by an edge
    t = MarkedTree([0, 1], [(0, 1)], {1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1})
    assert classify(t) is TreeType.TYPE_II
    assert stratum_class(t).is_zero


@pytest.mark.parametrize("n", range(4, 8))
def test_type_i_tree_round_trip(n):
    for k in range(4, n + 1):
        for p in enumerate_partitions(n, k):
            t = type_i_tree(p)
            assert classify(t) is TreeType.TYPE_I
            assert stratum_class(t).partition == p
            assert t.dimension == k - 3


def test_trees_sharing_a_partition_share_a_class():
    p = SetPartition.decode("1,2,3|4|5|6")
    same = [t for t in enumerate_trees(6) if classify(t) is TreeType.TYPE_I and stratum_class(t).partition == p]
    assert len(same) == 3  # (2*3-3)!! trivalent trees on the block {1,2,3}
    assert len(set(same)) == 3
    assert len({stratum_class(t) for t in same}) == 1


def test_corolla_forget():
    assert stabilized_forget(corolla(5)) == corolla(4)
    # the dimension drops from 2 to 1, so the pushforward of the class vanishes
    assert forget_mark(corolla(5)) is COLLAPSED


def test_forget_contracts_a_leaf_pair():
    # vertex 1 carries marks 5, 6 and is trivalent; forgetting 6 moves 5 onto vertex 0
    t = MarkedTree([0, 1], [(0, 1)], {1: 0, 2: 0, 3: 0, 4: 0, 5: 1, 6: 1})
    out = forget_mark(t)
    assert out == corolla(5)
    assert stratum_class(out).partition == SetPartition.decode("1|2|3|4|5")


def test_forget_only_last_mark():
    with pytest.raises(InputError):
        forget_mark(corolla(5), mark=2)
    with pytest.raises(InputError):
        forget_mark(corolla(3))


def test_partition_at_vertex_block_count():
    for t in enumerate_trees(6):
        for v in t.vertices:
            assert partition_at_vertex(t, v).num_blocks == t.valence(v)


trees6 = st.sampled_from(enumerate_trees(6))
perms6 = st.permutations(range(1, 7)).map(lambda xs: Permutation(6, tuple(xs)))


@given(trees6, perms6)
def test_class_is_equivariant(t, g):
    moved = t.relabel_marks(g)
    assert classify(moved) is classify(t)
    if classify(t) is TreeType.TYPE_I:
        assert stratum_class(moved).partition == act(g, stratum_class(t).partition)


@given(trees6)
def test_json_round_trip(t):
    assert MarkedTree.from_json(t.dumps()) == t
    assert MarkedTree.from_json(t.to_json()).dumps() == t.dumps()


def test_invalid_trees():
    with pytest.raises(InputError):
        MarkedTree([0, 1], [], {1: 0, 2: 1, 3: 1})
    with pytest.raises(InputError):
        MarkedTree([0], [], {1: 0, 3: 0, 4: 0})
    with pytest.raises(InputError):
        classify(MarkedTree([0, 1], [(0, 1)], {1: 0, 2: 0, 3: 1}))


@given(trees6, st.randoms(use_true_random=False))
def test_vertex_ids_do_not_matter(t, rnd):
    ids = list(t.vertices)
    new = [v + 100 for v in ids]
    rnd.shuffle(new)
    ren = dict(zip(ids, new))
    moved = MarkedTree(new, [(ren[a], ren[b]) for a, b in t.edges], {m: ren[v] for m, v in t.legs.items()})
    assert moved == t
    assert moved.canonical_form() == t.canonical_form()
    assert moved.dimension == t.dimension
    assert classify(moved) is classify(t)
