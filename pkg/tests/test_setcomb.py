from __future__ import annotations

from itertools import combinations, permutations
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from m0nkappa.errors import InputError
from m0nkappa.setcomb import (
    OrientedBipartition,
    Permutation,
    SetPartition,
    Subset,
    act,
    character_fixed_points,
    enumerate_bipartitions,
    enumerate_kappa_index,
    enumerate_parity_subsets,
    enumerate_partitions,
    stirling2,
)


def stirling_explicit(n: int, k: int) -> int:
    return sum((-1) ** (k - j) * comb(k, j) * j**n for j in range(k + 1)) // factorial(k)


@pytest.mark.parametrize("n", range(1, 9))
def test_partition_enumeration(n):
    total = 0
    for k in range(1, n + 1):
        ps = enumerate_partitions(n, k)
        assert len(ps) == stirling2(n, k) == stirling_explicit(n, k)
        assert len(set(ps)) == len(ps)
        assert ps == sorted(ps)
        for p in ps:
            assert p.num_blocks == k
            assert sorted(x for b in p.blocks for x in b) == list(range(1, n + 1))
        total += len(ps)
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    assert total == bell[n]


def test_partition_validation():
    with pytest.raises(InputError):
        SetPartition(3, ((1, 2),))
    with pytest.raises(InputError):
        SetPartition(3, ((1, 2), (2, 3)))
    with pytest.raises(InputError):
        enumerate_partitions(4, 5)


def test_encodings():
    p = SetPartition.of(5, [[3, 1], [2], [5, 4]])
    assert p.encode() == "1,3|2|4,5"
    assert SetPartition.decode("1,3|2|4,5") == p
    b = OrientedBipartition.of(4, [2, 4], [1, 3])
    assert b.first == (1, 3)
    assert b.encode() == "1,3||2,4"
    assert OrientedBipartition.decode(b.encode(), 4) == b
    assert Subset.decode(3, "") == Subset(3, ())
    assert Permutation.decode("2,1,3,4").encode() == "2,1,3,4"


perms = st.integers(1, 7).flatmap(lambda n: st.permutations(range(1, n + 1)).map(lambda xs: Permutation(n, tuple(xs))))


@given(perms, st.data())
def test_action_is_a_group_action(g, data):
    n = g.n
    h = Permutation(n, tuple(data.draw(st.permutations(range(1, n + 1)))))
    k = data.draw(st.integers(1, n))
    p = data.draw(st.sampled_from(enumerate_partitions(n, k)))
    t = Subset.of(n, data.draw(st.sets(st.integers(1, n))))
    for x in (p, t):
        assert act(g * h, x) == act(g, act(h, x))
        assert act(g.inverse(), act(g, x)) == x
        assert act(Permutation.identity(n), x) == x
    assert SetPartition.decode(p.encode(), n) == p
    assert Subset.decode(n, t.encode()) == t


@given(perms)
def test_cycle_type_sums_to_n(g):
    assert sum(g.cycle_type()) == g.n
    assert Permutation.from_cycles(g.n, *[]).images == tuple(range(1, g.n + 1))


@pytest.mark.parametrize("n", range(1, 9))
def test_subset_families(n):
    for d in range(-3, n - 2):
        ks = enumerate_kappa_index(n, d)
        want = sum(comb(n, k) for k in range(d + 3, n + 1) if (k - d - 3) % 2 == 0)
        assert len(ks) == want
        assert all(len(t) >= d + 3 and (len(t) - d - 3) % 2 == 0 for t in ks)
    assert len(enumerate_parity_subsets(n, "odd")) == 2 ** (n - 1)
    assert len(enumerate_parity_subsets(n, "even")) == 2 ** (n - 1)
    bs = enumerate_bipartitions(n)
    assert len(bs) == 2 ** (n - 1) == len(set(bs))
    assert all(1 in b.first for b in bs)


def test_kappa_index_example():
    # K^1_6: sizes 4 and 6
    assert len(enumerate_kappa_index(6, 1)) == comb(6, 4) + comb(6, 6) == 16


@pytest.mark.parametrize("n", range(4, 7))
def test_character_is_fixed_point_count(n):
    for d in range(1, n - 2):
        ks = enumerate_kappa_index(n, d)
        for images in permutations(range(1, n + 1)):
            g = Permutation(n, images)
            brute = sum(1 for t in ks if act(g, t) == t)
            assert character_fixed_points(n, d, g) == brute


def test_character_example():
    assert character_fixed_points(4, 1, Permutation.decode("2,1,3,4")) == 1
    assert character_fixed_points(6, 1, Permutation.identity(6)) == 16


def test_subsets_of_combinations_oracle():
    n = 5
    got = {t.members for t in enumerate_kappa_index(n, -1)}
    want = {c for k in (2, 4) for c in combinations(range(1, n + 1), k)}
    assert got == want


def test_stirling_recurrence_up_to_ten():
    counts = {(n, k): len(enumerate_partitions(n, k)) for n in range(1, 11) for k in range(1, n + 1)}
    for (n, k), c in counts.items():
        if n == 1:
            assert c == 1
            continue
        assert c == k * counts.get((n - 1, k), 0) + counts.get((n - 1, k - 1), 0)


@pytest.mark.parametrize("n", range(2, 10))
def test_kappa_index_pascal_split(n):
    for d in range(-1, n - 2):
        assert len(enumerate_kappa_index(n, d)) == len(enumerate_kappa_index(n - 1, d - 1)) + len(enumerate_kappa_index(n - 1, d))


@given(perms)
def test_act_permutes_enumerations(g):
    n = g.n
    for k in range(1, n + 1):
        ps = enumerate_partitions(n, k)
        moved = [act(g, p) for p in ps]
        assert sorted(moved) == ps
        assert all(sorted(map(len, a.blocks)) == sorted(map(len, b.blocks)) for a, b in zip(ps, moved))
    for d in range(-1, n - 2):
        ks = enumerate_kappa_index(n, d)
        moved = [act(g, t) for t in ks]
        assert sorted(moved) == ks
        assert [len(t) for t in moved] == [len(t) for t in ks]
    bs = enumerate_bipartitions(n)
    assert sorted(act(g, b) for b in bs) == bs
