from __future__ import annotations

from itertools import chain, combinations

import pytest
from hypothesis import given, strategies as st

from m0nkappa import faults
from m0nkappa.chowq import SPVector, partitions_sp, relation_generators
from m0nkappa.errors import InputError
from m0nkappa.exactlin import FormalSum, rank
from m0nkappa.kappa import (
    KVector,
    ParityVector,
    alpha,
    beta,
    bipartition_pushforward,
    even_map,
    gamma_F,
    gamma_SP,
    odd_map,
    pair,
    pairing_matrix,
    phi_matrix,
    phi_tilde,
    phi_tilde_naive,
)
from m0nkappa.setcomb import OrientedBipartition, SetPartition, Subset, enumerate_bipartitions, enumerate_kappa_index


def powerset(xs):
    return chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))


def parity_oracle(b: OrientedBipartition, r: int, sign_second: int) -> FormalSum:
    acc = FormalSum()
    for part, sign in ((b.first, -1), (b.second, sign_second)):
        for s in powerset(part):
            if len(s) % 2 == r:
                acc = acc + FormalSum({Subset.of(b.n, s): sign})
    return acc


cells = st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(-1, n - 3)))


@given(cells, st.data())
def test_phi_tilde_matches_double_loop(cell, data):
    n, d = cell
    p = data.draw(st.sampled_from(partitions_sp(n, d)))
    v = SPVector.of(p, 3)
    assert phi_tilde(v) == phi_tilde_naive(v)
    for t in phi_tilde(SPVector.of(p)).sum.labels():
        assert all(set(b) & set(t.members) for b in p.blocks)


def test_pairing_definition():
    p = SetPartition.decode("1,2|3|4|5")
    assert pair(p, Subset.of(5, [1, 3, 4, 5])) == 1
    assert pair(p, Subset.of(5, [1, 2, 3, 4])) == 0
    with pytest.raises(InputError):
        pair(p, Subset.of(4, [1, 2, 3, 4]))


@pytest.mark.parametrize("n", range(1, 7))
def test_parity_maps_against_definition(n):
    for b in enumerate_bipartitions(n):
        assert odd_map(b).sum == parity_oracle(b, 1, +1)
        assert even_map(b).sum == parity_oracle(b, 0, -1)


def test_base_values():
    b1 = OrientedBipartition(1, (1,), ())
    assert str(odd_map(b1).sum) == "-[1]"
    assert even_map(b1).sum == FormalSum({Subset(1, ()): -2})
    b2 = OrientedBipartition(2, (1,), (2,))
    assert str(odd_map(b2).sum) == "-[1] + [2]"
    assert phi_tilde(SPVector.of(SetPartition.decode("1|2"))).sum == FormalSum.single(Subset.of(2, [1, 2]))
    assert phi_tilde(SPVector.of(SetPartition.decode("1|2|3"))).sum == FormalSum.single(Subset.of(3, [1, 2, 3]))


def test_n2_left_square_example():
    b = OrientedBipartition(2, (1,), (2,))
    assert phi_tilde(gamma_SP(b)).sum == alpha(odd_map(b)).sum


def test_gamma_sp_drops_degenerate_term():
    b = OrientedBipartition(2, (1, 2), ())
    assert gamma_SP(b).sum == FormalSum({SetPartition.decode("1,2|3"): -1})
    assert len(gamma_F(b)) == 2


@pytest.mark.parametrize("n,d", [(4, 1), (5, 1), (6, 2), (7, 1)])
def test_alpha_beta(n, d):
    for t in enumerate_kappa_index(n, d):
        up = alpha(KVector.of(t, d))
        assert (up.n, up.d) == (n + 1, d + 1)
        assert not beta(up)
    for t in enumerate_kappa_index(n + 1, d + 1):
        down = beta(KVector.of(t, d + 1))
        assert bool(down) == (n + 1 not in t)


def test_alpha_flips_parity():
    v = odd_map(OrientedBipartition(3, (1, 2), (3,)))
    assert alpha(v).parity == "even"
    assert beta(alpha(v)).sum == FormalSum()


def test_bipartition_pushforward():
    b = OrientedBipartition.decode("1,4||2,3")
    assert bipartition_pushforward(b) == OrientedBipartition.decode("1||2,3")


@pytest.mark.parametrize("n,d", [(5, 1), (6, 1), (6, 2), (7, 2)])
def test_phi_kills_relations(n, d):
    for g in relation_generators(n, d):
        assert not phi_tilde(g)


@pytest.mark.parametrize("n,d", [(4, 1), (6, 1), (7, 2), (7, 4)])
def test_phi_and_pairing_matrices(n, d):
    m, p = phi_matrix(n, d), pairing_matrix(n, d)
    assert m == p
    assert m.shape[0] == m.shape[1] == rank(m)


def test_pairing_fault_flips_one_entry():
    # the fault hits the first partition of SP_{2,6}, which need not be a quotient basis element
    clean = pairing_matrix(6, 2, quotient=False)
    with faults.injected(faults.Fault("pairing-entry", n=6, d=2)):
        bad = pairing_matrix(6, 2, quotient=False)
        bad_phi = phi_tilde(SPVector.of(bad.row_labels[0])).sum
    diff = [(i, t) for i, (a, b) in enumerate(zip(clean.rows, bad.rows)) for t in clean.universe if a[t] != b[t]]
    assert [i for i, _ in diff] == [0]
    assert bad.rows[0] == bad_phi


def test_vector_validation():
    with pytest.raises(InputError):
        KVector(5, 1, FormalSum.single(Subset.of(5, [1, 2, 3])))
    with pytest.raises(InputError):
        ParityVector(3, "odd", FormalSum.single(Subset.of(3, [1, 2])))
    with pytest.raises(InputError):
        ParityVector(3, "neither", FormalSum())
    with pytest.raises(InputError):
        phi_matrix(5, 3)
