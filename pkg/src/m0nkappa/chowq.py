"""
Free spaces Q SP_{d,n}, the relation subspace R_{d,n}, the quotient Q_{d,n},
and the lifted forgetful operators.

SP_{d,n} is the set of partitions of [n] into d+3 blocks.  R_{d,n} is spanned
by the four-term relations built from partitions with d+4 blocks; Q_{d,n} is
the quotient.  Quotient classes are held as canonical reduced
representatives: combinations of the non-pivot partitions of the echelonised
relations, which form the quotient basis.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from m0nkappa import faults
from m0nkappa.errors import InputError
from m0nkappa.exactlin import FormalSum, SparseMatrix, Subspace, echelonize
from m0nkappa.setcomb import Permutation, SetPartition, act, enumerate_partitions


def _check_sp(n: int, d: int, terms: FormalSum) -> None:
    for p in terms.labels():
        if not isinstance(p, SetPartition) or p.n != n or p.num_blocks != d + 3:
            raise InputError(f"{p!r} is not a partition of [{n}] into {d + 3} blocks")


@dataclass(frozen=True)
class SPVector:
    """Element of Q SP_{d,n} (d >= -1)."""

    n: int
    d: int
    sum: FormalSum

    def __post_init__(self):
        if self.d < -1:
            raise InputError("SP vectors need d >= -1")
        _check_sp(self.n, self.d, self.sum)

    @classmethod
    def of(cls, p: SetPartition, coeff=1) -> "SPVector":
        return cls(p.n, p.num_blocks - 3, FormalSum.single(p, coeff))

    @classmethod
    def zero(cls, n: int, d: int) -> "SPVector":
        return cls(n, d, FormalSum())

    def _same(self, other: "SPVector") -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise InputError("vectors live in different spaces")

    def __add__(self, other: "SPVector") -> "SPVector":
        self._same(other)
        return SPVector(self.n, self.d, self.sum + other.sum)

    def __sub__(self, other: "SPVector") -> "SPVector":
        self._same(other)
        return SPVector(self.n, self.d, self.sum - other.sum)

    def __neg__(self) -> "SPVector":
        return SPVector(self.n, self.d, -self.sum)

    def __mul__(self, c) -> "SPVector":
        return SPVector(self.n, self.d, self.sum * c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.sum)

    def __str__(self):
        return str(self.sum)


def partitions_sp(n: int, d: int) -> list[SetPartition]:
    """SP_{d,n}; empty when d+3 exceeds n."""
    parts = d + 3
    if parts > n:
        return []
    return enumerate_partitions(n, parts)


def _merge(blocks: list[tuple[int, ...]], i: int, j: int) -> list[tuple[int, ...]]:
    merged = tuple(sorted(blocks[i] + blocks[j]))
    return [b for k, b in enumerate(blocks) if k not in (i, j)] + [merged]


def relation_generators(n: int, d: int) -> list[SPVector]:
    """Four-term generators of R_{d,n}, without duplicates.

    For a partition with d+4 blocks and an ordered choice (P1, P2, P3, P4) of
    distinct blocks the generator is s(12|34) - s(13|24), where s(ab|cd)
    is the sum of the two partitions obtained by merging Pa with Pb or Pc
    with Pd.  Every ordered choice gives such a difference of two of the
    three pairings of {P1..P4}, so each 4-subset of blocks is visited once
    and the six ordered pairs of pairings are emitted.
    """
    if n < 4 or not 1 <= d <= n - 4:
        raise InputError(f"relations need n >= 4 and 1 <= d <= n-4, got n={n}, d={d}")
    out: list[FormalSum] = []
    seen = set()
    for p in enumerate_partitions(n, d + 4):
        blocks = list(p.blocks)
        for quad in combinations(range(d + 4), 4):
            a, b, c, e = quad
            pair_sums = []
            for (x, y), (z, w) in (((a, b), (c, e)), ((a, c), (b, e)), ((a, e), (b, c))):
                one = SetPartition.of(n, _merge(blocks, x, y))
                two = SetPartition.of(n, _merge(blocks, z, w))
                pair_sums.append(FormalSum({one: 1, two: 1}))
            for i in range(3):
                for j in range(3):
                    if i == j:
                        continue
                    r = pair_sums[i] - pair_sums[j]
                    if r not in seen:
                        seen.add(r)
                        out.append(r)
    fault = faults.active()
    if fault is not None and fault.hits("relation-sign", n, d) and out:
        k = fault.index % len(out)
        label, c = out[k].sorted_items()[0]
        out[k] = out[k] - FormalSum.single(label, 2 * c)
    return [SPVector(n, d, r) for r in out]


@dataclass(frozen=True)
class QuotientSpace:
    """Q_{d,n} = Q SP_{d,n} / R_{d,n}, with basis the non-pivot partitions."""

    n: int
    d: int
    relations: Subspace
    num_generators: int

    @property
    def partitions(self) -> tuple[SetPartition, ...]:
        return self.relations.universe

    @property
    def dimension(self) -> int:
        return len(self.relations.universe) - self.relations.dim

    @property
    def rank_relations(self) -> int:
        return self.relations.dim

    @property
    def basis(self) -> tuple[SetPartition, ...]:
        return tuple(self.relations.free_labels())

    def reduce(self, v: SPVector | FormalSum | SetPartition) -> FormalSum:
        """Canonical representative, a combination of basis partitions."""
        if isinstance(v, SetPartition):
            v = FormalSum.single(v)
        elif isinstance(v, SPVector):
            if (v.n, v.d) != (self.n, self.d):
                raise InputError(f"vector of SP_{{{v.d},{v.n}}} reduced in Q_{{{self.d},{self.n}}}")
            v = v.sum
        return self.relations.reduce(v)

    def is_zero(self, v) -> bool:
        return not self.reduce(v)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "dim": self.dimension,
            "num_partitions": len(self.partitions),
            "rank_relations": self.rank_relations,
        }


_cache: dict[tuple, QuotientSpace] = {}
_cache_lock = threading.Lock()


def build_quotient(n: int, d: int) -> QuotientSpace:
    """Echelonise R_{d,n} inside Q SP_{d,n}.

    Accepts d beyond n-3, where SP_{d,n} is empty and the quotient is the
    zero space; this is the right-hand end of the short exact sequences.
    Built spaces are cached per (n, d) and active fault.
    """
    if n < 4 or d < 1:
        raise InputError(f"quotients need n >= 4 and d >= 1, got n={n}, d={d}")
    key = (n, d, faults.active())
    q = _cache.get(key)
    if q is not None:
        return q
    universe = partitions_sp(n, d)
    gens = relation_generators(n, d) if d <= n - 4 else []
    rel = echelonize((g.sum for g in gens), universe)
    q = QuotientSpace(n, d, rel, len(gens))
    with _cache_lock:
        return _cache.setdefault(key, q)


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def _push_label(p: SetPartition):
    top = p.n
    out = []
    for b in p.blocks:
        if b[-1] == top:
            if len(b) == 1:
                return None
            b = b[:-1]
        out.append(b)
    return SetPartition(top - 1, tuple(out))


def _pull_label(p: SetPartition) -> SetPartition:
    return SetPartition(p.n + 1, p.blocks + ((p.n + 1,),))


def pushforward_lift(v: SPVector) -> SPVector:
    """Forget mark n+1: kill partitions with the block {n+1}, else delete n+1."""
    if v.n < 2:
        raise InputError("pushforward needs a ground set of size at least 2")
    return SPVector(v.n - 1, v.d, v.sum.map_labels(_push_label))


def pullback_lift(v: SPVector) -> SPVector:
    """Adjoin the singleton block {n+1}."""
    return SPVector(v.n + 1, v.d + 1, v.sum.map_labels(_pull_label))


def quotient_map_matrix(op: str, n: int, d: int) -> SparseMatrix:
    """Matrix of an induced map between quotients, one row per source basis element.

    ``op="push"``: Q_{d,n+1} -> Q_{d,n};  ``op="pull"``: Q_{d,n} -> Q_{d+1,n+1}.
    Rows hold the canonical representative of the image in the target.  As a
    linear map the matrix acts on the left, so the kernel of the map is the
    kernel of the transpose.
    """
    if op == "push":
        source, target = build_quotient(n + 1, d), build_quotient(n, d)
        f = _push_label
    elif op == "pull":
        source, target = build_quotient(n, d), build_quotient(n + 1, d + 1)
        f = _pull_label
    else:
        raise InputError(f"op must be 'push' or 'pull', got {op!r}")
    rows = [target.reduce(FormalSum.single(p).map_labels(f)) for p in source.basis]
    return SparseMatrix(target.basis, rows, source.basis)


def action_matrix(g: Permutation, n: int, d: int) -> SparseMatrix:
    """Matrix of g acting on Q_{d,n}, one row per basis element."""
    q = build_quotient(n, d)
    rows = [q.reduce(act(g, p)) for p in q.basis]
    return SparseMatrix(q.basis, rows, q.basis)


def trace(m: SparseMatrix):
    if m.row_labels is None:
        raise InputError("trace needs row labels")
    return sum((r[label] for label, r in zip(m.row_labels, m.rows)), 0)


def generator_sums(gens: Iterable[SPVector]) -> list[FormalSum]:
    return [g.sum for g in gens]
