"""
Kappa side: Q K^d_n, the partition/subset pairing, phi, alpha, beta, and
the parity maps odd_n / even_n on oriented bipartitions.

A subset T of [n] stands for the class kappa_d^T, so a `KVector` is a formal
combination of kappa pullbacks.  The pairing <P, T> is 1 when every block
of P meets T and 0 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from m0nkappa import faults
from m0nkappa.chowq import SPVector, build_quotient, partitions_sp
from m0nkappa.errors import InputError
from m0nkappa.exactlin import FormalSum, SparseMatrix
from m0nkappa.setcomb import (
    OrientedBipartition,
    SetPartition,
    Subset,
    _members,
    enumerate_kappa_index,
    kappa_sizes,
)


@dataclass(frozen=True)
class KVector:
    """Element of Q K^d_n; labels are subsets T with |T| >= d+3 of matching parity."""

    n: int
    d: int
    sum: FormalSum

    def __post_init__(self):
        lo = self.d + 3
        for t in self.sum.labels():
            if not isinstance(t, Subset) or t.n != self.n or len(t) < lo or (len(t) - lo) % 2:
                raise InputError(f"{t!r} is not in K^{self.d}_{self.n}")

    @classmethod
    def of(cls, t: Subset, d: int, coeff=1) -> "KVector":
        return cls(t.n, d, FormalSum.single(t, coeff))

    def __add__(self, other: "KVector") -> "KVector":
        if (self.n, self.d) != (other.n, other.d):
            raise InputError("vectors live in different spaces")
        return KVector(self.n, self.d, self.sum + other.sum)

    def __sub__(self, other: "KVector") -> "KVector":
        return self + other * -1

    def __mul__(self, c) -> "KVector":
        return KVector(self.n, self.d, self.sum * c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.sum)


@dataclass(frozen=True)
class ParityVector:
    """Element of Q E_n (parity 'even', empty set allowed) or Q O_n ('odd')."""

    n: int
    parity: str
    sum: FormalSum

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise InputError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        r = 0 if self.parity == "even" else 1
        for t in self.sum.labels():
            if not isinstance(t, Subset) or t.n != self.n or len(t) % 2 != r:
                raise InputError(f"{t!r} is not an {self.parity} subset of [{self.n}]")

    def __add__(self, other: "ParityVector") -> "ParityVector":
        if (self.n, self.parity) != (other.n, other.parity):
            raise InputError("vectors live in different spaces")
        return ParityVector(self.n, self.parity, self.sum + other.sum)

    def __sub__(self, other: "ParityVector") -> "ParityVector":
        return self + other * -1

    def __mul__(self, c) -> "ParityVector":
        return ParityVector(self.n, self.parity, self.sum * c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.sum)


@lru_cache(maxsize=64)
def _fault_entry(n: int, d: int, index: int) -> tuple[SetPartition, Subset] | None:
    ps, ts = partitions_sp(n, d), enumerate_kappa_index(n, d)
    if not ps or not ts:
        return None
    return ps[index % len(ps)], ts[0]


def _faulted(p: SetPartition) -> tuple[SetPartition, Subset] | None:
    fault = faults.active()
    if fault is None or fault.kind != "pairing-entry":
        return None
    d = p.num_blocks - 3
    if not fault.hits("pairing-entry", p.n, d):
        return None
    entry = _fault_entry(p.n, d, fault.index)
    if entry is None or entry[0] != p:
        return None
    return entry


def pair(p: SetPartition, t: Subset) -> int:
    """<p, t>: 1 if every block of p meets t, else 0."""
    if p.n != t.n:
        raise InputError(f"ground sets differ: {p.n} vs {t.n}")
    tm = t.mask
    val = 1 if all(bm & tm for bm in p.block_masks()) else 0
    entry = _faulted(p)
    if entry is not None and entry[1] == t:
        val = 1 - val
    return val


def _submasks(mask: int) -> list[int]:
    """Nonempty submasks of ``mask``."""
    out = []
    s = mask
    while s:
        out.append(s)
        s = (s - 1) & mask
    return out


@lru_cache(maxsize=1 << 14)
def _compatible(p: SetPartition) -> tuple[Subset, ...]:
    """All T meeting every block of p, with |T| of the parity of |p|.

    Such T pick a nonempty piece of each block, so |T| >= |p| holds
    automatically and only the parity has to be filtered.
    """
    want = p.num_blocks % 2
    out = []
    for choice in product(*(_submasks(m) for m in p.block_masks())):
        tm = 0
        for c in choice:
            tm |= c
        if tm.bit_count() % 2 == want:
            out.append(Subset(p.n, _members(tm)))
    out.sort()
    return tuple(out)


def _phi_partition(p: SetPartition) -> FormalSum:
    terms = dict.fromkeys(_compatible(p), 1)
    entry = _faulted(p)
    if entry is not None:
        t = entry[1]
        if t in terms:
            del terms[t]
        else:
            terms[t] = 1
    return FormalSum(terms)


def phi_tilde(v: SPVector) -> KVector:
    """phi~(P) = sum over T in K^d_n of <P, T> T, extended linearly."""
    if v.d < -1:
        raise InputError("phi~ is defined for d >= -1")
    return KVector(v.n, v.d, v.sum.map_labels(_phi_partition))


def phi_tilde_naive(v: SPVector) -> KVector:
    """Same map by the double loop over SP x K^d_n; used as a cross-check."""
    ks = enumerate_kappa_index(v.n, v.d)
    acc = FormalSum()
    for p, c in v.sum.items():
        acc = acc + FormalSum({t: c for t in ks if pair(p, t)})
    return KVector(v.n, v.d, acc)


def _check_cell(n: int, d: int) -> None:
    if n < 4 or not 1 <= d <= n - 3:
        raise InputError(f"need n >= 4 and 1 <= d <= n-3, got n={n}, d={d}")


def phi_matrix(n: int, d: int) -> SparseMatrix:
    """Matrix of phi: Q_{d,n} -> Q K^d_n, one row per quotient basis partition."""
    _check_cell(n, d)
    q = build_quotient(n, d)
    rows = [_phi_partition(p) for p in q.basis]
    return SparseMatrix(enumerate_kappa_index(n, d), rows, q.basis)


def pairing_matrix(n: int, d: int, quotient: bool = True) -> SparseMatrix:
    """M[P, T] = <P, T> for P in the quotient basis (or all of SP_{d,n}), T in K^d_n."""
    _check_cell(n, d)
    rows_index = build_quotient(n, d).basis if quotient else tuple(partitions_sp(n, d))
    ks = enumerate_kappa_index(n, d)
    rows = [FormalSum({t: 1 for t in ks if pair(p, t)}) for p in rows_index]
    return SparseMatrix(ks, rows, rows_index)


def _alpha_label(t: Subset) -> Subset:
    return Subset(t.n + 1, t.members + (t.n + 1,))


def _beta_label(t: Subset):
    if t.members and t.members[-1] == t.n:
        return None
    return Subset(t.n - 1, t.members)


def alpha(v):
    """T -> T u {n+1}: K^d_n -> K^{d+1}_{n+1}, E_n -> O_{n+1}, O_n -> E_{n+1}."""
    s = v.sum.map_labels(_alpha_label)
    if isinstance(v, KVector):
        return KVector(v.n + 1, v.d + 1, s)
    if isinstance(v, ParityVector):
        return ParityVector(v.n + 1, "odd" if v.parity == "even" else "even", s)
    raise InputError(f"alpha is not defined on {type(v).__name__}")


def beta(v):
    """T -> T if n+1 is not in T, else 0; lowers the ground set from n+1 to n."""
    if v.n < 1:
        raise InputError("beta needs a ground set of size at least 1")
    s = v.sum.map_labels(_beta_label)
    if isinstance(v, KVector):
        return KVector(v.n - 1, v.d, s)
    if isinstance(v, ParityVector):
        return ParityVector(v.n - 1, v.parity, s)
    raise InputError(f"beta is not defined on {type(v).__name__}")


def _parity_sum(b: OrientedBipartition, r: int, sign_first: int, sign_second: int) -> FormalSum:
    acc: dict = {}
    for part, sign in ((b.first, sign_first), (b.second, sign_second)):
        mask = 0
        for x in part:
            mask |= 1 << (x - 1)
        for s in _submasks(mask) + [0]:
            if s.bit_count() % 2 == r:
                t = Subset(b.n, _members(s))
                acc[t] = acc.get(t, 0) + sign
    return FormalSum(acc)


def _bipartition_map(x, n: int | None, r: int, sign_second: int, parity: str) -> ParityVector:
    if isinstance(x, OrientedBipartition):
        return ParityVector(x.n, parity, _parity_sum(x, r, -1, sign_second))
    if isinstance(x, FormalSum):
        if n is None:
            if not x:
                raise InputError("n is required for the zero vector")
            n = next(iter(x.labels())).n
        s = x.map_labels(lambda b: _parity_sum(b, r, -1, sign_second))
        return ParityVector(n, parity, s)
    raise InputError(f"expected a bipartition or a formal sum of them, got {type(x).__name__}")


def odd_map(x, n: int | None = None) -> ParityVector:
    """odd_n(P1, P2) = -sum_{T in P1, |T| odd} T + sum_{T in P2, |T| odd} T."""
    return _bipartition_map(x, n, 1, +1, "odd")


def even_map(x, n: int | None = None) -> ParityVector:
    """even_n(P1, P2) = -sum_{T in P1, |T| even} T - sum_{T in P2, |T| even} T.

    The empty set is a subset of both parts, so it appears with coefficient -2.
    """
    return _bipartition_map(x, n, 0, -1, "even")


def gamma_F(b: OrientedBipartition) -> FormalSum:
    """(P1 u {n+1}, P2) - (P1, P2 u {n+1}) in Q F_{n+1}."""
    m = b.n + 1
    return FormalSum({
        OrientedBipartition(m, b.first + (m,), b.second): 1,
        OrientedBipartition(m, b.first, b.second + (m,)): -1,
    })


def gamma_SP(b: OrientedBipartition) -> SPVector:
    """{P1 u {n+1}, P2} - {P1, P2 u {n+1}} in Q SP_{-1,n+1}.

    For b = ([n], {}) the first term is not a 2-block partition; it is the
    ([n+1], {}) summand of Q F_{n+1}, which is dropped here.
    """
    m = b.n + 1
    terms = {SetPartition(m, (b.first, b.second + (m,))): -1}
    if b.second:
        terms[SetPartition(m, (b.first + (m,), b.second))] = 1
    return SPVector(m, -1, FormalSum(terms))


def bipartition_pushforward(b: OrientedBipartition) -> OrientedBipartition:
    """Delete n+1 from whichever side holds it."""
    if b.n < 2:
        raise InputError("need a bipartition of [n+1] with n >= 1")
    top = b.n
    return OrientedBipartition(top - 1, tuple(x for x in b.first if x != top), tuple(x for x in b.second if x != top))


def bipartition_pushforward_sum(v: FormalSum) -> FormalSum:
    return v.map_labels(bipartition_pushforward)
