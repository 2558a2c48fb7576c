"""
Canonical subsets, set partitions and oriented bipartitions of [n] = {1..n}.

Every object is kept in one canonical form, so equality and hashing are
structural.  Ordering (used as the column order in `exactlin`) is
lexicographic on the canonical encoding: a subset compares by its sorted
member tuple, a partition by its blocks sorted by minimum.

Text encodings, which double as basis labels in JSON and CSV output::

    Subset                "1,3,4"      (empty subset: "")
    SetPartition          "1,2|3|4,5"
    OrientedBipartition   "1,3||2,4"   (second part may be empty: "1,2||")
    Permutation           "2,1,3,4"    (one-line notation)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union

from m0nkappa.errors import InputError


def _check_members(n: int, members: tuple[int, ...]) -> None:
    prev = 0
    for x in members:
        if not isinstance(x, int) or x <= prev or x > n:
            raise InputError(f"members {members} are not a strictly increasing subset of 1..{n}")
        prev = x


def _mask(members: Iterable[int]) -> int:
    m = 0
    for x in members:
        m |= 1 << (x - 1)
    return m


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True, order=True, slots=True)
class Subset:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        _check_members(self.n, self.members)

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "Subset":
        return cls(n, tuple(sorted(set(members))))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Subset":
        return cls(n, _members(mask))

    @property
    def mask(self) -> int:
        return _mask(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(self.members)

    def encode(self) -> str:
        return ",".join(map(str, self.members))

    @classmethod
    def decode(cls, n: int, text: str) -> "Subset":
        text = text.strip()
        if not text:
            return cls(n, ())
        return cls(n, _parse_ints(text))

    def __str__(self):
        return "{" + self.encode() + "}"


@dataclass(frozen=True, order=True, slots=True)
class SetPartition:
    """Unordered partition of [n] into nonempty blocks, blocks sorted by minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = 0
        last_min = 0
        for b in self.blocks:
            if not b:
                raise InputError("set partition has an empty block")
            _check_members(self.n, b)
            if b[0] <= last_min:
                raise InputError(f"blocks {self.blocks} are not sorted by minimum")
            last_min = b[0]
            m = _mask(b)
            if seen & m:
                raise InputError(f"blocks {self.blocks} overlap")
            seen |= m
        if seen != (1 << self.n) - 1:
            raise InputError(f"blocks {self.blocks} do not cover 1..{self.n}")

    @classmethod
    def of(cls, n: int, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        bs = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bs):
            raise InputError("set partition has an empty block")
        return cls(n, tuple(sorted(bs)))

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_masks(self) -> tuple[int, ...]:
        return tuple(_mask(b) for b in self.blocks)

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise InputError(f"{x} not in 1..{self.n}")

    def encode(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    @classmethod
    def decode(cls, text: str, n: int | None = None) -> "SetPartition":
        blocks = [_parse_ints(part) for part in text.strip().split("|")]
        if n is None:
            n = max((max(b) for b in blocks if b), default=0)
        return cls.of(n, blocks)

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True, order=True, slots=True)
class OrientedBipartition:
    """Ordered pair (first, second) covering [n], disjoint, with 1 in first."""

    n: int
    first: tuple[int, ...]
    second: tuple[int, ...]

    def __post_init__(self):
        _check_members(self.n, self.first)
        _check_members(self.n, self.second)
        a, b = _mask(self.first), _mask(self.second)
        if a & b or (a | b) != (1 << self.n) - 1:
            raise InputError(f"({self.first}, {self.second}) is not a bipartition of 1..{self.n}")
        if 1 not in self.first:
            raise InputError("1 must lie in the first part")

    @classmethod
    def of(cls, n: int, first: Iterable[int], second: Iterable[int]) -> "OrientedBipartition":
        f, s = tuple(sorted(first)), tuple(sorted(second))
        if 1 in s:
            f, s = s, f
        return cls(n, f, s)

    def encode(self) -> str:
        return ",".join(map(str, self.first)) + "||" + ",".join(map(str, self.second))

    @classmethod
    def decode(cls, text: str, n: int | None = None) -> "OrientedBipartition":
        left, sep, right = text.strip().partition("||")
        if not sep:
            raise InputError(f"not a bipartition encoding: {text!r}")
        f = _parse_ints(left) if left else ()
        s = _parse_ints(right) if right else ()
        if n is None:
            n = max(f + s, default=0)
        return cls(n, f, s)

    def as_partition(self) -> SetPartition | None:
        """The underlying 2-block partition, or None for ([n], {})."""
        if not self.second:
            return None
        return SetPartition(self.n, (self.first, self.second))

    def __str__(self):
        return "({" + ",".join(map(str, self.first)) + "}, {" + ",".join(map(str, self.second)) + "})"


@dataclass(frozen=True, slots=True)
class Permutation:
    """Element g of S_n in one-line notation: images[i-1] = g(i)."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.n or sorted(self.images) != list(range(1, self.n + 1)):
            raise InputError(f"{self.images} is not a permutation of 1..{self.n}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def from_images(cls, images: Iterable[int]) -> "Permutation":
        images = tuple(images)
        return cls(len(images), images)

    @classmethod
    def from_cycles(cls, n: int, *cycles: Iterable[int]) -> "Permutation":
        img = list(range(1, n + 1))
        touched = set()
        for cyc in cycles:
            cyc = list(cyc)
            for i, x in enumerate(cyc):
                if x in touched or not 1 <= x <= n:
                    raise InputError(f"bad cycle {cyc} for degree {n}")
                touched.add(x)
                img[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(n, tuple(img))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (g * h)(i) = g(h(i))."""
        if self.n != other.n:
            raise InputError("degrees differ")
        return Permutation(self.n, tuple(self.images[h - 1] for h in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, g in enumerate(self.images, 1):
            inv[g - 1] = i
        return Permutation(self.n, tuple(inv))

    def cycle_type(self) -> tuple[int, ...]:
        seen = set()
        lengths = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            k, x = 0, start
            while x not in seen:
                seen.add(x)
                x = self(x)
                k += 1
            lengths.append(k)
        return tuple(sorted(lengths, reverse=True))

    def encode(self) -> str:
        return ",".join(map(str, self.images))

    @classmethod
    def decode(cls, text: str) -> "Permutation":
        return cls.from_images(_parse_ints(text))


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise InputError(f"cannot parse integer list {text!r}") from None


Label = Union[Subset, SetPartition, OrientedBipartition]


def act(g: Permutation, x):
    """Image of a subset, partition, bipartition or marked tree under g."""
    n = getattr(x, "n", None)
    if n is not None and n != g.n:
        raise InputError(f"permutation of degree {g.n} cannot act on ground set of size {n}")
    if isinstance(x, Subset):
        return Subset(x.n, tuple(sorted(g(i) for i in x.members)))
    if isinstance(x, SetPartition):
        return SetPartition(x.n, tuple(sorted(tuple(sorted(g(i) for i in b)) for b in x.blocks)))
    if isinstance(x, OrientedBipartition):
        return OrientedBipartition.of(x.n, (g(i) for i in x.first), (g(i) for i in x.second))
    relabel = getattr(x, "relabel_marks", None)
    if relabel is not None:
        return relabel(g)
    raise InputError(f"cannot act on {type(x).__name__}")


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind by the triangular recurrence."""
    if n < 0 or k < 0:
        return 0
    row = [1] + [0] * k
    for m in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(m, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def enumerate_partitions(n: int, parts: int) -> list[SetPartition]:
    """All partitions of [n] into exactly ``parts`` blocks, canonical order.

    Generated from restricted growth strings a_1..a_n (a_1 = 0,
    a_{i+1} <= 1 + max(a_1..a_i)), pruned once too few positions remain to
    open the missing blocks.
    """
    if n < 1:
        raise InputError("n must be positive")
    if not 1 <= parts <= n:
        raise InputError(f"parts must lie in 1..{n}, got {parts}")
    out: list[SetPartition] = []
    blocks: list[list[int]] = []

    def rec(i: int) -> None:
        if i > n:
            if len(blocks) == parts:
                out.append(SetPartition(n, tuple(tuple(b) for b in blocks)))
            return
        opened = len(blocks)
        if opened + (n - i + 1) < parts:
            return
        for b in blocks:
            b.append(i)
            rec(i + 1)
            b.pop()
        if opened < parts:
            blocks.append([i])
            rec(i + 1)
            blocks.pop()

    rec(1)
    out.sort()
    return out


def enumerate_subsets(n: int, sizes: Iterable[int] | None = None) -> list[Subset]:
    if n < 0:
        raise InputError("n must be nonnegative")
    sizes = range(n + 1) if sizes is None else sizes
    out = [Subset(n, c) for k in sizes if 0 <= k <= n for c in combinations(range(1, n + 1), k)]
    out.sort()
    return out


def kappa_sizes(n: int, d: int) -> list[int]:
    lo = d + 3
    return [k for k in range(max(lo, 0), n + 1) if (k - lo) % 2 == 0]


def enumerate_kappa_index(n: int, d: int) -> list[Subset]:
    """Subsets T of [n] with |T| >= d+3 and |T| = d+3 mod 2."""
    if n < 1:
        raise InputError("n must be positive")
    if d < -3:
        raise InputError("d must be at least -3")
    return enumerate_subsets(n, kappa_sizes(n, d))


def enumerate_parity_subsets(n: int, parity: str) -> list[Subset]:
    """E_n (parity 'even', includes the empty set) or O_n (parity 'odd')."""
    if parity not in ("even", "odd"):
        raise InputError(f"parity must be 'even' or 'odd', got {parity!r}")
    r = 0 if parity == "even" else 1
    return enumerate_subsets(n, [k for k in range(n + 1) if k % 2 == r])


def enumerate_bipartitions(n: int) -> list[OrientedBipartition]:
    """All 2^(n-1) oriented bipartitions of [n] with 1 in the first part."""
    if n < 1:
        raise InputError("n must be positive")
    full = (1 << n) - 1
    out = []
    for rest in range(1 << (n - 1)):
        second = rest << 1
        out.append(OrientedBipartition(n, _members(full & ~second), _members(second)))
    out.sort()
    return out


def character_fixed_points(n: int, d: int, g: Permutation) -> int:
    """Number of T in K^d_n fixed by g.

    A subset is g-stable iff it is a union of cycles of g, so only unions of
    cycles are counted.
    """
    if g.n != n:
        raise InputError(f"permutation has degree {g.n}, expected {n}")
    if not 1 <= d <= n - 3:
        raise InputError(f"need 1 <= d <= n-3, got d={d}, n={n}")
    sizes = set(kappa_sizes(n, d))
    counts = {0: 1}
    for length in g.cycle_type():
        nxt = dict(counts)
        for s, c in counts.items():
            nxt[s + length] = nxt.get(s + length, 0) + c
        counts = nxt
    return sum(c for s, c in counts.items() if s in sizes)
