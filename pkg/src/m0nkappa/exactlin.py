"""
Exact sparse linear algebra over Q on free vector spaces with labelled bases.

Vectors are `FormalSum` objects: finite maps from hashable, totally ordered
labels to exact rationals (``int`` or ``fractions.Fraction``).  A matrix is a
list of such rows over a declared column universe; the order of the universe
is the column order used for pivoting, so results are deterministic.

Elimination is fraction-free on integer rows (rows are scaled to clear
denominators and divided by their content), and only the final reduced
echelon form is normalised to leading coefficient 1.
"""

from __future__ import annotations

import json
import numbers
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from m0nkappa.errors import InputError

Label = Hashable


def _coerce(c) -> int | Fraction:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, numbers.Rational):
        f = Fraction(c.numerator, c.denominator)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


def encode_label(label) -> str:
    if isinstance(label, str):
        return label
    enc = getattr(label, "encode", None)
    if callable(enc):
        return enc()
    return str(label)


class FormalSum:
    """A finite Q-linear combination of basis labels.

    Zero coefficients are never stored, so two sums are equal exactly when
    their stored terms agree.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc: dict = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for label, c in items:
                c = _coerce(c)
                if not c:
                    continue
                s = acc.get(label, 0) + c
                if s:
                    acc[label] = s
                else:
                    del acc[label]
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "FormalSum":
        # caller guarantees: no zero coefficients, coefficients already coerced
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def single(cls, label, coeff=1) -> "FormalSum":
        return cls({label: coeff})

    def __getitem__(self, label):
        return self._terms.get(label, 0)

    def __contains__(self, label) -> bool:
        return label in self._terms

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self):
        return self._terms.items()

    def labels(self):
        return self._terms.keys()

    def sorted_items(self, key=None) -> list:
        return sorted(self._terms.items(), key=(lambda kv: key(kv[0])) if key else (lambda kv: kv[0]))

    def __add__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        acc = dict(self._terms)
        for label, c in other._terms.items():
            s = acc.get(label, 0) + c
            if s:
                acc[label] = _coerce(s)
            else:
                acc.pop(label, None)
        return FormalSum._raw(acc)

    def __neg__(self):
        return FormalSum._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        scalar = _coerce(scalar)
        if not scalar:
            return FormalSum()
        return FormalSum._raw({k: _coerce(c * scalar) for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def map_labels(self, f: Callable[[Any], Any]) -> "FormalSum":
        """Linear extension of ``f``.

        ``f`` may return a label, ``None`` (meaning zero) or a `FormalSum`.
        """
        acc: dict = {}
        for label, c in self._terms.items():
            img = f(label)
            if img is None:
                continue
            if isinstance(img, FormalSum):
                for l2, c2 in img._terms.items():
                    acc[l2] = acc.get(l2, 0) + c * c2
            else:
                acc[img] = acc.get(img, 0) + c
        return FormalSum(acc)

    def __repr__(self):
        body = ", ".join(f"{encode_label(k)!r}: {c}" for k, c in self.sorted_items())
        return f"FormalSum({{{body}}})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for label, c in self.sorted_items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            parts.append(f"{sign} {coef}[{encode_label(label)}]")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def linear_extension(f: Callable) -> Callable[[FormalSum], FormalSum]:
    def extended(v: FormalSum) -> FormalSum:
        return v.map_labels(f)

    extended.__name__ = getattr(f, "__name__", "extended")
    extended.__doc__ = f.__doc__
    return extended


def _index_universe(universe: Sequence) -> dict:
    index = {}
    for i, label in enumerate(universe):
        if label in index:
            raise InputError(f"duplicate label in universe: {encode_label(label)}")
        index[label] = i
    return index


def _to_int_row(v: FormalSum, index: dict) -> dict[int, int]:
    den = 1
    for c in v._terms.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    row = {}
    for label, c in v._terms.items():
        try:
            j = index[label]
        except KeyError:
            raise InputError(f"label {encode_label(label)} is outside the declared universe") from None
        row[j] = int(c * den)
    return row


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            return row
    if g > 1:
        return {k: c // g for k, c in row.items()}
    return row


class _Echelon:
    """Incremental fraction-free row echelon form keyed by leading column."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def insert(self, row: dict[int, int]) -> bool:
        """Reduce ``row`` and keep it if independent; return whether rank grew."""
        pivots = self.pivots
        v = dict(row)  # private copy, mutated in place below
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _primitive(v)
                return True
            a, b = v[lead], p[lead]
            if abs(a) < abs(b):
                # smaller pivot wins the slot; the displaced row keeps reducing
                new = _primitive(v)
                pivots[lead] = new
                v, p = dict(p), new
                a, b = v[lead], p[lead]
            g = gcd(a, b)
            mv, mp = b // g, a // g
            if mv != 1:
                for k in v:
                    v[k] *= mv
            get, pop = v.get, v.pop
            for k, c in p.items():
                nc = get(k, 0) - mp * c
                if nc:
                    v[k] = nc
                else:
                    pop(k, None)
            if mv != 1:
                v = _primitive(v)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduced(self) -> dict[int, dict[int, Fraction | int]]:
        """Reduced row echelon form, leading coefficient 1."""
        done: dict[int, dict] = {}
        for p in sorted(self.pivots, reverse=True):
            row = self.pivots[p]
            lead = row[p]
            acc: dict = {}
            for k, c in row.items():
                if k == p:
                    continue
                q = done.get(k)
                if q is None:
                    acc[k] = acc.get(k, 0) + Fraction(c, lead)
                else:
                    f = Fraction(c, lead)
                    for k2, c2 in q.items():
                        if k2 != k:
                            acc[k2] = acc.get(k2, 0) - f * c2
            out = {p: 1}
            for k, c in acc.items():
                if c:
                    out[k] = _coerce(c)
            done[p] = out
        return done


class SparseMatrix:
    """Rows of `FormalSum` over one ordered column universe.

    ``row_labels`` optionally names the rows (for the matrix of a linear map,
    the domain basis element each row is the image of).
    """

    __slots__ = ("universe", "rows", "row_labels", "_index")

    def __init__(self, universe: Iterable, rows: Iterable[FormalSum], row_labels: Iterable | None = None):
        self.universe = tuple(universe)
        self.rows = tuple(rows)
        self.row_labels = None if row_labels is None else tuple(row_labels)
        self._index = _index_universe(self.universe)
        if self.row_labels is not None and len(self.row_labels) != len(self.rows):
            raise InputError("row_labels length does not match number of rows")
        for r in self.rows:
            for label in r.labels():
                if label not in self._index:
                    raise InputError(f"label {encode_label(label)} is outside the declared universe")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.universe)

    def entry(self, i: int, label):
        return self.rows[i][label]

    def to_dense(self) -> list[list]:
        return [[r[label] for label in self.universe] for r in self.rows]

    def transpose(self) -> "SparseMatrix":
        names = self.row_labels if self.row_labels is not None else tuple(range(len(self.rows)))
        cols: dict = {label: {} for label in self.universe}
        for name, r in zip(names, self.rows):
            for label, c in r.items():
                cols[label][name] = c
        return SparseMatrix(names, [FormalSum._raw(cols[label]) for label in self.universe], self.universe)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.universe, self.rows, self.row_labels) == (other.universe, other.rows, other.row_labels)

    def __repr__(self):
        return f"SparseMatrix(shape={self.shape})"

    def to_json(self) -> dict:
        out = {"universe": [encode_label(l) for l in self.universe], "rows": [_row_json(r, self.universe) for r in self.rows]}
        if self.row_labels is not None:
            out["row_labels"] = [encode_label(l) for l in self.row_labels]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict, decode: Callable[[str], Any] = str) -> "SparseMatrix":
        universe = [decode(s) for s in data["universe"]]
        rows = [_row_from_json(r, decode) for r in data["rows"]]
        row_labels = None
        if "row_labels" in data:
            row_labels = [decode(s) for s in data["row_labels"]]
        return cls(universe, rows, row_labels)


def _row_json(r: FormalSum, universe: Sequence) -> list[dict]:
    pos = {l: i for i, l in enumerate(universe)}
    out = []
    for label, c in sorted(r.items(), key=lambda kv: pos[kv[0]]):
        c = Fraction(c)
        out.append({"label": encode_label(label), "num": c.numerator, "den": c.denominator})
    return out


def _row_from_json(entries: list[dict], decode) -> FormalSum:
    return FormalSum((decode(e["label"]), Fraction(e["num"], e["den"])) for e in entries)


class Subspace:
    """A subspace held as reduced row echelon rows over an ordered universe.

    Build with `echelonize`; the rows are unique for a given span and column
    order, so equality of subspaces is equality of rows.
    """

    __slots__ = ("universe", "rows", "pivots", "_index", "_by_pivot")

    def __init__(self, universe: Sequence, rows: Sequence[FormalSum], _index: dict | None = None):
        self.universe = tuple(universe)
        self._index = _index if _index is not None else _index_universe(self.universe)
        self.rows = tuple(rows)
        self.pivots = tuple(min(r.labels(), key=self._index.__getitem__) for r in self.rows)
        self._by_pivot = dict(zip(self.pivots, self.rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def free_labels(self) -> list:
        """Universe labels that are not pivots, in column order."""
        return [l for l in self.universe if l not in self._by_pivot]

    def reduce(self, v: FormalSum) -> FormalSum:
        return reduce_mod(v, self)

    def contains(self, v: FormalSum) -> bool:
        return not reduce_mod(v, self)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.universe != other.universe:
            raise InputError("subspaces live over different universes")
        return echelonize(list(self.rows) + list(other.rows), self.universe)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.universe == other.universe and self.rows == other.rows

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={len(self.universe)})"

    def to_json(self) -> dict:
        return {"universe": [encode_label(l) for l in self.universe], "rows": [_row_json(r, self.universe) for r in self.rows]}


def echelonize(generators: Iterable[FormalSum], universe: Sequence | None = None) -> Subspace:
    """Reduced row echelon basis of the span of ``generators``.

    Columns are ordered as ``universe``; when it is omitted, the sorted set of
    labels occurring in the generators is used.
    """
    generators = list(generators)
    if universe is None:
        universe = sorted({l for g in generators for l in g.labels()})
    universe = tuple(universe)
    index = _index_universe(universe)
    ech = _Echelon()
    for g in generators:
        ech.insert(_to_int_row(g, index))
    reduced = ech.reduced()
    rows = [
        FormalSum._raw({universe[k]: c for k, c in sorted(reduced[p].items())})
        for p in sorted(reduced)
    ]
    return Subspace(universe, rows, index)


def rank(m: SparseMatrix) -> int:
    ech = _Echelon()
    for r in m.rows:
        ech.insert(_to_int_row(r, m._index))
    return ech.rank


def rank_of(vectors: Iterable[FormalSum]) -> int:
    """Rank of a list of vectors without declaring a universe."""
    vectors = list(vectors)
    universe = sorted({l for v in vectors for l in v.labels()})
    index = _index_universe(universe)
    ech = _Echelon()
    for v in vectors:
        ech.insert(_to_int_row(v, index))
    return ech.rank


def kernel(m: SparseMatrix) -> Subspace:
    """Right null space ``{x : m x = 0}``, as a subspace over the column universe."""
    rs = echelonize(m.rows, m.universe)
    free = rs.free_labels()
    basis = []
    for f in free:
        terms = {f: 1}
        for p, row in zip(rs.pivots, rs.rows):
            c = row[f]
            if c:
                terms[p] = -c
        basis.append(FormalSum(terms))
    return echelonize(basis, m.universe)


def reduce_mod(v: FormalSum, s: Subspace) -> FormalSum:
    """Canonical representative of ``v`` modulo ``s``.

    With reduced echelon rows each row touches one pivot only, so a single
    pass over the pivots present in ``v`` suffices.
    """
    acc = None
    for label, c in v.items():
        row = s._by_pivot.get(label)
        if row is None:
            if label not in s._index:
                raise InputError(f"label {encode_label(label)} is outside the declared universe")
            continue
        if acc is None:
            acc = dict(v._terms)
        for k, rc in row.items():
            nc = acc.get(k, 0) - c * rc
            if nc:
                acc[k] = _coerce(nc)
            else:
                acc.pop(k, None)
    if acc is None:
        return v
    return FormalSum._raw(acc)


def apply_rows(m: SparseMatrix, v: FormalSum) -> FormalSum:
    """Image of ``v`` (a combination of row labels) under the row-convention map ``m``."""
    if m.row_labels is None:
        raise InputError("matrix has no row labels")
    pos = {l: i for i, l in enumerate(m.row_labels)}
    acc = FormalSum()
    for label, c in v.items():
        if label not in pos:
            raise InputError(f"label {encode_label(label)} is not a row label")
        acc = acc + m.rows[pos[label]] * c
    return acc
