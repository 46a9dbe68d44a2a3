"""GF(2) linear algebra on bit-packed rows.

A row is a Python ``int`` used as a packed bitset: bit ``i`` holds column
``i``, so column 0 is the leftmost entry of a printed 0/1 matrix.  Python
ints are arbitrary-width word arrays, which makes row XOR a single
operation regardless of the row length.  ``BitMatrix.packed`` exports rows
as fixed ``uint64`` words for the compiled search kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class GF2Error(ValueError):
    """Raised on malformed or inconsistent GF(2) input."""


def popcount(x: int) -> int:
    return x.bit_count()


def parity(x: int) -> int:
    return x.bit_count() & 1


def _parse_bits(text: str) -> int:
    text = text.strip()
    if any(c not in "01" for c in text):
        raise GF2Error(f"row must contain only 0/1 characters: {text!r}")
    value = 0
    for i, c in enumerate(text):
        if c == "1":
            value |= 1 << i
    return value


def _format_bits(value: int, n: int) -> str:
    return "".join("1" if (value >> i) & 1 else "0" for i in range(n))


@dataclass(frozen=True)
class BitVec:
    """Length-``n`` vector over GF(2), packed into ``bits``."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.bits < 0 or self.bits >> self.n:
            raise GF2Error(f"bits {self.bits:#x} do not fit in length {self.n}")

    @classmethod
    def from_str(cls, text: str) -> BitVec:
        text = text.strip()
        return cls(_parse_bits(text), len(text))

    @classmethod
    def from_support(cls, support: Iterable[int], n: int) -> BitVec:
        bits = 0
        for i in support:
            if not 0 <= i < n:
                raise GF2Error(f"index {i} out of range for length {n}")
            bits ^= 1 << i
        return cls(bits, n)

    @classmethod
    def zeros(cls, n: int) -> BitVec:
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> BitVec:
        return cls((1 << n) - 1, n)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not -self.n <= i < self.n:
            raise IndexError(i)
        return (self.bits >> (i % self.n)) & 1

    def __str__(self) -> str:
        return _format_bits(self.bits, self.n)

    def _check(self, other: BitVec) -> None:
        if other.n != self.n:
            raise GF2Error(f"length mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: BitVec) -> BitVec:
        self._check(other)
        return BitVec(self.bits ^ other.bits, self.n)

    def __and__(self, other: BitVec) -> BitVec:
        self._check(other)
        return BitVec(self.bits & other.bits, self.n)

    def dot(self, other: BitVec) -> int:
        self._check(other)
        return parity(self.bits & other.bits)

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    def support(self) -> list[int]:
        return [i for i in range(self.n) if (self.bits >> i) & 1]

    def concat(self, *others: BitVec) -> BitVec:
        bits, n = self.bits, self.n
        for o in others:
            bits |= o.bits << n
            n += o.n
        return BitVec(bits, n)


@dataclass(frozen=True)
class BitMatrix:
    """Immutable GF(2) matrix with packed integer rows."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise GF2Error(f"row {r:#x} does not fit in {self.ncols} columns")

    # construction -------------------------------------------------------
    @classmethod
    def from_strings(cls, lines: Sequence[str], ncols: int | None = None) -> BitMatrix:
        lines = [ln.strip() for ln in lines if ln.strip()]
        widths = {len(ln) for ln in lines}
        if len(widths) > 1:
            raise GF2Error(f"ragged rows: widths {sorted(widths)}")
        if lines:
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise GF2Error(f"expected {ncols} columns, got {width}")
            ncols = width
        elif ncols is None:
            raise GF2Error("empty matrix needs an explicit column count")
        return cls(tuple(_parse_bits(ln) for ln in lines), ncols)

    @classmethod
    def from_text(cls, text: str, ncols: int | None = None) -> BitMatrix:
        return cls.from_strings(text.split(), ncols)

    @classmethod
    def from_vecs(cls, vecs: Sequence[BitVec], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            if not vecs:
                raise GF2Error("empty matrix needs an explicit column count")
            ncols = vecs[0].n
        for v in vecs:
            if v.n != ncols:
                raise GF2Error(f"length mismatch: {v.n} vs {ncols}")
        return cls(tuple(v.bits for v in vecs), ncols)

    @classmethod
    def from_array(cls, arr) -> BitMatrix:
        arr = np.asarray(arr, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise GF2Error("expected a 2D array")
        weights = 1 << np.arange(arr.shape[1], dtype=object)
        rows = tuple(int((row.astype(object) * weights).sum()) for row in arr)
        return cls(rows, arr.shape[1])

    @classmethod
    def empty(cls, ncols: int) -> BitMatrix:
        return cls((), ncols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def vstack(cls, *blocks: BitMatrix) -> BitMatrix:
        if not blocks:
            raise GF2Error("nothing to stack")
        ncols = blocks[0].ncols
        for b in blocks:
            if b.ncols != ncols:
                raise GF2Error(f"column mismatch: {b.ncols} vs {ncols}")
        return cls(tuple(r for b in blocks for r in b.rows), ncols)

    @classmethod
    def hstack(cls, *blocks: BitMatrix) -> BitMatrix:
        """Concatenate blocks left to right; all blocks need equal row counts."""
        nrows = {b.nrows for b in blocks}
        if len(nrows) != 1:
            raise GF2Error(f"row count mismatch: {sorted(nrows)}")
        rows = [0] * nrows.pop()
        offset = 0
        for b in blocks:
            for i, r in enumerate(b.rows):
                rows[i] |= r << offset
            offset += b.ncols
        return cls(tuple(rows), offset)

    # views ----------------------------------------------------------------
    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __len__(self) -> int:
        return self.nrows

    def row(self, i: int) -> BitVec:
        return BitVec(self.rows[i], self.ncols)

    def __iter__(self):
        return (BitVec(r, self.ncols) for r in self.rows)

    def __getitem__(self, idx) -> BitMatrix:
        if isinstance(idx, slice):
            return BitMatrix(self.rows[idx], self.ncols)
        return BitMatrix(tuple(self.rows[i] for i in idx), self.ncols)

    def to_strings(self) -> list[str]:
        return [_format_bits(r, self.ncols) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = (r >> j) & 1
        return out

    def weights(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def transpose(self) -> BitMatrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(tuple(cols), self.nrows)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def columns(self) -> list[int]:
        """Column ``j`` as a packed int over row indices (its syndrome)."""
        return list(self.transpose().rows)

    def syndrome(self, v: BitVec | int) -> int:
        """Packed ``M v^T``: bit ``i`` is the parity of row ``i`` against ``v``."""
        bits = v.bits if isinstance(v, BitVec) else v
        if isinstance(v, BitVec) and v.n != self.ncols:
            raise GF2Error(f"length mismatch: {v.n} vs {self.ncols}")
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & bits):
                out |= 1 << i
        return out

    def product(self, other: BitMatrix) -> BitMatrix:
        """``self @ other.T``: entry (i, j) is the overlap parity of rows i and j."""
        if other.ncols != self.ncols:
            raise GF2Error(f"column mismatch: {self.ncols} vs {other.ncols}")
        return BitMatrix(tuple(other.syndrome(r) for r in self.rows), other.nrows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def packed(self, words: int | None = None) -> np.ndarray:
        """Rows as ``uint64`` words, little-endian in column index."""
        need = max(1, (self.ncols + 63) // 64)
        words = need if words is None else words
        if words < need:
            raise GF2Error(f"{self.ncols} columns need {need} words")
        out = np.zeros((self.nrows, words), dtype=np.uint64)
        mask = (1 << 64) - 1
        for i, r in enumerate(self.rows):
            for w in range(words):
                out[i, w] = (r >> (64 * w)) & mask
        return out


# operations -----------------------------------------------------------------

def row_reduce(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row-echelon form; pivots are chosen at the lowest column first.

    Returns ``(reduced, rank, pivot_cols)``.  Zero rows are dropped from
    ``reduced``, so ``reduced.nrows == rank``.
    """
    work = [r for r in m.rows if r]
    pivots: list[int] = []
    rank = 0
    for col in range(m.ncols):
        bit = 1 << col
        pivot = next((i for i in range(rank, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return BitMatrix(tuple(work[:rank]), m.ncols), rank, pivots


def rank(m: BitMatrix) -> int:
    # echelon basis keyed by leading bit; cheaper than a full RREF
    basis: dict[int, int] = {}
    for r in m.rows:
        while r:
            lead = r.bit_length() - 1
            if lead not in basis:
                basis[lead] = r
                break
            r ^= basis[lead]
    return len(basis)


def nullspace(m: BitMatrix) -> BitMatrix:
    """Basis of ``{v : m v^T = 0}``, one row per free column."""
    reduced, _, pivots = row_reduce(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for prow, pcol in zip(reduced.rows, pivots):
            if (prow >> free) & 1:
                v |= 1 << pcol
        basis.append(v)
    return BitMatrix(tuple(basis), m.ncols)


def _reduce_against(v: int, reduced: BitMatrix, pivots: list[int]) -> int:
    for prow, pcol in zip(reduced.rows, pivots):
        if (v >> pcol) & 1:
            v ^= prow
    return v


def in_span(v: BitVec, m: BitMatrix) -> bool:
    if v.n != m.ncols:
        raise GF2Error(f"length mismatch: {v.n} vs {m.ncols}")
    reduced, _, pivots = row_reduce(m)
    return _reduce_against(v.bits, reduced, pivots) == 0


def same_rowspace(a: BitMatrix, b: BitMatrix) -> bool:
    if a.ncols != b.ncols:
        return False
    ra, _, pa = row_reduce(a)
    rb, _, pb = row_reduce(b)
    return ra.rows == rb.rows and pa == pb


def solve(m: BitMatrix, target: int) -> int | None:
    """Some ``x`` with ``m x^T = target`` (``target`` packed by row), or None."""
    n = m.ncols
    # append each row's target bit as an extra column past the data columns
    aug = BitMatrix(
        tuple(r | (((target >> i) & 1) << n) for i, r in enumerate(m.rows)), n + 1
    )
    reduced, _, pivots = row_reduce(aug)
    x = 0
    for prow, pcol in zip(reduced.rows, pivots):
        if pcol == n:
            return None
        if (prow >> n) & 1:
            x |= 1 << pcol
    return x


def complete_even_basis(b: BitMatrix) -> BitMatrix:
    """Even-weight rows that extend the rows of ``b`` to a basis of GF(2)^n.

    ``b`` must have independent rows, exactly one of odd weight.  Candidates
    ``e_i + e_j`` are tried in lexicographic ``(i, j)`` order and kept when
    independent of everything accumulated so far.
    """
    n = b.ncols
    if rank(b) != b.nrows:
        raise GF2Error("input rows are linearly dependent")
    odd = sum(parity(r) for r in b.rows)
    if odd != 1:
        raise GF2Error(f"expected exactly one odd-weight row, found {odd}")
    basis: dict[int, int] = {}

    def insert(r: int) -> bool:
        while r:
            lead = r.bit_length() - 1
            if lead not in basis:
                basis[lead] = r
                return True
            r ^= basis[lead]
        return False

    for r in b.rows:
        insert(r)
    extra = []
    need = n - b.nrows
    for i in range(n):
        for j in range(i + 1, n):
            if len(extra) == need:
                break
            cand = (1 << i) | (1 << j)
            if insert(cand):
                extra.append(cand)
    return BitMatrix(tuple(extra), n)


__all__ = [
    "BitMatrix",
    "BitVec",
    "GF2Error",
    "complete_even_basis",
    "in_span",
    "nullspace",
    "parity",
    "popcount",
    "rank",
    "row_reduce",
    "same_rowspace",
    "solve",
]
