"""Exhaustive distance certification, coset minimum weights and T-gate certificates."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .codes import CssCode, TriorthogonalCode, as_css, _pauli
from .gf2 import BitMatrix, BitVec, GF2Error, rank

DEFAULT_BUDGET = 2_000_000_000


class BudgetExceeded(RuntimeError):
    """An exhaustive scan would exceed its candidate ceiling."""


@dataclass(frozen=True)
class DistanceReport:
    code: str
    error_type: str
    distance: int | None
    witness: BitVec | None
    search_bound: int
    candidates: int

    def describe(self) -> str:
        if self.distance is None:
            return f"distance > {self.search_bound}"
        return f"distance {self.distance}; witness {self.witness}"


def logical_search_matrix(code: CssCode, error_type: str) -> tuple[BitMatrix, int]:
    """Check rows for a nontrivial logical of ``error_type`` and the target syndrome.

    A vector is a nontrivial logical exactly when it commutes with every
    opposing stabilizer and anticommutes with the opposing logical, i.e.
    its syndrome against ``checks | opposing logical`` is ``0...01``.
    """
    error_type = _pauli(error_type)
    checks = code.checks_for(error_type)
    opposing = code.logical("Z" if error_type == "X" else "X")
    h = BitMatrix.vstack(checks, BitMatrix((opposing.bits,), code.n))
    return h, 1 << checks.nrows


def _int_to_words(value: int, nw: int) -> np.ndarray:
    mask = (1 << 64) - 1
    return np.array([(value >> (64 * i)) & mask for i in range(nw)], dtype=np.uint64)


def packed_columns(h: BitMatrix) -> np.ndarray:
    return h.transpose().packed()


def scan_weight(
    cols: np.ndarray,
    target: np.ndarray,
    w: int,
    *,
    budget: int = DEFAULT_BUDGET,
    spent: int = 0,
    threads: int = 1,
) -> tuple[tuple[int, ...] | None, int]:
    """Lexicographically first weight-``w`` subset whose column XOR is ``target``.

    The subsets are sharded by smallest element and shards are visited in
    order (``threads`` at a time), so the answer is the same for any thread
    count.  Returns ``(support or None, candidates spent so far)``.
    """
    n = cols.shape[0]
    empty = np.zeros((0, cols.shape[1]), np.uint64)

    def run(first: int):
        out = np.empty(w, np.int64)
        hit = _kernels.scan_shard(cols, target, w, first, out, empty)
        return tuple(int(i) for i in out) if hit else None

    firsts = list(range(0, n - w + 1))
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for start in range(0, len(firsts), threads):
            window = firsts[start:start + threads]
            size = sum(math.comb(n - 1 - f, w - 1) for f in window)
            if spent + size > budget:
                raise BudgetExceeded(
                    f"weight-{w} scan needs more than {budget} candidates"
                )
            spent += size
            results = list(pool.map(run, window)) if pool else [run(f) for f in window]
            for res in results:
                if res is not None:
                    return res, spent
    finally:
        if pool:
            pool.shutdown()
    return None, spent


def min_weight_logical(
    code: CssCode,
    error_type: str,
    max_weight: int,
    *,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    min_weight: int = 1,
) -> DistanceReport:
    """Least-weight nontrivial logical of the given type, scanning weights in order.

    Every vector of weight ``< distance`` is visited (shards of a weight
    are skipped only after a lower-indexed shard has produced the witness).
    """
    error_type = _pauli(error_type)
    if not 0 <= max_weight <= code.n:
        raise ValueError(f"max_weight must be in [0, {code.n}]")
    h, target = logical_search_matrix(code, error_type)
    cols = packed_columns(h)
    tgt = _int_to_words(target, cols.shape[1])
    spent = 0
    for w in range(max(1, min_weight), max_weight + 1):
        support, spent = scan_weight(cols, tgt, w, budget=budget, spent=spent, threads=threads)
        if support is not None:
            witness = BitVec.from_support(support, code.n)
            return DistanceReport(code.name, error_type, w, witness, w, spent)
    return DistanceReport(code.name, error_type, None, None, max_weight, spent)


# coset weights ------------------------------------------------------------------

@dataclass(frozen=True)
class ClassTable:
    """Per-(syndrome, logical class) minimum weights and representatives.

    Index ``s | (p << m)`` holds the class of vectors with syndrome ``s``
    against the ``m`` check rows and overlap parity ``p`` with the opposing
    logical.
    """

    n: int
    nchecks: int
    weights: np.ndarray
    reps: np.ndarray

    def entry(self, syndrome: int, logical_parity: int) -> tuple[int, int]:
        key = syndrome | (logical_parity << self.nchecks)
        return int(self.weights[key]), int(self.reps[key])

    def coset_weights(self, syndrome: int) -> tuple[int, int]:
        a, _ = self.entry(syndrome, 0)
        b, _ = self.entry(syndrome, 1)
        return (a, b) if a <= b else (b, a)


def build_class_table(checks: BitMatrix, logical: BitVec, max_weight: int | None = None) -> ClassTable:
    n = checks.ncols
    if n > 64:
        raise GF2Error("class tables hold representatives as 64-bit masks")
    h = BitMatrix.vstack(checks, BitMatrix((logical.bits,), n))
    if rank(h) != h.nrows:
        raise GF2Error("check rows and logical must be independent")
    nkeys = 1 << h.nrows
    keys = np.array(h.columns(), dtype=np.int64)
    weights = np.full(nkeys, -1, dtype=np.int64)
    reps = np.zeros(nkeys, dtype=np.uint64)
    filled = _kernels.fill_class_table(keys, n if max_weight is None else max_weight, weights, reps)
    if filled != nkeys:
        raise BudgetExceeded(f"only {filled} of {nkeys} classes reached by weight {max_weight}")
    return ClassTable(n, checks.nrows, weights, reps)


@lru_cache(maxsize=None)
def class_table_for(code: CssCode, error_type: str) -> ClassTable:
    error_type = _pauli(error_type)
    checks = code.checks_for(error_type)
    opposing = code.logical("Z" if error_type == "X" else "X")
    return build_class_table(checks, opposing)


def coset_weights(code: CssCode, syndrome: BitVec, error_type: str) -> tuple[int, int]:
    """``(w(E), w(E+L))`` for errors of ``error_type`` with the given syndrome."""
    checks = code.checks_for(error_type)
    if syndrome.n != checks.nrows:
        raise GF2Error(f"syndrome length {syndrome.n}, expected {checks.nrows}")
    return class_table_for(code, error_type).coset_weights(syndrome.bits)


# transversal T ----------------------------------------------------------------

@dataclass(frozen=True)
class TGateCertificate:
    code: str
    coset0_residues: frozenset[int]
    coset1_residues: frozenset[int]
    logical_phase_exponent: int | None

    @property
    def diagonal(self) -> bool:
        return self.logical_phase_exponent is not None

    @property
    def order(self) -> int | None:
        if self.logical_phase_exponent is None:
            return None
        return 8 // math.gcd(self.logical_phase_exponent, 8)

    def describe(self) -> str:
        e = self.logical_phase_exponent
        gate = "non-diagonal" if e is None else f"diag(1, w^{e}), w = exp(i pi/4)"
        return gate


def _residues(mask: int) -> frozenset[int]:
    return frozenset(r for r in range(8) if (mask >> r) & 1)


def t_gate_certificate(code: TriorthogonalCode, max_rank: int = 26) -> TGateCertificate:
    """Weights mod 8 over the X-stabilizer span and its logical-X coset."""
    r = rank(code.b0)
    if r > max_rank:
        raise BudgetExceeded(f"stabilizer rank {r} exceeds the enumeration budget 2^{max_rank}")
    if r != code.b0.nrows:
        raise GF2Error("X stabilizer rows must be independent")
    nw = max(1, (code.n + 63) // 64)
    gens = code.b0.packed(nw) if code.b0.nrows else np.zeros((0, nw), np.uint64)
    offset = _int_to_words(code.b1.rows[0], nw)
    m0, m1, _ = _kernels.gray_residues(gens, offset)
    c0, c1 = _residues(int(m0)), _residues(int(m1))
    exponent = None
    if len(c0) == 1 and len(c1) == 1:
        exponent = (next(iter(c1)) - next(iter(c0))) % 8
    return TGateCertificate(code.name, c0, c1, exponent)


def coset_min_weight(code: TriorthogonalCode, max_rank: int = 26) -> int:
    """Exact X distance of a triorthogonal code: min weight of ``b1 + span(b0)``."""
    r = rank(code.b0)
    if r > max_rank:
        raise BudgetExceeded(f"stabilizer rank {r} exceeds the enumeration budget 2^{max_rank}")
    nw = max(1, (code.n + 63) // 64)
    gens = code.b0.packed(nw) if code.b0.nrows else np.zeros((0, nw), np.uint64)
    _, _, best = _kernels.gray_residues(gens, _int_to_words(code.b1.rows[0], nw))
    return int(best)


def certify(code, error_type: str = "Z", **kw) -> DistanceReport:
    """Distance report for a catalog-style code up to its full length."""
    css = code if isinstance(code, CssCode) else as_css(code)
    return min_weight_logical(css, error_type, css.n, **kw)


__all__ = [
    "BudgetExceeded",
    "ClassTable",
    "DEFAULT_BUDGET",
    "DistanceReport",
    "TGateCertificate",
    "build_class_table",
    "class_table_for",
    "coset_min_weight",
    "coset_weights",
    "logical_search_matrix",
    "min_weight_logical",
    "scan_weight",
    "t_gate_certificate",
]
