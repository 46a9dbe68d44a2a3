"""Minimum-weight decoding for the component codes and hierarchical decoding of doubled codes.

Syndromes are packed ints (bit ``i`` = check row ``i``).  A doubled code's
shared check rows come in three groups, in order: the self-dual pairs
``(B_sd,0|B_sd,0|0)``, the correlating row ``(0|1|B_tri,1)`` and the inner
code's own shared rows.  The self-dual part is decoded on block 1 only and
the inner part recursively; if the correlating row is still violated the
decoder moves a block-1 correction into block 2, or (when block 1 is clean)
chooses the shorter of a same-index pair in both self-dual blocks (``plus2``)
and the inner code's other logical class (``plusL``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .analysis import scan_weight, packed_columns, _int_to_words
from .codes import CssCode, SelfDualCss, TriorthogonalCode, as_css, catalog, _pauli
from .gf2 import BitMatrix, BitVec, GF2Error, parity, popcount, rank

RULES = ("none", "move", "plus2", "plusL")


@dataclass(frozen=True)
class SyndromePair:
    x_syndrome: BitVec
    z_syndrome: BitVec
    stabilizer_set: str = "shared"

    def for_error(self, error_type: str) -> BitVec:
        # Z errors show up on X checks and vice versa
        return self.x_syndrome if _pauli(error_type) == "Z" else self.z_syndrome


@dataclass(frozen=True)
class Decoded:
    """One error type's decoding outcome (ints are packed supports)."""

    correction: int
    weight: int
    alt: int
    alt_weight: int
    rule: str = "none"
    naive: tuple[int, int, bool] | None = None
    blocks: dict[str, int] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class CorrectionPlan:
    x_correction: BitVec
    z_correction: BitVec
    rule_fired: dict[str, str]
    component_breakdown: dict[str, dict[str, BitVec]] = field(default_factory=dict)

    def correction(self, error_type: str) -> BitVec:
        return self.x_correction if _pauli(error_type) == "X" else self.z_correction


# component tables -----------------------------------------------------------------

class SyndromeTable:
    """Minimum-weight representatives of both logical classes for every syndrome.

    Built by enumerating vectors in order of weight (lexicographic within a
    weight) until every ``(syndrome, logical parity)`` class has been seen.
    """

    def __init__(self, checks: BitMatrix, logical: BitVec, max_weight: int | None = None):
        n, m = checks.ncols, checks.nrows
        h = BitMatrix.vstack(checks, BitMatrix((logical.bits,), n))
        if rank(h) != h.nrows:
            raise GF2Error("check rows and logical must be independent")
        self.n, self.nchecks = n, m
        self.checks = checks
        self.logical = logical.bits
        keys = h.columns()
        nkeys = 1 << (m + 1)
        best: dict[int, int] = {0: 0}
        limit = n if max_weight is None else max_weight
        for w in range(1, limit + 1):
            if len(best) == nkeys:
                break
            for combo in itertools.combinations(range(n), w):
                key = 0
                for j in combo:
                    key ^= keys[j]
                if key not in best:
                    best[key] = sum(1 << j for j in combo)
        self._reps = best
        self.complete = len(best) == nkeys

    def class_rep(self, syndrome: int, logical_parity: int) -> int | None:
        return self._reps.get(syndrome | (logical_parity << self.nchecks))

    def lookup(self, syndrome: int) -> Decoded:
        if syndrome >> self.nchecks:
            raise GF2Error(f"syndrome {syndrome:#x} wider than {self.nchecks} bits")
        a = self.class_rep(syndrome, 0)
        b = self.class_rep(syndrome, 1)
        if a is None or b is None:
            raise GF2Error("table is incomplete for this syndrome")
        if popcount(b) < popcount(a):
            a, b = b, a
        return Decoded(a, popcount(a), b, popcount(b))

    decode = lookup

    def syndromes(self) -> range:
        return range(1 << self.nchecks)


@lru_cache(maxsize=None)
def golay_table() -> SyndromeTable:
    sd = catalog("golay23")
    return SyndromeTable(sd.b0, sd.b1.row(0))


@lru_cache(maxsize=None)
def color17_table() -> SyndromeTable:
    sd = catalog("color17")
    return SyndromeTable(sd.b0, sd.b1.row(0))


@lru_cache(maxsize=None)
def rm15_shared_table() -> SyndromeTable:
    rm = catalog("rm15")
    return SyndromeTable(rm.b0, rm.b1.row(0))


@lru_cache(maxsize=None)
def steane7_table() -> SyndromeTable:
    sd = catalog("steane7")
    return SyndromeTable(sd.b0, sd.b1.row(0))


def _check_len(s: BitVec, m: int) -> None:
    if s.n != m:
        raise GF2Error(f"syndrome length {s.n}, expected {m}")


def decode_golay(syndrome: BitVec) -> tuple[BitVec, int]:
    _check_len(syndrome, 11)
    d = golay_table().lookup(syndrome.bits)
    return BitVec(d.correction, 23), d.weight


def decode_color17(syndrome: BitVec) -> tuple[BitVec, int, int]:
    _check_len(syndrome, 8)
    d = color17_table().lookup(syndrome.bits)
    return BitVec(d.correction, 17), d.weight, d.alt_weight


def decode_rm15_shared(syndrome: BitVec) -> tuple[BitVec, int, int]:
    _check_len(syndrome, 4)
    d = rm15_shared_table().lookup(syndrome.bits)
    return BitVec(d.correction, 15), d.weight, d.alt_weight


# hierarchical decoding ---------------------------------------------------------------

class DoubledDecoder:
    """Shared-stabilizer decoder for ``(sd | sd | inner)`` doubled codes.

    ``alt_table`` (optional) supplies minimum-weight representatives of the
    opposite logical class for the whole doubled code; it is needed only
    when this decoder is itself the inner decoder of a larger doubled code.
    """

    def __init__(self, sd: SelfDualCss, sd_table, inner, tri: TriorthogonalCode, alt_table=None):
        self.sd, self.tri = sd, tri
        self.n_sd, self.n_tri = sd.n, tri.n
        self.n = 2 * sd.n + tri.n
        self.k = sd.b0.nrows
        self.nchecks = self.k + 1 + tri.b0.nrows
        self.sd_table, self.inner, self.alt_table = sd_table, inner, alt_table
        self.tri_b1 = tri.b1.rows[0]
        self.logical = (sd.b1.rows[0] | sd.b1.rows[0] << sd.n) | (self.tri_b1 << 2 * sd.n)

    def _place(self, c1: int, c2: int, t: int) -> int:
        return c1 | (c2 << self.n_sd) | (t << 2 * self.n_sd)

    def decode(self, syndrome: int) -> Decoded:
        if syndrome >> self.nchecks:
            raise GF2Error(f"syndrome {syndrome:#x} wider than {self.nchecks} bits")
        k = self.k
        s_sd = syndrome & ((1 << k) - 1)
        s_par = (syndrome >> k) & 1
        s_in = syndrome >> (k + 1)
        outer = self.sd_table.lookup(s_sd)
        inner = self.inner.decode(s_in)
        c1, c2, t = outer.correction, 0, inner.correction
        flag = bool(s_par ^ parity(t & self.tri_b1))
        rule = "none"
        if flag:
            if c1:
                low = c1 & -c1
                c1 ^= low
                c2 ^= low
                rule = "move"
            elif inner.weight + 2 <= inner.alt_weight:
                c1, c2 = 1, 1
                rule = "plus2"
            else:
                t = inner.alt
                rule = "plusL"
        corr = self._place(c1, c2, t)
        naive = (outer.weight, inner.weight, flag)
        alt, alt_w = corr, -1
        if self.alt_table is not None:
            p = parity(corr & self.logical)
            _, alt = self.alt_table.entry(syndrome, 1 - p)
            alt_w = popcount(alt)
        return Decoded(corr, popcount(corr), alt, alt_w, rule, naive,
                       {"sd1": c1, "sd2": c2, "tri": t})


@lru_cache(maxsize=None)
def tri49_decoder() -> DoubledDecoder:
    from .analysis import class_table_for

    alt = class_table_for(as_css(catalog("tri49")), "Z")
    return DoubledDecoder(catalog("color17"), color17_table(), rm15_shared_table(), catalog("rm15"), alt)


@lru_cache(maxsize=None)
def tri95_decoder() -> DoubledDecoder:
    return DoubledDecoder(catalog("golay23"), golay_table(), tri49_decoder(), catalog("tri49"))


_DECODERS = {
    "golay23": golay_table,
    "color17": color17_table,
    "rm15": rm15_shared_table,
    "steane7": steane7_table,
    "tri49": tri49_decoder,
    "tri95": tri95_decoder,
}


def decoder_for(name: str):
    try:
        return _DECODERS[name]()
    except KeyError:
        raise KeyError(f"no shared-stabilizer decoder for {name!r}; "
                       f"available: {', '.join(_DECODERS)}") from None


def shared_checks(code) -> BitMatrix:
    """Check rows common to both code forms: ``b0`` for either error type."""
    return code.b0


def _plan(n: int, per_type: dict[str, Decoded], split: tuple[int, ...] | None) -> CorrectionPlan:
    corr = {t: BitVec(d.correction, n) for t, d in per_type.items()}
    zero = BitVec(0, n)
    breakdown = {}
    for t, d in per_type.items():
        if d.blocks and split:
            breakdown[t] = {name: BitVec(v, w) for (name, v), w in zip(d.blocks.items(), split)}
    return CorrectionPlan(
        corr.get("X", zero),
        corr.get("Z", zero),
        {t: d.rule for t, d in per_type.items()},
        breakdown,
    )


def decode_shared(name: str, syndromes: SyndromePair | dict[str, BitVec]) -> CorrectionPlan:
    """Decode both error types of a catalog code from shared-stabilizer syndromes.

    ``syndromes`` is a :class:`SyndromePair` or a mapping from error type to
    syndrome; missing types decode to the identity.
    """
    dec = decoder_for(name)
    if isinstance(syndromes, SyndromePair):
        if syndromes.stabilizer_set != "shared":
            raise ValueError("decode_shared needs shared-stabilizer syndromes")
        syndromes = {"Z": syndromes.x_syndrome, "X": syndromes.z_syndrome}
    per_type = {}
    for t, s in syndromes.items():
        t = _pauli(t)
        _check_len(s, dec.nchecks)
        per_type[t] = dec.decode(s.bits)
    split = None
    if isinstance(dec, DoubledDecoder):
        split = (dec.n_sd, dec.n_sd, dec.n_tri)
    return _plan(dec.n, per_type, split)


def decode_tri49(syndrome: BitVec, error_type: str = "Z") -> CorrectionPlan:
    return decode_shared("tri49", {error_type: syndrome})


def decode_tri95(syndrome: BitVec, error_type: str = "Z") -> CorrectionPlan:
    return decode_shared("tri95", {error_type: syndrome})


def decode_exhaustive(checks: BitMatrix, syndrome: int, max_weight: int, budget: int = 10**9) -> int | None:
    """Lexicographically first minimum-weight vector with the given syndrome.

    Used for full-stabilizer-set decoding, where no hierarchical table exists.
    """
    if syndrome == 0:
        return 0
    cols = packed_columns(checks)
    target = _int_to_words(syndrome, cols.shape[1])
    spent = 0
    for w in range(1, max_weight + 1):
        support, spent = scan_weight(cols, target, w, budget=budget, spent=spent)
        if support is not None:
            return sum(1 << j for j in support)
    return None


class FullDecoder:
    """Minimum-weight decoding against a code's complete check set for one error type."""

    def __init__(self, code: CssCode, error_type: str, max_weight: int):
        self.code = code
        self.checks = code.checks_for(error_type)
        self.nchecks = self.checks.nrows
        self.n = code.n
        self.max_weight = max_weight
        self._cache: dict[int, int | None] = {}

    def decode(self, syndrome: int) -> Decoded:
        if syndrome not in self._cache:
            self._cache[syndrome] = decode_exhaustive(self.checks, syndrome, self.max_weight)
        corr = self._cache[syndrome]
        if corr is None:
            raise GF2Error(f"no correction of weight <= {self.max_weight}")
        return Decoded(corr, popcount(corr), corr, -1)


# correction tables ---------------------------------------------------------------

_RULE_LABEL = {"none": "", "move": "move", "plus2": "+2", "plusL": "+L"}


@dataclass(frozen=True)
class TableRow:
    """One line of a correction table, keyed by the naive counts and the parity flag."""

    outer: str
    inner: str
    parity: bool
    correction: str
    w_e: int | None = None
    w_el: int | None = None

    def line(self, outer_name: str, inner_name: str) -> str:
        out = (f"{outer_name}={self.outer} {inner_name}={self.inner} "
               f"parity={'yes' if self.parity else 'no'} corrections={self.correction or '-'}")
        if self.w_e is not None:
            out += f" wE={self.w_e} wEL={self.w_el}"
        return out


def tri49_table() -> list[TableRow]:
    """Rules fired and coset weights for every shared syndrome of the 49-qubit code.

    Rows are grouped by (color naive count, RM naive count, parity flag); the
    weights come from the brute-force class table, not from the decoder.
    Raises if a group is not described by a single row.
    """
    from .analysis import class_table_for

    dec = tri49_decoder()
    oracle = class_table_for(as_css(catalog("tri49")), "Z")
    groups: dict[tuple, set] = {}
    for s in range(1 << dec.nchecks):
        d = dec.decode(s)
        we, wel = oracle.coset_weights(s)
        if d.weight != we:
            raise GF2Error(f"syndrome {s:#x}: decoder weight {d.weight}, coset minimum {we}")
        groups.setdefault(d.naive, set()).add((d.rule, we, wel))
    rows = []
    for (o, i, flag), vals in sorted(groups.items()):
        if len(vals) != 1:
            raise GF2Error(f"group {(o, i, flag)} is ambiguous: {sorted(vals)}")
        rule, we, wel = next(iter(vals))
        rows.append(TableRow(str(o), str(i), flag, _RULE_LABEL[rule], we, wel))
    return rows


def tri95_table() -> list[TableRow]:
    """Rules fired by the 95-qubit decoder, grouped like the 49-qubit table.

    With a clean Golay syndrome every inner syndrome is visited; rows with a
    nonzero Golay count collapse to ``>=1 / any``, checked on every Golay
    syndrome with a clean inner block and on every inner syndrome behind one
    fixed Golay syndrome.
    """
    dec = tri95_decoder()
    k, m_in = dec.k, dec.inner.nchecks
    groups: dict[tuple, set] = {}

    def visit(s_sd: int, s_in: int, flag_bit: int, outer_key=None) -> None:
        s = s_sd | (flag_bit << k) | (s_in << (k + 1))
        d = dec.decode(s)
        o, i, flag = d.naive
        key = (str(o), str(i), flag) if outer_key is None else (outer_key, "any", flag)
        groups.setdefault(key, set()).add(d.rule)

    for s_in in range(1 << m_in):
        for f in (0, 1):
            visit(0, s_in, f)
    for s_sd in range(1, 1 << k):
        for f in (0, 1):
            visit(s_sd, 0, f, ">=1")
    for s_in in range(1 << m_in):
        for f in (0, 1):
            visit(1, s_in, f, ">=1")
    rows = []
    for key in sorted(groups, key=lambda t: (t[0] != "0", t[0], t[1], t[2])):
        rules = groups[key]
        if len(rules) != 1:
            raise GF2Error(f"group {key} fires several rules: {sorted(rules)}")
        rows.append(TableRow(key[0], key[1], key[2], _RULE_LABEL[next(iter(rules))]))
    return rows


__all__ = [
    "CorrectionPlan",
    "TableRow",
    "Decoded",
    "DoubledDecoder",
    "FullDecoder",
    "RULES",
    "SyndromePair",
    "SyndromeTable",
    "decode_color17",
    "decode_exhaustive",
    "decode_golay",
    "decode_rm15_shared",
    "decode_shared",
    "decode_tri49",
    "decode_tri95",
    "decoder_for",
    "shared_checks",
    "tri49_decoder",
    "tri49_table",
    "tri95_decoder",
    "tri95_table",
]
