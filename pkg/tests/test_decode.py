import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from tridouble.analysis import class_table_for
from tridouble.codes import as_css, catalog
from tridouble.decode import (FullDecoder, SyndromePair, TableRow, color17_table, decode_color17,
                              decode_exhaustive, decode_golay, decode_rm15_shared, decode_shared,
                              decode_tri49, decode_tri95, decoder_for, golay_table,
                              rm15_shared_table, tri49_decoder, tri49_table, tri95_decoder,
                              tri95_table)
from tridouble.gf2 import BitVec, GF2Error, parity

TRI49_ROWS = [
    ("0", "0", False, "", 0, 5), ("0", "0", True, "+2", 2, 3),
    ("0", "1", False, "", 1, 4), ("0", "1", True, "+L", 2, 3),
    ("1", "0", False, "", 1, 4), ("1", "0", True, "move", 1, 4),
    ("1", "1", False, "", 2, 3), ("1", "1", True, "move", 2, 3),
    ("2", "0", False, "", 2, 3), ("2", "0", True, "move", 2, 3),
    ("2", "1", False, "", 3, 4), ("2", "1", True, "move", 3, 4),
    ("3", "0", False, "", 3, 4), ("3", "0", True, "move", 3, 4),
    ("3", "1", False, "", 4, 5), ("3", "1", True, "move", 4, 5),
]

TRI95_ROWS = [
    ("0", "0", False, ""), ("0", "0", True, "+2"),
    ("0", "1", False, ""), ("0", "1", True, "+2"),
    ("0", "2", False, ""), ("0", "2", True, "+L"),
    ("0", "3", False, ""), ("0", "3", True, "+L"),
    ("0", "4", False, ""), ("0", "4", True, "+L"),
    (">=1", "any", False, ""), (">=1", "any", True, "move"),
]


def _weights(table):
    return dict(Counter(table.lookup(s).weight for s in table.syndromes()))


def test_golay_table_is_perfect():
    assert _weights(golay_table()) == {0: 1, 1: 23, 2: 253, 3: 1771}


def test_color17_table_has_weight_three_classes():
    w = _weights(color17_table())
    assert max(w) == 3 and sum(w.values()) == 256


def test_rm15_shared_table_corrects_single_errors():
    t = rm15_shared_table()
    assert _weights(t) == {0: 1, 1: 15}


def test_table_alternate_differs_by_logical():
    t = color17_table()
    logical = catalog("color17").b1.rows[0]
    for s in t.syndromes():
        d = t.lookup(s)
        assert parity((d.correction ^ d.alt) & logical) == 1
        assert d.weight <= d.alt_weight


def test_component_decoders_match_tables():
    s = BitVec(0b101, 11)
    corr, w = decode_golay(s)
    assert w == corr.weight == golay_table().lookup(s.bits).weight
    corr, w, alt_w = decode_color17(BitVec(3, 8))
    assert w <= alt_w
    corr, w, alt_w = decode_rm15_shared(BitVec(1, 4))
    assert (w, alt_w) == (1, 2)
    with pytest.raises(ValueError):
        decode_golay(BitVec(0, 10))


def test_tri49_table_rows():
    rows = tri49_table()
    assert [(r.outer, r.inner, r.parity, r.correction, r.w_e, r.w_el) for r in rows] == TRI49_ROWS


def test_tri95_table_rows():
    rows = tri95_table()
    assert [(r.outer, r.inner, r.parity, r.correction) for r in rows] == TRI95_ROWS


def test_table_line_format():
    row = TableRow("0", "1", True, "+L", 2, 3)
    assert row.line("color", "rm") == "color=0 rm=1 parity=yes corrections=+L wE=2 wEL=3"
    assert TableRow(">=1", "any", False, "").line("golay", "tri49").endswith("corrections=-")


def _syndrome(dec, checks, error):
    return checks.syndrome(error)


@pytest.mark.parametrize("name", ["tri49", "tri95"])
def test_tri_decoders_give_minimum_weight_on_low_weight_errors(name):
    code = catalog(name)
    dec = decoder_for(name)
    t = 2 if name == "tri49" else 3
    logical = code.b1.rows[0]
    for w in range(t + 1):
        combos = itertools.combinations(range(code.n), w)
        if name == "tri95" and w == 3:
            combos = itertools.islice(combos, 0, None, 53)
        for c in combos:
            e = sum(1 << j for j in c)
            d = dec.decode(code.b0.syndrome(e))
            residual = e ^ d.correction
            assert code.b0.syndrome(residual) == 0
            assert parity(residual & logical) == 0


def test_tri49_exhaustive_weight_two_matches_class_table():
    code = catalog("tri49")
    table = class_table_for(as_css(code), "Z")
    dec = tri49_decoder()
    for c in itertools.combinations(range(49), 2):
        e = sum(1 << j for j in c)
        s = code.b0.syndrome(e)
        assert dec.decode(s).weight == table.coset_weights(s)[0]


@given(st.lists(st.integers(0, 94), max_size=3, unique=True))
def test_tri95_corrects_weight_three(support):
    code = catalog("tri95")
    e = BitVec.from_support(support, 95)
    plan = decode_tri95(BitVec(code.b0.syndrome(e.bits), code.b0.nrows))
    residual = e.bits ^ plan.z_correction.bits
    assert code.b0.syndrome(residual) == 0
    assert parity(residual & code.b1.rows[0]) == 0


def test_rule_examples():
    code = catalog("tri49")
    dec = tri49_decoder()
    # parity flag alone: two qubits, one in each color block
    e = 1 | (1 << 17)
    d = dec.decode(code.b0.syndrome(e))
    assert d.rule == "plus2" and d.weight == 2
    # one RM error plus a flipped parity bit
    e = (1 << 34) | 1 | (1 << 17)
    d = dec.decode(code.b0.syndrome(e))
    assert d.naive[:2] == (0, 1)
    # a single color error in the second block is moved
    d = dec.decode(code.b0.syndrome(1 << 20))
    assert d.rule == "move" and d.weight == 1
    assert d.blocks["sd2"] == 1 << 3 and d.blocks["sd1"] == 0


def test_plus_l_uses_other_logical_class():
    dec = tri49_decoder()
    k = dec.k
    hits = 0
    for s_in in range(1, 16):
        for f in (0, 1):
            d = dec.decode((f << k) | (s_in << (k + 1)))
            if d.naive == (0, 1, True):
                assert d.rule == "plusL" and d.weight == 2
                assert d.blocks["tri"] == dec.inner.decode(s_in).alt
                hits += 1
    assert hits == 15


def test_decode_shared_both_types():
    code = catalog("tri49")
    ez = 1 << 5
    ex = 1 << 40
    pair = SyndromePair(BitVec(code.b0.syndrome(ez), 13), BitVec(code.b0.syndrome(ex), 13))
    plan = decode_shared("tri49", pair)
    assert plan.z_correction.bits == ez
    assert plan.x_correction.bits == ex
    assert plan.correction("Z") == plan.z_correction
    assert set(plan.component_breakdown["Z"]) == {"sd1", "sd2", "tri"}
    assert plan.rule_fired == {"Z": "none", "X": "none"}


def test_decode_shared_rejects_bad_input():
    with pytest.raises(ValueError):
        decode_shared("tri49", SyndromePair(BitVec(0, 13), BitVec(0, 13), "full"))
    with pytest.raises(ValueError):
        decode_tri49(BitVec(0, 12))
    with pytest.raises(KeyError):
        decoder_for("hamming")
    with pytest.raises(GF2Error):
        tri95_decoder().decode(1 << 40)


def test_full_decoder_uses_every_check():
    css = as_css(catalog("tri49"))
    dec = FullDecoder(css, "Z", 3)
    checks = css.checks_for("Z")
    e = (1 << 3) | (1 << 30)
    d = dec.decode(checks.syndrome(e))
    assert checks.syndrome(d.correction) == checks.syndrome(e)
    assert d.weight <= 2
    assert decode_exhaustive(checks, 0, 3) == 0
