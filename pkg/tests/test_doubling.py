import pytest
from hypothesis import given, strategies as st

from tridouble.codes import as_css, catalog, is_k_orthogonal, trivial_tri
from tridouble.doubling import (double, doubled_blocks, doubled_form, extended_form,
                                predicted_distance)
from tridouble.gf2 import BitMatrix, BitVec, in_span, rank, same_rowspace


def _mutual_span(a, b):
    return all(in_span(r, b) for r in a) and all(in_span(r, a) for r in b)


def test_tri49_is_color17_doubled_with_rm15_row_for_row():
    d = double(catalog("color17"), catalog("rm15"))
    ref = catalog("tri49")
    assert d.base.b1.rows == ref.b1.rows
    assert d.base.b0.rows == ref.b0.rows
    assert d.base.c.rows == ref.c.rows


def test_tri95_is_golay_doubled_with_tri49():
    d = double(catalog("golay23"), catalog("tri49"))
    ref = catalog("tri95")
    assert d.base.b1.rows == ref.b1.rows
    assert d.base.b0.rows == ref.b0.rows
    # the listed C rows start on the second Golay block; only the full span must agree
    assert _mutual_span(d.base.complement, ref.complement)
    assert not same_rowspace(d.base.c, ref.c)


@pytest.mark.parametrize("sd,tri,d", [("color17", "rm15", 5), ("golay23", "tri49", 7), ("steane7", None, 3)])
def test_predicted_distance(sd, tri, d):
    t = trivial_tri() if tri is None else catalog(tri)
    out = double(catalog(sd), t)
    assert out.base.d == d == predicted_distance(catalog(sd).d, t.d)


def test_predicted_distance_rejects_nonpositive():
    with pytest.raises(ValueError):
        predicted_distance(0, 3)


@pytest.mark.parametrize("sd,tri", [("color17", "rm15"), ("golay23", "tri49"), ("steane7", None)])
def test_doubled_is_three_orthogonal(sd, tri):
    t = trivial_tri() if tri is None else catalog(tri)
    d = double(catalog(sd), t)
    assert is_k_orthogonal(d.base.full, 3)
    assert d.base.n == 2 * d.sd.n + t.n


def test_steane_with_trivial_block_is_rm15_like():
    d = double(catalog("steane7"), trivial_tri())
    assert d.base.n == 15
    assert rank(d.base.b0) == 4
    assert is_k_orthogonal(d.base.full, 3)


def test_doubling_twice_raises_orthogonality_again():
    # steane7 + 1 qubit -> 15 qubits (3-orthogonal); once more with 1 qubit -> 31 qubits
    first = double(catalog("steane7"), trivial_tri()).base
    one = trivial_tri()
    b1, b0 = doubled_blocks(first.b1, first.b0, one.b1, one.b0)
    m = BitMatrix.vstack(b1, b0)
    assert m.ncols == 31
    assert is_k_orthogonal(m, 4)
    assert not is_k_orthogonal(first.full, 4)


@pytest.mark.parametrize("sd,tri", [("color17", "rm15"), ("golay23", "tri49")])
def test_low_weight_complement(sd, tri):
    d = double(catalog(sd), catalog(tri))
    low = d.complement_lowweight
    assert same_rowspace(low, d.complement_std)
    assert rank(low) == low.nrows
    full = d.base.full
    assert full.product(low).is_zero()


def test_tri_logical_is_minimum_weight():
    d = double(catalog("color17"), catalog("rm15"))
    assert bin(d.tri_logical_z).count("1") == 3


def test_conversion_forms():
    d = double(catalog("golay23"), catalog("tri49"))
    dbl, ext = doubled_form(d), extended_form(d)
    ns = d.base.b0.nrows
    for f in (dbl, ext):
        assert f.x_stabs.rows[:ns] == d.base.b0.rows
        assert f.z_stabs.rows[:ns] == d.base.b0.rows
        assert f.x_stabs.product(f.z_stabs).is_zero()
        assert rank(f.x_stabs) + rank(f.z_stabs) == f.n - 1
    assert same_rowspace(dbl.z_stabs, as_css(catalog("tri95")).z_stabs)
    assert ext.logical_x.support() == list(range(23))


@given(st.integers(0, 2**11 - 1))
def test_shared_rows_belong_to_both_forms(mask):
    d = double(catalog("golay23"), catalog("tri49"))
    ext = extended_form(d)
    v = 0
    for i in range(11):
        if (mask >> i) & 1:
            v ^= d.base.b0.rows[i]
    assert in_span(BitVec(v, 95), ext.x_stabs)
    assert in_span(BitVec(v, 95), doubled_form(d).z_stabs)
