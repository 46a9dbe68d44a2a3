import numpy as np
import pytest
from hypothesis import given, strategies as st

from tridouble.gf2 import (BitMatrix, BitVec, GF2Error, complete_even_basis, in_span,
                           nullspace, parity, rank, row_reduce, same_rowspace, solve)

from oracles import rank_np, to_array


@st.composite
def matrices(draw, max_rows=8, max_cols=12):
    n = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=0, max_size=max_rows))
    return BitMatrix(tuple(rows), n)


def test_bit_order_is_left_to_right():
    v = BitVec.from_str("1100")
    assert v.bits == 0b0011
    assert v.support() == [0, 1]
    assert str(v) == "1100"


def test_ragged_rows_rejected():
    with pytest.raises(GF2Error):
        BitMatrix.from_strings(["101", "10"])


def test_bad_characters_rejected():
    with pytest.raises(GF2Error):
        BitVec.from_str("10x1")


def test_bits_must_fit():
    with pytest.raises(GF2Error):
        BitVec(0b1000, 3)


def test_length_mismatch_in_xor():
    with pytest.raises(GF2Error):
        BitVec.from_str("101") ^ BitVec.from_str("10")


def test_small_example():
    m = BitMatrix.from_strings(["1100", "0110", "1010"])
    assert rank(m) == 2
    ns = nullspace(m)
    assert ns.nrows == 2
    assert m.product(ns).is_zero()


@given(matrices())
def test_rank_matches_numpy_oracle(m):
    assert rank(m) == rank_np(to_array(m.rows, m.ncols))


@given(matrices())
def test_rank_nullity(m):
    ns = nullspace(m)
    assert rank(m) + ns.nrows == m.ncols
    assert rank(ns) == ns.nrows
    assert m.product(ns).is_zero()


@given(matrices())
def test_row_reduce_is_idempotent_and_keeps_rowspace(m):
    red, r, piv = row_reduce(m)
    assert red.nrows == r == len(piv)
    assert piv == sorted(piv)
    again, _, piv2 = row_reduce(red)
    assert again.rows == red.rows and piv2 == piv
    assert same_rowspace(m, red)


@given(matrices(), st.data())
def test_solve_finds_preimages(m, data):
    x = data.draw(st.integers(0, (1 << m.ncols) - 1))
    target = m.syndrome(x)
    y = solve(m, target)
    assert y is not None and m.syndrome(y) == target


@given(matrices())
def test_transpose_involution(m):
    assert m.T.T.rows == m.rows
    assert m.to_array().T.tolist() == m.T.to_array().tolist()


@given(matrices(), st.data())
def test_span_membership(m, data):
    coeffs = data.draw(st.lists(st.booleans(), min_size=m.nrows, max_size=m.nrows))
    v = 0
    for c, r in zip(coeffs, m.rows):
        if c:
            v ^= r
    assert in_span(BitVec(v, m.ncols), m)


@given(matrices())
def test_packed_round_trip(m):
    words = m.packed()
    back = [sum(int(w) << (64 * i) for i, w in enumerate(row)) for row in words]
    assert back == list(m.rows)


def test_solve_inconsistent():
    m = BitMatrix.from_strings(["11", "11"])
    assert solve(m, 0b01) is None


def test_complete_even_basis():
    b = BitMatrix.from_strings(["1111111", "1010101", "0110011", "0001111"])
    e = complete_even_basis(b)
    assert e.nrows == 3
    assert all(parity(r) == 0 for r in e.rows)
    assert rank(BitMatrix.vstack(b, e)) == 7


def test_complete_even_basis_errors():
    with pytest.raises(GF2Error):
        complete_even_basis(BitMatrix.from_strings(["110", "110"]))
    with pytest.raises(GF2Error):
        complete_even_basis(BitMatrix.from_strings(["100", "010"]))


def test_from_array_round_trip():
    a = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
    assert BitMatrix.from_array(a).to_strings() == ["101", "011"]
