import pytest
from hypothesis import given, strategies as st

from tridouble.codes import (CATALOG_NAMES, CodeError, SelfDualCss, TriorthogonalCode, as_css,
                             catalog, catalog_checksum, complement_matches_nullspace,
                             format_code, is_k_orthogonal, load_code, parse_code, trivial_tri,
                             validate)
from tridouble.gf2 import BitMatrix, BitVec, rank

PARAMS = {
    "golay23": (23, 7, 11),
    "color17": (17, 5, 8),
    "rm15": (15, 3, 4),
    "steane7": (7, 3, 3),
    "tri49": (49, 5, 13),
    "tri95": (95, 7, 25),
}


def test_catalog_checksum_pinned():
    assert catalog_checksum() == "21ec89cdb3c19b3e0946dea57c430501fefd4cc3f3dd22d1b4a5f494bc73e173"


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_parameters(name):
    c = catalog(name)
    n, d, nb0 = PARAMS[name]
    assert (c.n, c.d, c.b0.nrows) == (n, d, nb0)
    assert c.b1.nrows == 1 and c.b1.weights() == [n]
    validate(c)


def test_printed_golay_rows():
    g = catalog("golay23")
    assert str(g.b0.row(0)) == "11110010010100000000001"
    assert str(g.b0.row(10)) == "11111001001010000000000"


@pytest.mark.parametrize("name,k", [("rm15", 6), ("tri49", 22), ("tri95", 44)])
def test_triorthogonal_complements(name, k):
    c = catalog(name)
    assert c.c.nrows == k
    assert complement_matches_nullspace(c)
    assert rank(c.complement) == c.n - rank(c.full)


def test_k_orthogonality_levels():
    for name in ("rm15", "tri49", "tri95"):
        assert is_k_orthogonal(catalog(name).full, 3)
    b17 = catalog("color17").full
    assert not is_k_orthogonal(b17, 3)
    assert is_k_orthogonal(b17, 2)


def test_k_orthogonal_rejects_unsupported_k():
    with pytest.raises(ValueError):
        is_k_orthogonal(catalog("rm15").full, 5)


def test_weights_mod_8_of_stabilizer_rows():
    for name in ("rm15", "tri49", "tri95"):
        assert all(w % 8 == 0 for w in catalog(name).b0.weights())


def test_unknown_name_lists_valid_ones():
    with pytest.raises(KeyError, match="golay23"):
        catalog("hamming")
    with pytest.raises(KeyError):
        load_code("no-such-code")


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_text_round_trip(name):
    c = catalog(name)
    back = parse_code(format_code(c))
    assert back == c


def test_parse_errors():
    with pytest.raises(CodeError):
        parse_code("B1\n111\n")
    with pytest.raises(CodeError):
        parse_code("css d=3\nB1\n111\n")
    with pytest.raises(CodeError):
        parse_code("css n=3\nB1\n11\n")
    with pytest.raises(CodeError):
        parse_code("css n=3\n111\n")


def test_load_code_from_file(tmp_path):
    p = tmp_path / "steane.txt"
    p.write_text(format_code(catalog("steane7")))
    assert load_code(str(p)).b0 == catalog("steane7").b0


def test_validation_catches_broken_code():
    g = catalog("golay23")
    broken = SelfDualCss(23, g.b1, BitMatrix.vstack(g.b0[1:], BitMatrix((1,), 23)), g.e, 7, "bad")
    with pytest.raises(CodeError):
        validate(broken)
    rm = catalog("rm15")
    odd_c = TriorthogonalCode(15, rm.b1, rm.b0, BitMatrix.vstack(rm.c[1:], BitMatrix((1,), 15)), 3, "bad")
    with pytest.raises(CodeError):
        validate(odd_c)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_css_view_commutes(name):
    css = as_css(catalog(name))
    assert css.x_stabs.product(css.z_stabs).is_zero()
    assert css.x_stabs.syndrome(css.logical_z) == 0
    assert css.z_stabs.syndrome(css.logical_x) == 0
    assert css.logical_x.dot(css.logical_z) == 1
    assert rank(css.x_stabs) + rank(css.z_stabs) == css.n - 1


def test_trivial_code():
    t = trivial_tri()
    assert (t.n, t.d, t.b0.nrows) == (1, 1, 0)


@given(st.sampled_from(["rm15", "tri49"]), st.data())
def test_stabilizer_products_stay_triorthogonal(name, data):
    # any subset of b0 rows together with b1 is still 3-orthogonal
    c = catalog(name)
    keep = data.draw(st.lists(st.integers(0, c.b0.nrows - 1), min_size=1, unique=True))
    m = BitMatrix.vstack(c.b1, BitMatrix(tuple(c.b0.rows[i] for i in sorted(keep)), c.n))
    assert is_k_orthogonal(m, 3)


def test_checks_for_maps_error_type_to_opposite_stabilizers():
    css = as_css(catalog("tri49"))
    assert css.checks_for("Z") is css.x_stabs
    assert css.checks_for("x") is css.z_stabs
    with pytest.raises(ValueError):
        css.checks_for("Y")
    assert isinstance(css.logical("X"), BitVec)
