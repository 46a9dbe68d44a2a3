"""Self-dual and triorthogonal CSS codes, their validators and a built-in catalog.

Codes are stored in the block form used throughout the package:

* ``SelfDualCss``: one odd-weight logical row ``b1``, even-weight generators
  ``b0`` (used for both X and Z stabilizers) and an even-weight completion
  ``e`` such that ``b1 | b0 | e`` is a basis of GF(2)^n.
* ``TriorthogonalCode``: ``b1`` and ``b0`` form a triorthogonal matrix; ``b0``
  gives the X stabilizers and ``b0 | c`` the Z stabilizers.

Both convert to :class:`CssCode`, the uniform view used by the decoders and
the simulator.
"""

from __future__ import annotations

import hashlib
import os
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .gf2 import (
    BitMatrix,
    BitVec,
    GF2Error,
    complete_even_basis,
    nullspace,
    parity,
    rank,
    same_rowspace,
)


class CodeError(ValueError):
    """A code violates one of its structural invariants."""


@dataclass(frozen=True)
class SelfDualCss:
    n: int
    b1: BitMatrix
    b0: BitMatrix
    e: BitMatrix
    d: int | None = None
    name: str = "selfdual"

    @property
    def k(self) -> int:
        # number of X (equivalently Z) stabilizer generators
        return self.b0.nrows

    @property
    def full(self) -> BitMatrix:
        return BitMatrix.vstack(self.b1, self.b0)


@dataclass(frozen=True)
class TriorthogonalCode:
    n: int
    b1: BitMatrix
    b0: BitMatrix
    c: BitMatrix
    d: int | None = None
    name: str = "tri"

    @property
    def full(self) -> BitMatrix:
        return BitMatrix.vstack(self.b1, self.b0)

    @property
    def complement(self) -> BitMatrix:
        return BitMatrix.vstack(self.b0, self.c)


Code = Union[SelfDualCss, TriorthogonalCode]


@dataclass(frozen=True)
class CssCode:
    n: int
    x_stabs: BitMatrix
    z_stabs: BitMatrix
    logical_x: BitVec
    logical_z: BitVec
    name: str = "css"
    d: int | None = None

    def stabs(self, pauli: str) -> BitMatrix:
        """Stabilizers of the given Pauli type."""
        return self.x_stabs if _pauli(pauli) == "X" else self.z_stabs

    def logical(self, pauli: str) -> BitVec:
        return self.logical_x if _pauli(pauli) == "X" else self.logical_z

    def checks_for(self, error_type: str) -> BitMatrix:
        """Stabilizers that detect errors of ``error_type`` (the opposite type)."""
        return self.z_stabs if _pauli(error_type) == "X" else self.x_stabs


def _pauli(p: str) -> str:
    p = p.upper()
    if p not in ("X", "Z"):
        raise ValueError(f"Pauli type must be X or Z, got {p!r}")
    return p


# validators -------------------------------------------------------------------

def is_k_orthogonal(m: BitMatrix, k: int) -> bool:
    """True iff every 2..k distinct rows of ``m`` have even joint overlap."""
    if k not in (2, 3, 4):
        raise ValueError(f"k must be 2, 3 or 4, got {k}")
    rows = m.rows
    for j in range(2, k + 1):
        for combo in itertools.combinations(rows, j):
            acc = combo[0]
            for r in combo[1:]:
                acc &= r
            if parity(acc):
                return False
    return True


def validate_selfdual(sd: SelfDualCss) -> None:
    n = sd.n
    for name, m in (("b1", sd.b1), ("b0", sd.b0), ("e", sd.e)):
        if m.ncols != n:
            raise CodeError(f"{sd.name}: {name} has {m.ncols} columns, expected {n}")
    if sd.b1.nrows != 1 or not parity(sd.b1.rows[0]):
        raise CodeError(f"{sd.name}: b1 must be a single odd-weight row")
    if any(parity(r) for r in sd.b0.rows + sd.e.rows):
        raise CodeError(f"{sd.name}: b0 and e rows must have even weight")
    if not is_k_orthogonal(sd.full, 2):
        raise CodeError(f"{sd.name}: rows of b1|b0 are not pairwise orthogonal")
    if n != 2 * sd.b0.nrows + 1:
        raise CodeError(f"{sd.name}: n={n} but b0 has {sd.b0.nrows} rows")
    if rank(BitMatrix.vstack(sd.b1, sd.b0, sd.e)) != n or sd.e.nrows != n - 1 - sd.b0.nrows:
        raise CodeError(f"{sd.name}: b1|b0|e is not a basis of GF(2)^{n}")


def validate_tri(tri: TriorthogonalCode) -> None:
    n = tri.n
    for name, m in (("b1", tri.b1), ("b0", tri.b0), ("c", tri.c)):
        if m.ncols != n:
            raise CodeError(f"{tri.name}: {name} has {m.ncols} columns, expected {n}")
    if tri.b1.nrows != 1 or not parity(tri.b1.rows[0]):
        raise CodeError(f"{tri.name}: b1 must be a single odd-weight row")
    full = tri.full
    if not is_k_orthogonal(full, 3):
        raise CodeError(f"{tri.name}: b1|b0 is not triorthogonal")
    comp = tri.complement
    if not full.product(comp).is_zero():
        raise CodeError(f"{tri.name}: b0|c is not orthogonal to b1|b0")
    if rank(comp) != n - rank(full):
        raise CodeError(f"{tri.name}: b0|c does not span the orthogonal complement")


def validate(code: Code) -> None:
    if isinstance(code, SelfDualCss):
        validate_selfdual(code)
    elif isinstance(code, TriorthogonalCode):
        validate_tri(code)
    else:
        raise TypeError(f"not a code: {type(code).__name__}")


def as_css(code: Code) -> CssCode:
    validate(code)
    logical = code.b1.row(0)
    if isinstance(code, SelfDualCss):
        z_stabs = code.b0
    else:
        z_stabs = code.complement
    return CssCode(code.n, code.b0, z_stabs, logical, logical, code.name, code.d)


# text format --------------------------------------------------------------------

_SECTIONS = ("B1", "B0", "E", "C")


def parse_code(text: str, name: str = "custom") -> Code:
    """Parse the ``css n=<n>`` text format (sections B1, B0, E, C).

    A code with an ``E`` section is self-dual, otherwise triorthogonal.  The
    header may also carry ``d=<distance>`` and ``name=<id>``.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("css"):
        raise CodeError("code text must start with a 'css n=<n>' header")
    header = dict(tok.split("=", 1) for tok in lines[0].split()[1:] if "=" in tok)
    if "n" not in header:
        raise CodeError("header is missing n=<n>")
    n = int(header["n"])
    d = int(header["d"]) if "d" in header else None
    name = header.get("name", name)
    sections: dict[str, list[str]] = {}
    current = None
    for ln in lines[1:]:
        if ln in _SECTIONS:
            current = ln
            sections.setdefault(current, [])
            continue
        if current is None:
            raise CodeError(f"row before any section: {ln!r}")
        if len(ln) != n:
            raise CodeError(f"section {current}: row {ln!r} has length {len(ln)}, expected {n}")
        sections[current].append(ln)
    try:
        mats = {k: BitMatrix.from_strings(sections.get(k, []), n) for k in _SECTIONS}
    except GF2Error as exc:
        raise CodeError(str(exc)) from exc
    if "E" in sections:
        code: Code = SelfDualCss(n, mats["B1"], mats["B0"], mats["E"], d, name)
    else:
        code = TriorthogonalCode(n, mats["B1"], mats["B0"], mats["C"], d, name)
    validate(code)
    return code


def format_code(code: Code) -> str:
    head = f"css n={code.n}"
    if code.d is not None:
        head += f" d={code.d}"
    head += f" name={code.name}"
    out = [head]
    last = ("E", code.e) if isinstance(code, SelfDualCss) else ("C", code.c)
    for label, m in (("B1", code.b1), ("B0", code.b0), last):
        out.append(label)
        out.extend(m.to_strings())
    return "\n".join(out) + "\n"


# catalog ----------------------------------------------------------------------

_BLOCKS_TEXT = {
    "BG": """
        11111111111111111111111
        11110010010100000000001
        00010110111100000000010
        00101101111000000000100
        01011011110000000001000
        10110111100000000010000
        10011101010100000100000
        11001000111100001000000
        01100011101100010000000
        11000111011000100000000
        01111100100101000000000
        11111001001010000000000
    """,
    "EG": """
        00010010010100000000000
        00000100111000000000000
        00001001110000000000000
        00010011100000000000000
        10010101000000000000000
        10001000010100000000000
        01000000101100000000000
        01000011001000000000000
        01000100000000000000000
        01111000000000000000000
        01010010010000000000000
    """,
    "B17": """
        11111111111111111
        11000110000000000
        00000110011000000
        00000000011001010
        00000000000001111
        01100011001101100
        00110001100000000
        00000001100110000
        00011000100010000
    """,
    "E17": """
        00000110000000000
        01000010000000000
        00000010001000000
        00000000001001000
        00000000000001100
        00100001000000000
        00000001000100000
        00000001100000000
    """,
    "BRM": """
        111111111111111
        101010101010101
        011001100110011
        000111100001111
        000000011111111
    """,
    "CRM": """
        001000100010001
        000010100000101
        000000001010101
        000001100000011
        000000000110011
        000000000001111
    """,
    "BST": """
        1111111
        1010101
        0110011
        0001111
    """,
}


@lru_cache(maxsize=None)
def _block(name: str) -> BitMatrix:
    return BitMatrix.from_text(_BLOCKS_TEXT[name])


def _assemble(layout, blocks: dict[str, BitMatrix], widths: tuple[int, ...]) -> BitMatrix:
    """Build a matrix from printed block rows.

    Each cell is a block name, ``"0"`` or ``"1"`` (a single all-zero or
    all-one row, broadcast to the height of the other cells in its row).
    """
    out = []
    for cells in layout:
        heights = {blocks[c].nrows for c in cells if c not in ("0", "1")}
        height = heights.pop() if heights else 1
        if heights:
            raise CodeError(f"inconsistent block heights in {cells}")
        parts = []
        for cell, w in zip(cells, widths):
            if cell == "0":
                parts.append(BitMatrix((0,) * height, w))
            elif cell == "1":
                parts.append(BitMatrix(((1 << w) - 1,) * height, w))
            else:
                if blocks[cell].ncols != w:
                    raise CodeError(f"block {cell} has width {blocks[cell].ncols}, expected {w}")
                parts.append(blocks[cell])
        out.append(BitMatrix.hstack(*parts))
    return BitMatrix.vstack(*out)


def _named_blocks() -> dict[str, BitMatrix]:
    bg, b17, brm = _block("BG"), _block("B17"), _block("BRM")
    return {
        "BG1": bg[:1], "BG0": bg[1:], "EG": _block("EG"),
        "B17_1": b17[:1], "B17_0": b17[1:], "E17": _block("E17"),
        "BRM1": brm[:1], "BRM0": brm[1:], "CRM": _block("CRM"),
    }


# [[49,1,5]]: B_49 in block form and its complement, widths 17 | 17 | 15
_TRI49_B1 = [("B17_1", "B17_1", "BRM1")]
_TRI49_B0 = [("B17_0", "B17_0", "0"), ("0", "1", "BRM1"), ("0", "0", "BRM0")]
_TRI49_C = [("B17_0", "0", "0"), ("E17", "E17", "0"), ("0", "0", "CRM")]

# [[95,1,7]]: widths 23 | 23 | 17 | 17 | 15; C rows in the printed order
_TRI95_B1 = [("BG1", "BG1", "B17_1", "B17_1", "BRM1")]
_TRI95_B0 = [
    ("BG0", "BG0", "0", "0", "0"),
    ("0", "1", "B17_1", "B17_1", "BRM1"),
    ("0", "0", "B17_0", "B17_0", "0"),
    ("0", "0", "0", "1", "BRM1"),
    ("0", "0", "0", "0", "BRM0"),
]
_TRI95_C = [
    ("0", "BG0", "0", "0", "0"),
    ("EG", "EG", "0", "0", "0"),
    ("0", "0", "B17_0", "0", "0"),
    ("0", "0", "E17", "E17", "0"),
    ("0", "0", "0", "0", "CRM"),
]


def _golay23() -> SelfDualCss:
    bg = _block("BG")
    return SelfDualCss(23, bg[:1], bg[1:], _block("EG"), 7, "golay23")


def _color17() -> SelfDualCss:
    b = _block("B17")
    return SelfDualCss(17, b[:1], b[1:], _block("E17"), 5, "color17")


def _steane7() -> SelfDualCss:
    b = _block("BST")
    return SelfDualCss(7, b[:1], b[1:], complete_even_basis(b), 3, "steane7")


def _rm15() -> TriorthogonalCode:
    b = _block("BRM")
    return TriorthogonalCode(15, b[:1], b[1:], _block("CRM"), 3, "rm15")


def _tri49() -> TriorthogonalCode:
    blocks, widths = _named_blocks(), (17, 17, 15)
    return TriorthogonalCode(
        49,
        _assemble(_TRI49_B1, blocks, widths),
        _assemble(_TRI49_B0, blocks, widths),
        _assemble(_TRI49_C, blocks, widths),
        5,
        "tri49",
    )


def _tri95() -> TriorthogonalCode:
    blocks, widths = _named_blocks(), (23, 23, 17, 17, 15)
    return TriorthogonalCode(
        95,
        _assemble(_TRI95_B1, blocks, widths),
        _assemble(_TRI95_B0, blocks, widths),
        _assemble(_TRI95_C, blocks, widths),
        7,
        "tri95",
    )


_CATALOG = {
    "golay23": _golay23,
    "color17": _color17,
    "rm15": _rm15,
    "steane7": _steane7,
    "tri49": _tri49,
    "tri95": _tri95,
}

CATALOG_NAMES = tuple(_CATALOG)


@lru_cache(maxsize=None)
def catalog(name: str) -> Code:
    try:
        build = _CATALOG[name]
    except KeyError:
        raise KeyError(
            f"unknown code {name!r}; valid names: {', '.join(CATALOG_NAMES)}"
        ) from None
    code = build()
    validate(code)
    return code


def trivial_tri() -> TriorthogonalCode:
    """The 1-qubit distance-1 triorthogonal code (a single ancilla bit)."""
    return TriorthogonalCode(1, BitMatrix((1,), 1), BitMatrix.empty(1), BitMatrix.empty(1), 1, "trivial1")


def load_code(source: str) -> Code:
    """A catalog name, or a path to a file in the code text format."""
    if source in _CATALOG or not os.path.exists(source):
        return catalog(source)
    with open(source) as fh:
        return parse_code(fh.read(), name=source)


def catalog_checksum() -> str:
    h = hashlib.sha256()
    for name in CATALOG_NAMES:
        h.update(format_code(catalog(name)).encode())
    return h.hexdigest()


def complement_matches_nullspace(code: TriorthogonalCode) -> bool:
    return same_rowspace(code.complement, nullspace(code.full))


__all__ = [
    "CATALOG_NAMES",
    "Code",
    "CodeError",
    "CssCode",
    "SelfDualCss",
    "TriorthogonalCode",
    "as_css",
    "catalog",
    "catalog_checksum",
    "format_code",
    "is_k_orthogonal",
    "load_code",
    "parse_code",
    "trivial_tri",
    "validate",
]
