"""Code doubling: two copies of a self-dual code plus a smaller triorthogonal code.

Qubits are ordered ``[self-dual block 1 | self-dual block 2 | tri block]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .codes import CssCode, SelfDualCss, TriorthogonalCode, as_css, validate
from .gf2 import BitMatrix


def _zeros(rows: int, n: int) -> BitMatrix:
    return BitMatrix((0,) * rows, n)


def _ones(n: int) -> BitMatrix:
    return BitMatrix(((1 << n) - 1,), n)


def doubled_blocks(
    sd_b1: BitMatrix, sd_b0: BitMatrix, tri_b1: BitMatrix, tri_b0: BitMatrix
) -> tuple[BitMatrix, BitMatrix]:
    """The doubled ``(b1, b0)`` pair for arbitrary outer/inner block matrices.

    Works for any k-orthogonal outer matrix and (k+1)-orthogonal inner one,
    which is what makes the construction iterate.
    """
    n_sd, n_tri = sd_b1.ncols, tri_b1.ncols
    b1 = BitMatrix.hstack(sd_b1, sd_b1, tri_b1)
    b0 = BitMatrix.vstack(
        BitMatrix.hstack(sd_b0, sd_b0, _zeros(sd_b0.nrows, n_tri)),
        BitMatrix.hstack(_zeros(1, n_sd), _ones(n_sd), tri_b1),
        BitMatrix.hstack(_zeros(tri_b0.nrows, n_sd), _zeros(tri_b0.nrows, n_sd), tri_b0),
    )
    return b1, b0


def predicted_distance(sd_d: int, tri_d: int) -> int:
    if sd_d < 1 or tri_d < 1:
        raise ValueError("distances must be positive")
    return min(sd_d, tri_d + 2)


@dataclass(frozen=True)
class DoubledCode:
    base: TriorthogonalCode
    sd: SelfDualCss
    tri: TriorthogonalCode

    @property
    def n_sd(self) -> int:
        return self.sd.n

    @property
    def n_tri(self) -> int:
        return self.tri.n

    @cached_property
    def complement_std(self) -> BitMatrix:
        return complement_standard(self)

    @cached_property
    def complement_lowweight(self) -> BitMatrix:
        return complement_lowweight(self)

    @cached_property
    def tri_logical_z(self) -> int:
        """Lexicographically first minimum-weight logical Z of the inner code."""
        from .analysis import min_weight_logical

        tri = self.tri
        if tri.n == 1:
            return 1
        report = min_weight_logical(as_css(tri), "Z", tri.n)
        return report.witness.bits


def double(sd: SelfDualCss, tri: TriorthogonalCode) -> DoubledCode:
    validate(sd)
    validate(tri)
    n_sd, n_tri = sd.n, tri.n
    b1, b0 = doubled_blocks(sd.b1, sd.b0, tri.b1, tri.b0)
    c = BitMatrix.vstack(
        BitMatrix.hstack(sd.b0, _zeros(sd.b0.nrows, n_sd), _zeros(sd.b0.nrows, n_tri)),
        BitMatrix.hstack(sd.e, sd.e, _zeros(sd.e.nrows, n_tri)),
        BitMatrix.hstack(_zeros(tri.c.nrows, n_sd), _zeros(tri.c.nrows, n_sd), tri.c),
    )
    d = None
    if sd.d is not None and tri.d is not None:
        d = predicted_distance(sd.d, tri.d)
    base = TriorthogonalCode(2 * n_sd + n_tri, b1, b0, c, d, f"double({sd.name},{tri.name})")
    validate(base)
    return DoubledCode(base, sd, tri)


def complement_standard(d: DoubledCode) -> BitMatrix:
    """Orthogonal complement of ``b1 | b0``: the shared rows, then the extra ones."""
    return BitMatrix.vstack(d.base.b0, d.base.c)


def complement_lowweight(d: DoubledCode) -> BitMatrix:
    """Lower-weight complement basis built from weight-2 self-dual generators.

    Rows: ``(M|M|0)`` with ``M`` the adjacent pairs ``e_i + e_{i+1}``,
    ``(B_sd,0|0|0)``, ``(0|B_sd,1|L_Z)`` and ``(0|0|b0_tri ; c_tri)``.
    """
    sd, tri = d.sd, d.tri
    n_sd, n_tri = sd.n, tri.n
    m = BitMatrix(tuple(3 << i for i in range(n_sd - 1)), n_sd)
    comp_tri = tri.complement
    return BitMatrix.vstack(
        BitMatrix.hstack(m, m, _zeros(m.nrows, n_tri)),
        BitMatrix.hstack(sd.b0, _zeros(sd.b0.nrows, n_sd), _zeros(sd.b0.nrows, n_tri)),
        BitMatrix.hstack(_zeros(1, n_sd), sd.b1, BitMatrix((d.tri_logical_z,), n_tri)),
        BitMatrix.hstack(
            _zeros(comp_tri.nrows, n_sd), _zeros(comp_tri.nrows, n_sd), comp_tri
        ),
    )


def doubled_form(d: DoubledCode) -> CssCode:
    """The doubled code as a CSS code; the first ``b0`` rows of each type are shared."""
    base = d.base
    return CssCode(base.n, base.b0, complement_standard(d), base.b1.row(0), base.b1.row(0),
                   base.name, base.d)


def extended_form(d: DoubledCode) -> CssCode:
    """The self-dual code on block 1 with blocks 2 and 3 holding a logical Bell pair.

    Generators are ordered shared rows first (``b0`` of the doubled code),
    then ``(B_sd,0|0|0)`` for both types and ``(0|0|C_tri)`` for Z.  The
    logical operators are ``(B_sd,1|0|0)``.
    """
    sd, tri, base = d.sd, d.tri, d.base
    n_sd, n_tri = sd.n, tri.n
    first = BitMatrix.hstack(sd.b0, _zeros(sd.b0.nrows, n_sd), _zeros(sd.b0.nrows, n_tri))
    tri_c = BitMatrix.hstack(_zeros(tri.c.nrows, n_sd), _zeros(tri.c.nrows, n_sd), tri.c)
    logical = BitMatrix.hstack(sd.b1, _zeros(1, n_sd), _zeros(1, n_tri)).row(0)
    return CssCode(
        base.n,
        BitMatrix.vstack(base.b0, first),
        BitMatrix.vstack(base.b0, first, tri_c),
        logical,
        logical,
        f"extend({sd.name},{tri.name})",
        sd.d,
    )


__all__ = [
    "DoubledCode",
    "doubled_form",
    "extended_form",
    "complement_lowweight",
    "complement_standard",
    "double",
    "doubled_blocks",
    "predicted_distance",
]
