"""Stabilizer tableau (CHP) with measurement of arbitrary Pauli products.

Rows ``0..n-1`` are destabilizers, ``n..2n-1`` stabilizers, row ``2n`` is
scratch.  A row ``(x, z, r)`` stands for ``(-1)^r`` times the tensor product
of ``X`` (x=1,z=0), ``Z`` (x=0,z=1) and ``Y`` (x=z=1).  Pauli operands are
given as packed ints over qubit indices.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _rowsum(x, z, r, h, i):
    n = x.shape[1]
    total = 2 * np.int64(r[h]) + 2 * np.int64(r[i])
    for j in range(n):
        x1 = np.int64(x[i, j])
        z1 = np.int64(z[i, j])
        x2 = np.int64(x[h, j])
        z2 = np.int64(z[h, j])
        if x1 == 1 and z1 == 1:
            total += z2 - x2
        elif x1 == 1:
            total += z2 * (2 * x2 - 1)
        elif z1 == 1:
            total += x2 * (1 - 2 * z2)
        x[h, j] = x2 ^ x1
        z[h, j] = z2 ^ z1
    r[h] = 1 if total % 4 == 2 else 0


@njit(cache=True)
def _anti(x, z, i, px, pz, supp):
    acc = 0
    for j in supp:
        acc ^= (x[i, j] & pz[j]) ^ (z[i, j] & px[j])
    return acc


@njit(cache=True)
def _measure(x, z, r, px, pz, supp, sign, coin):
    n = x.shape[1]
    p = -1
    for i in range(n, 2 * n):
        if _anti(x, z, i, px, pz, supp):
            p = i
            break
    if p >= 0:
        for i in range(2 * n):
            if i != p and _anti(x, z, i, px, pz, supp):
                _rowsum(x, z, r, i, p)
        x[p - n, :] = x[p, :]
        z[p - n, :] = z[p, :]
        r[p - n] = r[p]
        x[p, :] = px
        z[p, :] = pz
        r[p] = sign ^ coin
        return coin, 1
    s = 2 * n
    x[s, :] = 0
    z[s, :] = 0
    r[s] = 0
    for i in range(n):
        if _anti(x, z, i, px, pz, supp):
            _rowsum(x, z, r, s, i + n)
    return r[s] ^ sign, 0


@njit(cache=True)
def _peek(x, z, r, px, pz, supp, sign):
    n = x.shape[1]
    for i in range(n, 2 * n):
        if _anti(x, z, i, px, pz, supp):
            return 0
    s = 2 * n
    x[s, :] = 0
    z[s, :] = 0
    r[s] = 0
    for i in range(n):
        if _anti(x, z, i, px, pz, supp):
            _rowsum(x, z, r, s, i + n)
    return 1 - 2 * np.int64(r[s] ^ sign)


@njit(cache=True)
def _h(x, z, r, qubits):
    for q in qubits:
        for i in range(x.shape[0]):
            r[i] ^= x[i, q] & z[i, q]
            t = x[i, q]
            x[i, q] = z[i, q]
            z[i, q] = t


@njit(cache=True)
def _s(x, z, r, qubits):
    for q in qubits:
        for i in range(x.shape[0]):
            r[i] ^= x[i, q] & z[i, q]
            z[i, q] ^= x[i, q]


@njit(cache=True)
def _cx(x, z, r, controls, targets):
    for k in range(controls.shape[0]):
        a = controls[k]
        b = targets[k]
        for i in range(x.shape[0]):
            r[i] ^= x[i, a] & z[i, b] & (x[i, b] ^ z[i, a] ^ 1)
            x[i, b] ^= x[i, a]
            z[i, a] ^= z[i, b]


@njit(cache=True)
def _pauli(x, z, r, px, pz, supp):
    for i in range(x.shape[0]):
        r[i] ^= _anti(x, z, i, px, pz, supp)


def bits_to_array(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].copy()


class TableauError(RuntimeError):
    pass


class Tableau:
    """``n``-qubit stabilizer state, initially ``|0...0>``."""

    def __init__(self, n: int, rng: np.random.Generator | None = None):
        self.n = n
        self.x = np.zeros((2 * n + 1, n), dtype=np.uint8)
        self.z = np.zeros((2 * n + 1, n), dtype=np.uint8)
        self.r = np.zeros(2 * n + 1, dtype=np.uint8)
        idx = np.arange(n)
        self.x[idx, idx] = 1
        self.z[n + idx, idx] = 1
        self.rng = rng if rng is not None else np.random.default_rng()

    def copy(self, rng: np.random.Generator | None = None) -> Tableau:
        t = Tableau.__new__(Tableau)
        t.n = self.n
        t.x, t.z, t.r = self.x.copy(), self.z.copy(), self.r.copy()
        t.rng = rng if rng is not None else self.rng
        return t

    def _operand(self, xbits: int, zbits: int):
        px = bits_to_array(xbits, self.n)
        pz = bits_to_array(zbits, self.n)
        supp = np.flatnonzero(px | pz).astype(np.int64)
        return px, pz, supp

    # gates ----------------------------------------------------------------------
    def h(self, qubits) -> None:
        _h(self.x, self.z, self.r, np.asarray(qubits, dtype=np.int64))

    def s(self, qubits, power: int = 1) -> None:
        q = np.asarray(qubits, dtype=np.int64)
        for _ in range(power % 4):
            _s(self.x, self.z, self.r, q)

    def cx(self, controls, targets) -> None:
        c = np.asarray(controls, dtype=np.int64)
        t = np.asarray(targets, dtype=np.int64)
        if c.shape != t.shape:
            raise TableauError("controls and targets differ in length")
        _cx(self.x, self.z, self.r, c, t)

    def pauli(self, xbits: int = 0, zbits: int = 0) -> None:
        px, pz, supp = self._operand(xbits, zbits)
        _pauli(self.x, self.z, self.r, px, pz, supp)

    # measurement ------------------------------------------------------------------
    def measure(self, xbits: int, zbits: int, sign: int = 0) -> int:
        """Measure ``(-1)^sign P(x, z)``; returns 0 for outcome +1, 1 for -1."""
        px, pz, supp = self._operand(xbits, zbits)
        coin = int(self.rng.integers(2))
        m, _ = _measure(self.x, self.z, self.r, px, pz, supp, sign, coin)
        return int(m)

    def measure_qubits(self, qubits, basis: str) -> list[int]:
        out = []
        for q in qubits:
            if basis == "X":
                out.append(self.measure(1 << q, 0))
            else:
                out.append(self.measure(0, 1 << q))
        return out

    def expectation(self, xbits: int, zbits: int, sign: int = 0) -> int:
        """+1 or -1 when the Pauli is (minus) a stabilizer, else 0."""
        px, pz, supp = self._operand(xbits, zbits)
        return int(_peek(self.x, self.z, self.r, px, pz, supp, sign))

    def set_rows(self, qubits, destab, stab) -> None:
        """Overwrite the rows owned by fresh qubits with a local tableau.

        ``destab`` and ``stab`` are ``(x_bits, z_bits, sign)`` triples over
        the local indices of ``qubits``.  Valid only while those qubits are
        untouched, i.e. rows ``q`` and ``n+q`` are still ``X_q`` and ``Z_q``.
        """
        qubits = list(qubits)
        n = self.n
        for q in qubits:
            for row in (q, n + q):
                self.x[row] = 0
                self.z[row] = 0
                self.r[row] = 0
        for rows, base in ((destab, 0), (stab, n)):
            for slot, (xb, zb, sg) in zip(qubits, rows):
                row = base + slot
                for local, q in enumerate(qubits):
                    self.x[row, q] = (xb >> local) & 1
                    self.z[row, q] = (zb >> local) & 1
                self.r[row] = sg

    def is_fresh(self, qubits) -> bool:
        n = self.n
        for q in qubits:
            for row, want_x in ((q, 1), (n + q, 0)):
                x_ok = self.x[row].sum() == want_x and self.x[row, q] == want_x
                z_ok = self.z[row].sum() == 1 - want_x and self.z[row, q] == 1 - want_x
                if not (x_ok and z_ok) or self.r[row]:
                    return False
        return True

    def check_valid(self) -> bool:
        """Stabilizers commute, destabilizers commute, destab i anticommutes only with stab i."""
        n = self.n
        x = self.x[: 2 * n].astype(np.int64)
        z = self.z[: 2 * n].astype(np.int64)
        sym = (x @ z.T + z @ x.T) % 2
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        idx = np.arange(n)
        expected[idx, n + idx] = 1
        expected[n + idx, idx] = 1
        return bool(np.array_equal(sym, expected))


__all__ = ["Tableau", "TableauError", "bits_to_array"]
