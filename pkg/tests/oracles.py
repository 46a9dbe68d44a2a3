"""Slow, independent reference implementations used only by the tests."""

import itertools

import numpy as np


def to_array(rows, n):
    return np.array([[(r >> j) & 1 for j in range(n)] for r in rows], dtype=np.uint8).reshape(len(rows), n)


def rank_np(a):
    a = a.copy() % 2
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        hit = np.nonzero(a[r:, c])[0]
        if hit.size == 0:
            continue
        p = r + hit[0]
        a[[r, p]] = a[[p, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def span(rows):
    """Every GF(2) combination of ``rows`` (ints), by plain iteration."""
    out = [0]
    for r in rows:
        out = out + [v ^ r for v in out]
    return out


def min_logical_weight(checks, opposing, n):
    """Smallest vector orthogonal to ``checks`` with odd overlap on ``opposing``, by full enumeration."""
    best = None
    for w in range(1, n + 1):
        for combo in itertools.combinations(range(n), w):
            v = sum(1 << j for j in combo)
            if all(bin(v & c).count("1") % 2 == 0 for c in checks) and bin(v & opposing).count("1") % 2:
                return w
    return best


def min_logical_weight_by_span(kernel_rows, opposing):
    """Same quantity from an explicit basis of the checks' kernel."""
    best = None
    for v in span(kernel_rows):
        if bin(v & opposing).count("1") % 2:
            w = bin(v).count("1")
            best = w if best is None else min(best, w)
    return best


def coset_weights_brute(checks, logical, n):
    """``{syndrome: (w0, w1)}`` over all 2^n vectors, split by overlap parity with ``logical``."""
    cols = np.array([sum(((c >> j) & 1) << i for i, c in enumerate(checks)) for j in range(n)], dtype=np.int64)
    lcol = np.array([(logical >> j) & 1 for j in range(n)], dtype=np.int64)
    m = len(checks)
    best = np.full((1 << m, 2), 10**9, dtype=np.int64)
    chunk = 1 << 14
    for start in range(0, 1 << n, chunk):
        v = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = (v[:, None] >> np.arange(n)) & 1
        syn = np.bitwise_xor.reduce(bits * cols, axis=1)
        par = (bits @ lcol) & 1
        w = bits.sum(axis=1)
        np.minimum.at(best, (syn, par), w)
    return best


def residues_mod8(gens, offset):
    out0, out1 = set(), set()
    for v in span(gens):
        out0.add(bin(v).count("1") % 8)
        out1.add(bin(v ^ offset).count("1") % 8)
    return out0, out1


# dense state-vector simulation of small Clifford circuits

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j])


def _single(n, q, g):
    # qubit 0 is the most significant tensor factor
    ops = [_I] * n
    ops[q] = g
    out = ops[0]
    for o in ops[1:]:
        out = np.kron(out, o)
    return out


def pauli_matrix(n, xbits, zbits):
    out = np.array([[1]], dtype=complex)
    for q in range(n):
        x, z = (xbits >> q) & 1, (zbits >> q) & 1
        g = _Y if x and z else _X if x else _Z if z else _I
        out = np.kron(out, g)
    return out


def apply_gate(state, n, gate, qubits):
    if gate == "h":
        return _single(n, qubits[0], _H) @ state
    if gate == "s":
        return _single(n, qubits[0], _S) @ state
    if gate == "cx":
        c, t = qubits
        p0 = _single(n, c, np.diag([1, 0]).astype(complex))
        p1 = _single(n, c, np.diag([0, 1]).astype(complex))
        return (p0 + p1 @ _single(n, t, _X)) @ state
    raise ValueError(gate)
