"""Compiled inner loops for the exhaustive searches.

Vectors are packed ``uint64`` words (bit ``i`` of word ``w`` is index
``64*w + i``).  All kernels release the GIL so shards can run on threads.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True, nogil=True)
def scan_shard(cols, target, w, first, out, record):
    """Walk all ``w``-subsets of ``range(n)`` whose smallest element is ``first``.

    Subsets are visited in lexicographic order while the XOR of their
    columns is updated incrementally: moving one position of the odometer
    costs one XOR per word.  With an empty ``record`` the walk stops at the
    first subset whose XOR equals ``target`` and writes it to ``out``
    (returning 1).  Otherwise every XOR is written to ``record`` in visit
    order and the number written is returned.
    """
    n, nw = cols.shape
    recording = record.shape[0] > 0
    count = 0
    if first > n - w:
        return 0
    idx = np.empty(w, np.int64)
    part = np.zeros((w, nw), np.uint64)
    idx[0] = first
    for t in range(nw):
        part[0, t] = cols[first, t]
    if w == 1:
        if recording:
            for t in range(nw):
                record[0, t] = part[0, t]
            return 1
        for t in range(nw):
            if part[0, t] != target[t]:
                return 0
        out[0] = first
        return 1
    for k in range(1, w - 1):
        idx[k] = idx[k - 1] + 1
        for t in range(nw):
            part[k, t] = part[k - 1, t] ^ cols[idx[k], t]
    while True:
        pre = part[w - 2]
        start = idx[w - 2] + 1
        if recording:
            for j in range(start, n):
                for t in range(nw):
                    record[count, t] = pre[t] ^ cols[j, t]
                count += 1
        elif nw == 1:
            want = pre[0] ^ target[0]
            for j in range(start, n):
                if cols[j, 0] == want:
                    for t in range(w - 1):
                        out[t] = idx[t]
                    out[w - 1] = j
                    return 1
        else:
            for j in range(start, n):
                hit = True
                for t in range(nw):
                    if pre[t] ^ cols[j, t] != target[t]:
                        hit = False
                        break
                if hit:
                    for t in range(w - 1):
                        out[t] = idx[t]
                    out[w - 1] = j
                    return 1
        k = w - 2
        while k >= 1 and idx[k] == n - w + k:
            k -= 1
        if k == 0:
            return count
        idx[k] += 1
        for t in range(nw):
            part[k, t] = part[k - 1, t] ^ cols[idx[k], t]
        for m in range(k + 1, w - 1):
            idx[m] = idx[m - 1] + 1
            for t in range(nw):
                part[m, t] = part[m - 1, t] ^ cols[idx[m], t]


@njit(cache=True, nogil=True)
def fill_class_table(keys, max_weight, table_w, table_rep):
    """Minimum weight and lexicographically first representative per class.

    ``keys[j]`` is the class label contributed by index ``j`` (labels combine
    by XOR).  Subsets are visited by weight, then lexicographically; the first
    visit to a class fixes its entry.  ``table_w`` must start at -1.  Returns
    the number of classes filled.  Representatives are bitmasks, so
    ``len(keys) <= 64``.
    """
    n = keys.shape[0]
    nkeys = table_w.shape[0]
    filled = 0
    if table_w[0] < 0:
        table_w[0] = 0
        table_rep[0] = 0
        filled += 1
    idx = np.empty(max(max_weight, 1), np.int64)
    part = np.zeros(max(max_weight, 1), np.int64)
    for w in range(1, max_weight + 1):
        if filled == nkeys or w > n:
            break
        for k in range(w):
            idx[k] = k
            part[k] = keys[k] if k == 0 else part[k - 1] ^ keys[k]
        while True:
            key = part[w - 1]
            if table_w[key] < 0:
                table_w[key] = w
                rep = np.uint64(0)
                for k in range(w):
                    rep |= np.uint64(1) << np.uint64(idx[k])
                table_rep[key] = rep
                filled += 1
            k = w - 1
            while k >= 0 and idx[k] == n - w + k:
                k -= 1
            if k < 0:
                break
            idx[k] += 1
            part[k] = keys[idx[k]] if k == 0 else part[k - 1] ^ keys[idx[k]]
            for m in range(k + 1, w):
                idx[m] = idx[m - 1] + 1
                part[m] = part[m - 1] ^ keys[idx[m]]
    return filled


@njit(cache=True, nogil=True)
def gray_residues(gens, offset):
    """Weight residues mod 8 over ``span(gens)`` and ``offset + span(gens)``.

    Visits the span in Gray-code order, so each step XORs in one generator.
    Returns two 8-bit masks (bit ``r`` set when some weight is ``r`` mod 8)
    and the minimum weight found on the offset coset.
    """
    r, nw = gens.shape
    cur = np.zeros(nw, np.uint64)
    mask0 = 0
    mask1 = 0
    best = 1 << 30
    total = np.int64(1) << r
    for i in range(total):
        if i > 0:
            g = 0
            x = i
            while (x & 1) == 0:
                x >>= 1
                g += 1
            for t in range(nw):
                cur[t] ^= gens[g, t]
        w0 = 0
        w1 = 0
        for t in range(nw):
            w0 += popcount64(cur[t])
            w1 += popcount64(cur[t] ^ offset[t])
        mask0 |= 1 << (w0 & 7)
        mask1 |= 1 << (w1 & 7)
        if w1 < best:
            best = w1
    return mask0, mask1, best
