"""Integer hot kernels: numba-jitted loops with a pure-numpy fallback.

The env flag ``Z4AP_NO_NUMBA=1`` selects the numpy path; ``z4ap bench``
times both.  Every kernel works on plain int64 data and is exact — the
rational normalisation (dividing by 2^m or 4^n) happens in the callers.

Encodings: an element of Z_2^m is an m-bit integer; an element of Z_4^n
packs digit j into bits (2j, 2j+1), so the index runs 0..4^n-1.  With
LO = 0b0101..01 the digitwise mod-4 sum is the usual SWAR carry trick:

    a + b  =  (a ^ b) ^ (((a & b) & LO) << 1)
    2 * a  =  (a & LO) << 1
"""

from __future__ import annotations

import os

import numpy as np

_HAVE_NUMBA = False
try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    pass

USE_NUMBA = _HAVE_NUMBA and os.environ.get("Z4AP_NO_NUMBA", "").strip().lower() not in {
    "1",
    "true",
    "yes",
    "on",
}


# ---------------------------------------------------------------------------
# loop implementations (numba-friendly; also valid pure python)
# ---------------------------------------------------------------------------


def _wht_loop(a):
    """In-place un-normalised Walsh-Hadamard butterfly on int64[c]."""
    n = a.shape[0]
    h = 1
    while h < n:
        i = 0
        while i < n:
            for j in range(i, i + h):
                u = a[j]
                v = a[j + h]
                a[j] = u + v
                a[j + h] = u - v
            i += 2 * h
        h *= 2


def _wht_rows_loop(mat):
    """Row-wise un-normalised WHT on int64[r, c], in place."""
    rows = mat.shape[0]
    n = mat.shape[1]
    for r in range(rows):
        h = 1
        while h < n:
            i = 0
            while i < n:
                for j in range(i, i + h):
                    u = mat[r, j]
                    v = mat[r, j + h]
                    mat[r, j] = u + v
                    mat[r, j + h] = u - v
                i += 2 * h
            h *= 2


def _dft4_loop(re, im):
    """In-place un-normalised transform of Z_4^n with root -i, on Gaussian
    integers given as (re, im) int64 arrays of length 4^n."""
    n = re.shape[0]
    s = 1
    while s < n:
        block = 4 * s
        base = 0
        while base < n:
            for t in range(base, base + s):
                p1 = t + s
                p2 = t + 2 * s
                p3 = t + 3 * s
                a0 = re[t]
                b0 = im[t]
                a1 = re[p1]
                b1 = im[p1]
                a2 = re[p2]
                b2 = im[p2]
                a3 = re[p3]
                b3 = im[p3]
                re[t] = a0 + a1 + a2 + a3
                im[t] = b0 + b1 + b2 + b3
                re[p1] = a0 + b1 - a2 - b3
                im[p1] = b0 - a1 - b2 + a3
                re[p2] = a0 - a1 + a2 - a3
                im[p2] = b0 - b1 + b2 - b3
                re[p3] = a0 - b1 - a2 + b3
                im[p3] = b0 + a1 - b2 - a3
            base += block
        s *= 4


def _count_ap3_loop(members, mask, lo):
    """#{(x, d): x in members, d in G, x+d and x+2d in mask} over Z_4^n."""
    n = mask.shape[0]
    total = 0
    for k in range(members.shape[0]):
        x = members[k]
        for d in range(n):
            x1 = (x ^ d) ^ (((x & d) & lo) << 1)
            if mask[x1]:
                x2 = (x1 ^ d) ^ (((x1 & d) & lo) << 1)
                total += mask[x2]
    return total


def _first_proper_ap_loop(mask, lo):
    """Lexicographically first (x, d) with 2d != 0 and x, x+d, x+2d all in
    the masked set; (-1, -1) if none."""
    n = mask.shape[0]
    for x in range(n):
        if mask[x]:
            for d in range(n):
                if d & lo:
                    x1 = (x ^ d) ^ (((x & d) & lo) << 1)
                    if mask[x1]:
                        x2 = (x1 ^ d) ^ (((x1 & d) & lo) << 1)
                        if mask[x2]:
                            return x, d
    return -1, -1


def _family_quads_loop(flat, offsets, sizes):
    """#{(a, a', y, h): a, a' in fibre h, y in fibre a^a'^h} for a family
    on Z_2^m.  flat holds the fibres concatenated, offsets has length
    2^m + 1, sizes[h] = |fibre h|."""
    big = sizes.shape[0]
    total = 0
    for h in range(big):
        for i in range(offsets[h], offsets[h + 1]):
            a = flat[i]
            for j in range(offsets[h], offsets[h + 1]):
                total += sizes[a ^ flat[j] ^ h]
    return total


def _xor_pair_hist_loop(members, hist):
    """hist[s] += #{(a, b) in members^2 : a ^ b = s}; hist is int64[2^m]."""
    k = members.shape[0]
    for i in range(k):
        a = members[i]
        for j in range(k):
            hist[a ^ members[j]] += 1


# ---------------------------------------------------------------------------
# numpy fallbacks (vectorised, same results)
# ---------------------------------------------------------------------------


def _wht_numpy(a):
    n = a.shape[0]
    h = 1
    while h < n:
        b = a.reshape(-1, 2, h)
        u = b[:, 0, :].copy()
        v = b[:, 1, :]
        b[:, 0, :] = u + v
        b[:, 1, :] = u - v
        h *= 2


def _wht_rows_numpy(mat):
    n = mat.shape[1]
    h = 1
    while h < n:
        b = mat.reshape(mat.shape[0], -1, 2, h)
        u = b[:, :, 0, :].copy()
        v = b[:, :, 1, :]
        b[:, :, 0, :] = u + v
        b[:, :, 1, :] = u - v
        h *= 2


def _dft4_numpy(re, im):
    n = re.shape[0]
    s = 1
    while s < n:
        R = re.reshape(-1, 4, s)
        I = im.reshape(-1, 4, s)
        a0 = R[:, 0, :].copy()
        a1 = R[:, 1, :].copy()
        a2 = R[:, 2, :].copy()
        a3 = R[:, 3, :].copy()
        b0 = I[:, 0, :].copy()
        b1 = I[:, 1, :].copy()
        b2 = I[:, 2, :].copy()
        b3 = I[:, 3, :].copy()
        R[:, 0, :] = a0 + a1 + a2 + a3
        I[:, 0, :] = b0 + b1 + b2 + b3
        R[:, 1, :] = a0 + b1 - a2 - b3
        I[:, 1, :] = b0 - a1 - b2 + a3
        R[:, 2, :] = a0 - a1 + a2 - a3
        I[:, 2, :] = b0 - b1 + b2 - b3
        R[:, 3, :] = a0 - b1 - a2 + b3
        I[:, 3, :] = b0 + a1 - b2 - a3
        s *= 4


def _count_ap3_numpy(members, mask, lo):
    n = mask.shape[0]
    d = np.arange(n, dtype=np.int64)
    hit = mask.view(np.bool_)
    total = 0
    for x in members.tolist():
        x1 = (x ^ d) ^ (((x & d) & lo) << 1)
        x2 = (x1 ^ d) ^ (((x1 & d) & lo) << 1)
        total += int(np.count_nonzero(hit[x1] & hit[x2]))
    return total


def _first_proper_ap_numpy(mask, lo):
    n = mask.shape[0]
    d = np.arange(n, dtype=np.int64)
    proper = (d & lo) != 0
    hit = mask.view(np.bool_)
    for x in range(n):
        if hit[x]:
            x1 = (x ^ d) ^ (((x & d) & lo) << 1)
            x2 = (x1 ^ d) ^ (((x1 & d) & lo) << 1)
            found = np.flatnonzero(proper & hit[x1] & hit[x2])
            if found.size:
                return x, int(found[0])
    return -1, -1


def _family_quads_numpy(flat, offsets, sizes):
    big = sizes.shape[0]
    total = 0
    for h in range(big):
        seg = flat[offsets[h] : offsets[h + 1]]
        if seg.size:
            idx = (seg[:, None] ^ seg[None, :]) ^ h
            total += int(sizes[idx].sum())
    return total


def _xor_pair_hist_numpy(members, hist):
    if members.size:
        x = (members[:, None] ^ members[None, :]).ravel()
        hist += np.bincount(x, minlength=hist.shape[0]).astype(np.int64)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:
    wht_nb = njit(cache=True)(_wht_loop)
    wht_rows_nb = njit(cache=True)(_wht_rows_loop)
    dft4_nb = njit(cache=True)(_dft4_loop)
    count_ap3_nb = njit(cache=True)(_count_ap3_loop)
    first_proper_ap_nb = njit(cache=True)(_first_proper_ap_loop)
    family_quads_nb = njit(cache=True)(_family_quads_loop)
    xor_pair_hist_nb = njit(cache=True)(_xor_pair_hist_loop)

if USE_NUMBA:
    wht_int = wht_nb
    wht_rows_int = wht_rows_nb
    dft4_int = dft4_nb
    count_ap3 = count_ap3_nb
    first_proper_ap = first_proper_ap_nb
    family_quads = family_quads_nb
    xor_pair_hist = xor_pair_hist_nb
else:
    wht_int = _wht_numpy
    wht_rows_int = _wht_rows_numpy
    dft4_int = _dft4_numpy
    count_ap3 = _count_ap3_numpy
    first_proper_ap = _first_proper_ap_numpy
    family_quads = _family_quads_numpy
    xor_pair_hist = _xor_pair_hist_numpy
