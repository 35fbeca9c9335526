"""JIT-compiled integer kernels; importing this module requires numba.

All state is int64.  Linear parts of affine Weyl group elements range over
the finite Weyl group, so matrix entries are bounded by a small constant
and translation vectors grow at most linearly with gallery length; int64
never overflows for the word lengths the callers allow.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def naive_dfs(mats, tvecs, eroots, esigns, m0, t0, e0,
              max_folds, start_folds, start_positive, cap_pow):
    """Depth-first sweep of all foldings of one gallery word.

    Every subset of positions is visited (bounded only by the fold budget
    when max_folds >= 0); a positivity flag is carried along and decides
    at the leaf whether the end alcove is recorded.  Distinct end alcoves
    are collected in an open-addressing hash table.

    Returns (keys, used, hist, leaves, ok); ok goes False if the table
    filled up, in which case the caller must retry with a bigger cap_pow.
    """
    m = mats.shape[0]
    n = mats.shape[1]
    cap = 1 << cap_pow
    mask = cap - 1
    keys = np.zeros((cap, n * n + n), dtype=np.int64)
    used = np.zeros(cap, dtype=np.uint8)
    hist = np.zeros(m + start_folds + 1, dtype=np.int64)
    stored = 0
    leaves = 0
    ok = True

    SM = np.zeros((m + 1, n, n), dtype=np.int64)
    ST = np.zeros((m + 1, n), dtype=np.int64)
    SE = np.zeros((m + 1, n), dtype=np.int64)
    SF = np.zeros(m + 1, dtype=np.int64)
    SP = np.zeros(m + 1, dtype=np.uint8)
    CH = np.zeros(m + 1, dtype=np.int8)
    for i in range(n):
        for j in range(n):
            SM[0, i, j] = m0[i, j]
        ST[0, i] = t0[i]
        SE[0, i] = e0[i]
    SF[0] = start_folds
    SP[0] = start_positive

    level = 0
    while level >= 0:
        if level == m:
            leaves += 1
            if SP[level] == 1:
                hist[SF[level]] += 1
                h = np.uint64(1469598103934665603)
                for i in range(n):
                    for j in range(n):
                        h = (h ^ np.uint64(SM[level, i, j] + 0x40000000)) \
                            * np.uint64(1099511628211)
                for i in range(n):
                    h = (h ^ np.uint64(ST[level, i] + 0x40000000)) \
                        * np.uint64(1099511628211)
                idx = np.int64(h & np.uint64(mask))
                while True:
                    if used[idx] == 0:
                        used[idx] = 1
                        p = 0
                        for i in range(n):
                            for j in range(n):
                                keys[idx, p] = SM[level, i, j]
                                p += 1
                        for i in range(n):
                            keys[idx, p] = ST[level, i]
                            p += 1
                        stored += 1
                        if stored * 10 >= cap * 9:
                            ok = False
                        break
                    same = True
                    p = 0
                    for i in range(n):
                        for j in range(n):
                            if keys[idx, p] != SM[level, i, j]:
                                same = False
                            p += 1
                    if same:
                        for i in range(n):
                            if keys[idx, p] != ST[level, i]:
                                same = False
                            p += 1
                    if same:
                        break
                    idx = (idx + 1) & mask
                if not ok:
                    break
            level -= 1
            continue
        c = CH[level]
        if c == 0:
            CH[level] = 1
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for q in range(n):
                        acc += SM[level, i, q] * mats[level, q, j]
                    SM[level + 1, i, j] = acc
            for i in range(n):
                acc = ST[level, i]
                for q in range(n):
                    acc += SM[level, i, q] * tvecs[level, q]
                ST[level + 1, i] = acc
            for i in range(n):
                acc = 0
                for q in range(n):
                    acc += mats[level, i, q] * SE[level, q]
                SE[level + 1, i] = acc
            SF[level + 1] = SF[level]
            SP[level + 1] = SP[level]
            CH[level + 1] = 0
            level += 1
        elif c == 1:
            CH[level] = 2
            if max_folds >= 0 and SF[level] >= max_folds:
                continue
            acc = 0
            for q in range(n):
                acc += eroots[level, q] * SE[level, q]
            sgn = 1 if acc > 0 else (-1 if acc < 0 else 0)
            good = 1 if sgn == esigns[level] else 0
            for i in range(n):
                for j in range(n):
                    SM[level + 1, i, j] = SM[level, i, j]
                ST[level + 1, i] = ST[level, i]
                SE[level + 1, i] = SE[level, i]
            SF[level + 1] = SF[level] + 1
            SP[level + 1] = SP[level] & good
            CH[level + 1] = 0
            level += 1
        else:
            level -= 1
    return keys, used, hist, leaves, ok


@njit(cache=True, nogil=True)
def cross_fold_step(rows, ms, ts, eroot, esign):
    """One letter of the one-direction shadow recursion.

    rows encode (M, t, e) flattened; output holds the crossed image of
    every row plus a copy of each row whose fold test passes.
    """
    k = rows.shape[0]
    w = rows.shape[1]
    n = ms.shape[0]
    base_t = n * n
    base_e = base_t + n
    out = np.empty((2 * k, w), dtype=np.int64)
    cnt = 0
    for r in range(k):
        for i in range(n):
            for j in range(n):
                acc = 0
                for q in range(n):
                    acc += rows[r, i * n + q] * ms[q, j]
                out[cnt, i * n + j] = acc
        for i in range(n):
            acc = rows[r, base_t + i]
            for q in range(n):
                acc += rows[r, i * n + q] * ts[q]
            out[cnt, base_t + i] = acc
        for i in range(n):
            acc = 0
            for q in range(n):
                acc += ms[i, q] * rows[r, base_e + q]
            out[cnt, base_e + i] = acc
        cnt += 1
        acc = 0
        for q in range(n):
            acc += eroot[q] * rows[r, base_e + q]
        sgn = 1 if acc > 0 else (-1 if acc < 0 else 0)
        if sgn == esign:
            for j in range(w):
                out[cnt, j] = rows[r, j]
            cnt += 1
    return out[:cnt]


@njit(cache=True, nogil=True)
def left_mul_rows(rows, ms, ts):
    """Left-multiply rows encoding (M, t) by a fixed element (ms, ts)."""
    k = rows.shape[0]
    n = ms.shape[0]
    base_t = n * n
    out = np.empty_like(rows)
    for r in range(k):
        for i in range(n):
            for j in range(n):
                acc = 0
                for q in range(n):
                    acc += ms[i, q] * rows[r, q * n + j]
                out[r, i * n + j] = acc
        for i in range(n):
            acc = ts[i]
            for q in range(n):
                acc += ms[i, q] * rows[r, base_t + q]
            out[r, base_t + i] = acc
    return out
