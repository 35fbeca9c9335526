"""Backend dispatch for the hot enumeration loops.

Three interchangeable implementations of the same integer arithmetic:

* ``numba``: JIT-compiled kernels from ``_kernels_numba`` (the default
  when numba imports);
* ``numpy``: vectorized batch arithmetic, the fallback path;
* ``python``: plain-int reference, also the path every non-chamber
  orientation takes since those evaluate orientation objects.

Set ``COXETER_SHADOWS_KERNEL`` to one of the three names to force a
backend; ``COXETER_SHADOWS_THREADS`` splits the naive sweep over a thread
pool (results are merged into one sorted set, so the answer does not
depend on the thread count).

Row encodings: an end alcove is the flattening of its linear part plus
the translation vector (n*n + n ints); enumeration states append the
pulled-back direction vector e = M^-1 d (n more ints).  All rows are
int64; linear parts range over the finite Weyl group and translations
grow linearly with word length, so the supported word caps keep every
entry far from overflow.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coxeter import CoxeterDatum, GroupElement

try:
    from . import _kernels_numba as _nb

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - depends on the environment
    _nb = None
    HAS_NUMBA = False

BACKENDS = ("numba", "numpy", "python")
_CHUNK = 1 << 14


def active_backend(override: str | None = None) -> str:
    """The backend in force: the override, the env var, or the default."""
    name = override or os.environ.get("COXETER_SHADOWS_KERNEL", "")
    name = name.strip().lower()
    if name and name not in BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; pick from {BACKENDS}")
    if not name:
        name = "numba" if HAS_NUMBA else "numpy"
    if name == "numba" and not HAS_NUMBA:
        name = "numpy"
    return name


def thread_count() -> int:
    raw = os.environ.get("COXETER_SHADOWS_THREADS", "1").strip()
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# -- shared encoding helpers ----------------------------------------------


def letter_arrays(datum: CoxeterDatum, letters):
    """Per-letter matrices, translations, wall roots and fold signs.

    The fold test at a letter s compares the sign of <wall root, e>
    against +1 for spherical letters and -1 for the affine letter, where
    e is the direction vector pulled back through the current prefix.
    """
    n = datum.rank
    m = len(letters)
    mats = np.zeros((m, n, n), dtype=np.int64)
    tvecs = np.zeros((m, n), dtype=np.int64)
    eroots = np.zeros((m, n), dtype=np.int64)
    esigns = np.zeros(m, dtype=np.int64)
    for i, s in enumerate(letters):
        g = datum.generator(s)
        mats[i] = g.mat
        tvecs[i] = g.tvec
        root, _level = datum._gen_wall[s]
        eroots[i] = root
        esigns[i] = 1 if s != 0 else -1
    return mats, tvecs, eroots, esigns


def state_row(x: GroupElement, evec) -> np.ndarray:
    n = x.datum.rank
    row = np.empty(n * n + (2 * n if evec is not None else n), dtype=np.int64)
    flat = [c for r in x.mat for c in r]
    row[: n * n] = flat
    row[n * n: n * n + n] = x.tvec
    if evec is not None:
        row[n * n + n:] = evec
    return row


def rows_to_elements(datum: CoxeterDatum, rows) -> list[GroupElement]:
    n = datum.rank
    out = []
    for row in rows:
        mat = tuple(
            tuple(int(row[i * n + j]) for j in range(n)) for i in range(n)
        )
        t = tuple(int(row[n * n + i]) for i in range(n))
        out.append(GroupElement(datum, mat, t))
    return out


def unique_rows(arrays) -> np.ndarray:
    arrays = [a for a in arrays if len(a)]
    if not arrays:
        return np.empty((0, 0), dtype=np.int64)
    return np.unique(np.concatenate(arrays), axis=0)


# -- naive sweep: all foldings of one word --------------------------------


def naive_weyl(datum, letters, start, dvec, max_folds, backend=None):
    """All-subsets sweep returning (end rows, fold histogram, leaf count).

    End rows are the distinct end alcoves of the positively folded
    galleries, sorted; the histogram counts positive galleries by their
    number of folds.  The sweep always visits every subset of positions
    within the fold budget, positivity only filters what gets recorded.
    """
    backend = active_backend(backend)
    n = datum.rank
    m = len(letters)
    mats, tvecs, eroots, esigns = letter_arrays(datum, letters)
    inv = start.inverse()
    e0 = np.array(
        [sum(inv.mat[i][k] * dvec[k] for k in range(n)) for i in range(n)],
        dtype=np.int64,
    )
    m0 = np.array(start.mat, dtype=np.int64)
    t0 = np.array(start.tvec, dtype=np.int64)
    bound = -1 if max_folds is None else int(max_folds)

    threads = thread_count()
    split = 0
    while threads > (1 << split) and split + 4 <= m:
        split += 1
    if threads > 1 and split:
        jobs = _prefix_jobs(mats, tvecs, eroots, esigns, m0, t0, e0, split, bound)
        rest = slice(split, m)
        args = (mats[rest], tvecs[rest], eroots[rest], esigns[rest])
    else:
        jobs = [(m0, t0, e0, 0, 1)]
        args = (mats, tvecs, eroots, esigns)

    def run(job):
        jm, jt, je, jf, jp = job
        return _naive_one(backend, args, jm, jt, je, bound, jf, jp)

    if len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(jobs[0])]

    hist = np.zeros(m + 1, dtype=np.int64)
    leaves = 0
    chunks = []
    for rows, h, lv in parts:
        chunks.append(rows)
        hist[: len(h)] += h
        leaves += lv
    ends = unique_rows(chunks)
    histogram = {int(i): int(c) for i, c in enumerate(hist) if c}
    return ends, histogram, leaves


def _prefix_jobs(mats, tvecs, eroots, esigns, m0, t0, e0, split, bound):
    """Expand the first ``split`` letters into explicit start states."""
    states = [(m0, t0, e0, 0, 1)]
    for i in range(split):
        nxt = []
        for sm, st, se, nf, pos in states:
            nxt.append((sm @ mats[i], sm @ tvecs[i] + st, mats[i] @ se, nf, pos))
            if bound < 0 or nf < bound:
                pair = int(eroots[i] @ se)
                sgn = (pair > 0) - (pair < 0)
                good = 1 if sgn == esigns[i] else 0
                nxt.append((sm, st, se, nf + 1, pos & good))
        states = nxt
    return states


def _naive_one(backend, args, m0, t0, e0, bound, start_folds, start_pos):
    mats, tvecs, eroots, esigns = args
    if backend == "numba":
        cap_pow = 14
        while True:
            keys, used, h, leaves, ok = _nb.naive_dfs(
                mats, tvecs, eroots, esigns, m0, t0, e0,
                bound, start_folds, start_pos, cap_pow)
            if ok:
                return keys[used.astype(bool)], h, leaves
            cap_pow += 2
    if backend == "numpy":
        return _naive_numpy(mats, tvecs, eroots, esigns, m0, t0, e0,
                            bound, start_folds, start_pos)
    return _naive_python(mats, tvecs, eroots, esigns, m0, t0, e0,
                         bound, start_folds, start_pos)


def _naive_numpy(mats, tvecs, eroots, esigns, m0, t0, e0,
                 bound, start_folds, start_pos):
    m, n, _ = mats.shape
    hist = np.zeros(m + start_folds + 1, dtype=np.int64)
    leaves = 0
    ends = []

    def recurse(level, M, T, E, NF, OK):
        nonlocal leaves
        k = M.shape[0]
        if k > _CHUNK:
            half = k // 2
            recurse(level, M[:half], T[:half], E[:half], NF[:half], OK[:half])
            recurse(level, M[half:], T[half:], E[half:], NF[half:], OK[half:])
            return
        if level == m:
            leaves += k
            pos = OK
            if pos.any():
                hist_part = np.bincount(NF[pos], minlength=hist.shape[0])
                hist[: hist_part.shape[0]] += hist_part
                rows = np.concatenate(
                    [M[pos].reshape(pos.sum(), n * n), T[pos]], axis=1)
                ends.append(np.unique(rows, axis=0))
            return
        ms, ts, er, es = mats[level], tvecs[level], eroots[level], esigns[level]
        M2 = np.einsum("kab,bc->kac", M, ms)
        T2 = np.einsum("kab,b->ka", M, ts) + T
        E2 = np.einsum("ab,kb->ka", ms, E)
        if bound >= 0:
            sel = NF < bound
        else:
            sel = np.ones(k, dtype=bool)
        pair = E[sel] @ er
        good = np.sign(pair) == es
        M3 = np.concatenate([M2, M[sel]])
        T3 = np.concatenate([T2, T[sel]])
        E3 = np.concatenate([E2, E[sel]])
        NF3 = np.concatenate([NF, NF[sel] + 1])
        OK3 = np.concatenate([OK, OK[sel] & good])
        recurse(level + 1, M3, T3, E3, NF3, OK3)

    recurse(
        0,
        m0[None, :, :].copy(),
        t0[None, :].copy(),
        e0[None, :].copy(),
        np.full(1, start_folds, dtype=np.int64),
        np.full(1, bool(start_pos)),
    )
    rows = unique_rows(ends) if ends else np.empty((0, n * n + n), dtype=np.int64)
    return rows, hist, leaves


def _naive_python(mats, tvecs, eroots, esigns, m0, t0, e0,
                  bound, start_folds, start_pos):
    m, n, _ = mats.shape
    gmats = [tuple(tuple(int(c) for c in row) for row in mats[i]) for i in range(m)]
    gts = [tuple(int(c) for c in tvecs[i]) for i in range(m)]
    ger = [tuple(int(c) for c in eroots[i]) for i in range(m)]
    ges = [int(esigns[i]) for i in range(m)]
    hist = {}
    ends = set()
    leaves = 0

    def walk(level, sm, st, se, nf, pos):
        nonlocal leaves
        if level == m:
            leaves += 1
            if pos:
                hist[nf] = hist.get(nf, 0) + 1
                ends.add((sm, st))
            return
        ms, ts = gmats[level], gts[level]
        cm = tuple(
            tuple(sum(sm[i][q] * ms[q][j] for q in range(n)) for j in range(n))
            for i in range(n)
        )
        ct = tuple(
            st[i] + sum(sm[i][q] * ts[q] for q in range(n)) for i in range(n)
        )
        ce = tuple(sum(ms[i][q] * se[q] for q in range(n)) for i in range(n))
        walk(level + 1, cm, ct, ce, nf, pos)
        if bound < 0 or nf < bound:
            pair = sum(a * b for a, b in zip(ger[level], se))
            sgn = (pair > 0) - (pair < 0)
            walk(level + 1, sm, st, se, nf + 1, pos and sgn == ges[level])

    walk(
        0,
        tuple(tuple(int(c) for c in row) for row in m0),
        tuple(int(c) for c in t0),
        tuple(int(c) for c in e0),
        start_folds,
        bool(start_pos),
    )
    if ends:
        rows = np.array(
            sorted([c for r in sm for c in r] + list(st) for sm, st in ends),
            dtype=np.int64,
        )
    else:
        rows = np.empty((0, n * n + n), dtype=np.int64)
    h = np.zeros(m + start_folds + 1, dtype=np.int64)
    for k, v in hist.items():
        h[k] = v
    return rows, h, leaves


# -- one-direction recursion step ------------------------------------------


def cross_fold_step(rows, gen_mat, gen_tvec, eroot, esign, backend=None):
    """Apply one letter: every state crossed, fold-allowed states kept."""
    backend = active_backend(backend)
    if backend == "numba":
        out = _nb.cross_fold_step(rows, gen_mat, gen_tvec, eroot, esign)
        return np.unique(out, axis=0)
    if backend == "numpy":
        n = gen_mat.shape[0]
        k = rows.shape[0]
        M = rows[:, : n * n].reshape(k, n, n)
        T = rows[:, n * n: n * n + n]
        E = rows[:, n * n + n:]
        M2 = np.einsum("kab,bc->kac", M, gen_mat).reshape(k, n * n)
        T2 = np.einsum("kab,b->ka", M, gen_tvec) + T
        E2 = np.einsum("ab,kb->ka", gen_mat, E)
        crossed = np.concatenate([M2, T2, E2], axis=1)
        pair = E @ eroot
        keep = rows[np.sign(pair) == esign]
        return np.unique(np.concatenate([crossed, keep]), axis=0)
    # python reference
    n = gen_mat.shape[0]
    out = set()
    for row in rows:
        sm = row[: n * n]
        cm = [
            sum(int(sm[i * n + q]) * int(gen_mat[q][j]) for q in range(n))
            for i in range(n)
            for j in range(n)
        ]
        ct = [
            int(row[n * n + i])
            + sum(int(sm[i * n + q]) * int(gen_tvec[q]) for q in range(n))
            for i in range(n)
        ]
        ce = [
            sum(int(gen_mat[i][q]) * int(row[n * n + n + q]) for q in range(n))
            for i in range(n)
        ]
        out.add(tuple(cm + ct + ce))
        pair = sum(int(a) * int(b) for a, b in zip(eroot, row[n * n + n:]))
        if ((pair > 0) - (pair < 0)) == esign:
            out.add(tuple(int(c) for c in row))
    return np.array(sorted(out), dtype=np.int64)


def left_mul_rows(rows, gen_mat, gen_tvec, backend=None):
    """Left-multiply (M, t) rows by a fixed element."""
    backend = active_backend(backend)
    if backend == "numba":
        return _nb.left_mul_rows(rows, gen_mat, gen_tvec)
    n = gen_mat.shape[0]
    k = rows.shape[0]
    if backend == "numpy":
        M = rows[:, : n * n].reshape(k, n, n)
        T = rows[:, n * n:]
        M2 = np.einsum("ab,kbc->kac", gen_mat, M).reshape(k, n * n)
        T2 = np.einsum("ab,kb->ka", gen_mat, T) + gen_tvec
        return np.concatenate([M2, T2], axis=1)
    out = np.empty_like(rows)
    for r in range(k):
        for i in range(n):
            for j in range(n):
                out[r, i * n + j] = sum(
                    int(gen_mat[i][q]) * int(rows[r, q * n + j]) for q in range(n)
                )
            out[r, n * n + i] = int(gen_tvec[i]) + sum(
                int(gen_mat[i][q]) * int(rows[r, n * n + q]) for q in range(n)
            )
    return out
