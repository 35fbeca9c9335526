"""The three backends must be bit-for-bit interchangeable."""

import random

import numpy as np
import pytest

from coxshadows import Direction, datum_from_tag, element_from_word
from coxshadows import kernels

REFERENCE = "python"


def random_word(datum, rng, n):
    return tuple(rng.choice(datum.gens) for _ in range(n))


@pytest.mark.parametrize("tag", ["A2~", "B2~", "G2~"])
@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_naive_matches_reference(tag, backend):
    datum = datum_from_tag(tag)
    rng = random.Random(hash(tag) & 0xFFFF)
    dom = Direction.from_element(datum, datum.spherical_datum.identity)
    for trial in range(12):
        word = random_word(datum, rng, rng.randint(0, 9))
        start = element_from_word(datum, random_word(datum, rng, 2))
        for max_folds in (None, 1, 3):
            ref = kernels.naive_weyl(datum, word, start, dom.vector,
                                     max_folds, backend=REFERENCE)
            got = kernels.naive_weyl(datum, word, start, dom.vector,
                                     max_folds, backend=backend)
            assert np.array_equal(ref[0], got[0]), (word, max_folds)
            assert ref[1] == got[1]  # fold histogram
            assert ref[2] == got[2]  # leaf count


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_step_kernels_match_reference(backend):
    datum = datum_from_tag("B2~")
    rng = random.Random(99)
    dom = Direction.from_element(datum, datum.spherical_datum.identity)
    n = datum.rank
    rows = np.concatenate([
        kernels.state_row(datum.identity, None),
        np.array(dom.vector, dtype=np.int64),
    ])[None, :]
    end_rows = kernels.state_row(datum.identity, None)[None, :]
    for _ in range(20):
        s = rng.choice(datum.gens)
        g = datum.generator(s)
        gm = np.array(g.mat, dtype=np.int64)
        gt = np.array(g.tvec, dtype=np.int64)
        root, _ = datum._gen_wall[s]
        er = np.array(root, dtype=np.int64)
        sign = 1 if s != 0 else -1
        ref = kernels.cross_fold_step(rows, gm, gt, er, sign, backend=REFERENCE)
        got = kernels.cross_fold_step(rows, gm, gt, er, sign, backend=backend)
        assert np.array_equal(ref, got)
        rows = ref
        ref2 = kernels.left_mul_rows(end_rows, gm, gt, backend=REFERENCE)
        got2 = kernels.left_mul_rows(end_rows, gm, gt, backend=backend)
        assert np.array_equal(ref2, got2)
        end_rows = ref2


def test_thread_split_is_invisible(monkeypatch):
    datum = datum_from_tag("A2~")
    dom = Direction.from_element(datum, datum.spherical_datum.identity)
    word = (0, 1, 2, 0, 1, 2, 0, 1, 2, 0)
    single = kernels.naive_weyl(datum, word, datum.identity, dom.vector, None)
    monkeypatch.setenv("COXETER_SHADOWS_THREADS", "4")
    multi = kernels.naive_weyl(datum, word, datum.identity, dom.vector, None)
    assert np.array_equal(single[0], multi[0])
    assert single[1] == multi[1]
    assert single[2] == multi[2]


def test_active_backend_precedence(monkeypatch):
    assert kernels.active_backend("numpy") == "numpy"
    monkeypatch.setenv("COXETER_SHADOWS_KERNEL", "python")
    assert kernels.active_backend() == "python"
    assert kernels.active_backend("numpy") == "numpy"  # override beats env
    monkeypatch.setenv("COXETER_SHADOWS_KERNEL", "fortran")
    with pytest.raises(ValueError):
        kernels.active_backend()
    monkeypatch.delenv("COXETER_SHADOWS_KERNEL")
    assert kernels.active_backend() in ("numba", "numpy")


def test_thread_count_parsing(monkeypatch):
    monkeypatch.delenv("COXETER_SHADOWS_THREADS", raising=False)
    assert kernels.thread_count() == 1
    monkeypatch.setenv("COXETER_SHADOWS_THREADS", "8")
    assert kernels.thread_count() == 8
    monkeypatch.setenv("COXETER_SHADOWS_THREADS", "zero")
    assert kernels.thread_count() == 1
    monkeypatch.setenv("COXETER_SHADOWS_THREADS", "-3")
    assert kernels.thread_count() == 1


def test_row_encoding_round_trip():
    datum = datum_from_tag("G2~")
    rng = random.Random(4)
    elems = {element_from_word(datum, random_word(datum, rng, rng.randint(0, 6)))
             for _ in range(12)}
    rows = np.stack([kernels.state_row(x, None) for x in elems])
    back = kernels.rows_to_elements(datum, rows)
    assert set(back) == elems


def test_unique_rows_sorts_and_dedupes():
    a = np.array([[3, 1], [1, 2]], dtype=np.int64)
    b = np.array([[1, 2], [0, 5]], dtype=np.int64)
    merged = kernels.unique_rows([a, b])
    assert merged.tolist() == [[0, 5], [1, 2], [3, 1]]


def test_numba_kernels_compiled():
    # the import must have produced the jitted module in this environment
    assert kernels.HAS_NUMBA
    assert kernels.active_backend() == "numba"
