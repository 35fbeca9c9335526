"""Shadow computations: the sweep, both recursions, and the calculus
identities that tie them together."""

import random

import pytest

from coxshadows import (
    BoundRequiresWeylOrientation,
    Direction,
    Exceeded,
    LengthNotAdditive,
    NotADescent,
    WeylChamberOrientation,
    WordTooLong,
    alcove_orientation,
    braid_equivalent_words,
    braid_sensitive_orientation,
    bruhat_interval,
    compose_partial,
    datum_from_tag,
    descent_recursion_step,
    descents,
    dominant_orientation,
    element_from_word,
    full_shadow,
    is_braid_invariant,
    length,
    partial_shadow,
    reduced_word,
    shadow_L,
    shadow_R,
    shadow_naive,
    spherical_projection,
    trivial_orientation,
)
from coxshadows.oracles import elements_up_to

from conftest import names


def chamber(datum, word):
    return Direction.from_word(datum, word)


# values below were frozen from the alcove-list enumeration that folds by
# literal tail reflection (the oracle path), not from the code under test
FROZEN_0121 = {
    "e": {"0121"},
    "1": {"012", "0121"},
    "2": {"0121", "021"},
    "12": {"0", "01", "012", "0121", "12", "121"},
    "21": {"0", "0121", "02", "021", "121", "21"},
    "121": {"0", "01", "012", "0121", "02", "021", "121"},
}


def test_frozen_shadows_all_directions(a2aff):
    x = element_from_word(a2aff, (0, 1, 2, 1))
    for word, want in FROZEN_0121.items():
        d = chamber(a2aff, () if word == "e" else tuple(map(int, word)))
        got = shadow_L(x, d)
        assert names(got.elements) == want, word


def test_single_letter_shadows(a2aff):
    s1 = element_from_word(a2aff, (1,))
    dom = chamber(a2aff, ())
    w0dir = chamber(a2aff, (1, 2, 1))
    assert names(shadow_L(s1, dom).elements) == {"e", "1"}
    assert names(shadow_L(s1, w0dir).elements) == {"1"}


def test_algorithms_agree_small(a2aff):
    """Sweep, both recursions, and the bounded sweep on every element of
    length up to 4, every direction."""
    top = a2aff.spherical_datum.w0_length
    for x in elements_up_to(a2aff, 4):
        w = reduced_word(x)
        per_dir = shadow_R(x)
        for d, sh_r in per_dir.items():
            ori = WeylChamberOrientation(a2aff, d)
            assert shadow_L(x, d).elements == sh_r.elements
            assert shadow_naive(w, ori).elements == sh_r.elements
            assert shadow_naive(w, ori, max_folds=top).elements == sh_r.elements


def test_non_reduced_words_allowed(a2aff):
    """Word-level shadows accept non-reduced input: folding (1,1) at the
    first letter stays at the base alcove and the second letter then
    crosses, so s1 appears next to the unfolded end alcove e."""
    dom = dominant_orientation(a2aff)
    sh = shadow_naive((1, 1), dom)
    assert names(sh.elements) == {"e", "1"}
    sh2 = shadow_L(element_from_word(a2aff, ()), chamber(a2aff, ()),
                   word=(1, 1))
    assert sh2.elements == sh.elements


def test_fold_histogram(a2aff):
    dom = dominant_orientation(a2aff)
    sh = shadow_naive((1,), dom)
    assert sh.fold_histogram == {0: 1, 1: 1}
    assert sh.request["leaves"] == 2
    # the L recursion reports state counts instead of a histogram
    assert shadow_L(element_from_word(a2aff, (1,)), chamber(a2aff, ())).fold_histogram is None


def test_bruhat_reproduction(a2fin, a2aff):
    for datum, words in ((a2fin, [(1, 2), (1, 2, 1)]),
                         (a2aff, [(0, 1), (0, 1, 2, 1)])):
        tp = trivial_orientation(datum, 1)
        io = alcove_orientation(datum, datum.identity)
        for w in words:
            x = element_from_word(datum, w)
            interval = bruhat_interval(x)
            assert shadow_naive(w, tp) == interval
            assert shadow_naive(w, io) == interval


def test_bruhat_interval_content(a2fin):
    x = element_from_word(a2fin, (1, 2))
    assert names(bruhat_interval(x).elements) == {"e", "1", "2", "12"}
    w0 = element_from_word(a2fin, (1, 2, 1))
    assert len(bruhat_interval(w0)) == 6


def test_trivial_negative_allows_no_folds(a2aff):
    tm = trivial_orientation(a2aff, -1)
    sh = shadow_naive((0, 1, 2), tm)
    assert names(sh.elements) == {"012"}


def test_caps(a2aff):
    dom = dominant_orientation(a2aff)
    with pytest.raises(WordTooLong):
        shadow_naive((0, 1, 2) * 8, dom)  # 24 letters, cap 22
    with pytest.raises(BoundRequiresWeylOrientation):
        shadow_naive((0, 1), trivial_orientation(a2aff, 1), max_folds=2)


def test_shadowset_behaves_like_a_set(a2aff):
    x = element_from_word(a2aff, (0, 1))
    sh = shadow_L(x, chamber(a2aff, (1, 2)))
    assert sh == sh.elements
    assert len(sh) == len(sh.elements)
    assert x in sh
    obj = sh.to_json()
    assert obj["count"] == len(sh)
    assert obj["elements"] == [list(w) for w in sh.words()]
    lens = [len(w) for w in sh.words()]
    assert lens == sorted(lens)


def test_full_shadow_is_union(a2aff):
    x = element_from_word(a2aff, (0, 1, 2))
    per_dir = shadow_R(x)
    union = set()
    for sh in per_dir.values():
        union |= sh.elements
    assert full_shadow(x).elements == union
    assert len(per_dir) == 6


def test_partial_shadows_partition(a2aff):
    x = element_from_word(a2aff, (0, 1, 2, 0))
    sph = a2aff.spherical_datum
    for d in (chamber(a2aff, ()), chamber(a2aff, (2, 1))):
        whole = shadow_L(x, d).elements
        parts = []
        for a in sph.spherical_elements():
            part = partial_shadow(x, d, a).elements
            assert all(spherical_projection(z) == a for z in part)
            parts.append(part)
        assert set().union(*parts) == whole
        assert sum(map(len, parts)) == len(whole)


def test_compose_partial_requires_additivity(a2aff):
    s0 = element_from_word(a2aff, (0,))
    with pytest.raises(LengthNotAdditive):
        compose_partial(s0, s0, chamber(a2aff, ()), a2aff.spherical_datum.identity)


def test_compose_partial_agrees(a2aff):
    rng = random.Random(17)
    sph = a2aff.spherical_datum
    chambers = sph.spherical_elements()
    dirs = [Direction.from_element(a2aff, a) for a in chambers]
    for _ in range(10):
        w = []
        x = a2aff.identity
        while len(w) < 5:
            s = rng.choice(a2aff.gens)
            if length(x * a2aff.generator(s)) > length(x):
                x = x * a2aff.generator(s)
                w.append(s)
        cut = rng.randint(0, len(w))
        left = element_from_word(a2aff, w[:cut])
        right = element_from_word(a2aff, w[cut:])
        for d in dirs:
            for a in chambers:
                assert (compose_partial(left, right, d, a).elements
                        == partial_shadow(left * right, d, a).elements)


def test_descent_recursions(a2aff):
    rng = random.Random(29)
    dirs = [Direction.from_element(a2aff, a)
            for a in a2aff.spherical_datum.spherical_elements()]
    for _ in range(15):
        x = element_from_word(
            a2aff, [rng.choice(a2aff.gens) for _ in range(rng.randint(1, 6))])
        if x.is_identity():
            continue
        want = {d: shadow_L(x, d).elements for d in dirs}
        for s in descents(x, "right"):
            for d in dirs:
                assert descent_recursion_step(x, s, "right", d).elements == want[d]
        for s in descents(x, "left"):
            for d in dirs:
                assert descent_recursion_step(x, s, "left", d).elements == want[d]


def test_descent_recursion_rejects_non_descents(a2aff):
    s0 = element_from_word(a2aff, (0,))
    with pytest.raises(NotADescent):
        descent_recursion_step(s0, 1, "right", chamber(a2aff, ()))
    with pytest.raises(ValueError):
        descent_recursion_step(s0, 0, "sideways", chamber(a2aff, ()))


def test_braid_words(a2fin, a2aff):
    w0 = element_from_word(a2fin, (1, 2, 1))
    assert braid_equivalent_words(w0) == {(1, 2, 1), (2, 1, 2)}
    b2 = datum_from_tag("B2")
    w0b = element_from_word(b2, (1, 2, 1, 2))
    assert braid_equivalent_words(w0b) == {(1, 2, 1, 2), (2, 1, 2, 1)}
    x = element_from_word(a2aff, (0, 1, 2, 0))
    words = braid_equivalent_words(x)
    assert all(element_from_word(a2aff, w) == x for w in words)
    assert all(len(w) == 4 for w in words)
    long = element_from_word(a2aff, (0, 1, 2) * 5)
    with pytest.raises(Exceeded):
        braid_equivalent_words(long, cap=10)


def test_braid_invariance_flags(a2fin, a2aff):
    dom = dominant_orientation(a2aff)
    x = element_from_word(a2aff, (0, 1, 2, 0))
    assert is_braid_invariant(dom, x)
    w0 = element_from_word(a2fin, (1, 2, 1))
    assert not is_braid_invariant(braid_sensitive_orientation(a2fin), w0)


def test_counterexample_shadows(a2fin):
    ori = braid_sensitive_orientation(a2fin)
    sh1 = shadow_naive((1, 2, 1), ori)
    sh2 = shadow_naive((2, 1, 2), ori)
    assert names(sh1.elements) == {"e", "1", "21", "12", "121"}
    assert names(sh2.elements) == {"e", "2", "21", "12", "121"}


def test_infinite_bond_group(a2fin):
    """The rank-1 affine group: an infinite dihedral line of alcoves."""
    d = datum_from_tag("A1~")
    x = element_from_word(d, (0, 1, 0, 1))
    assert length(x) == 4
    # everything shorter sits below x, plus x itself: 1+2+2+2+1
    sh = bruhat_interval(x)
    assert len(sh) == 8
    dom = Direction.from_element(d, d.spherical_datum.identity)
    per = shadow_R(x)
    assert shadow_L(x, dom).elements == per[dom].elements
