"""Acceptance gate: nine criteria, one test and one printed verdict each.

Sweeps are exhaustive where a criterion says so, random parts run on
fixed seeds, and the two timing thresholds of the speed criterion can be
widened through environment variables on slow machines.  Run with -s to
see the bracketed lines; under plain pytest the per-test PASSED/FAILED
report carries the same information.
"""

import os
import random
import time

from coxshadows import (
    DecoratedWord,
    Gallery,
    Hyperplane,
    alcove_orientation,
    braid_equivalent_words,
    braid_sensitive_orientation,
    bruhat_interval,
    compose_partial,
    datum_from_tag,
    element_from_word,
    end_alcove,
    fold,
    footprint,
    full_shadow,
    length,
    multifold,
    partial_shadow,
    reduced_word,
    reflection_length,
    shadow_L,
    shadow_R,
    shadow_naive,
    side_of,
    trivial_orientation,
    valuation,
)
from coxshadows.cli import staircase_word
from coxshadows.oracles import (
    _directions,
    _positive_folds,
    _random_reduced_word,
    elements_up_to,
    reflect_tail,
    unfolded_gallery,
)
from coxshadows.orientations import Direction, WeylChamberOrientation, dominant_orientation
from coxshadows.render import build_scene, scene_polygons, scene_svg

AFFINE = ("A2~", "B2~", "G2~")
SWEEP = 8

_data: dict = {}


def _datum(tag):
    if tag not in _data:
        _data[tag] = datum_from_tag(tag)
    return _data[tag]


_balls: dict = {}


def _ball(tag):
    # every element of length <= SWEEP, cached across criteria
    if tag not in _balls:
        _balls[tag] = elements_up_to(_datum(tag), SWEEP)
    return _balls[tag]


def _name(x):
    return "".join(map(str, reduced_word(x))) or "e"


def _verdict(tag, ok, detail):
    print(f"[{tag}] {detail}: {'PASS' if ok else 'FAIL'}")


def test_c1_four_algorithms_agree_everywhere():
    """Left sweep, all-directions recursion, and the subset enumeration
    with and without a fold bound give the same set, exactly."""
    bad = []
    cases = 0
    for tag in AFFINE:
        d = _datum(tag)
        top = d.spherical_datum.w0_length
        for x in _ball(tag):
            by_r = {di.label: sh.elements for di, sh in shadow_R(x).items()}
            w = reduced_word(x)
            for di in _directions(d):
                ori = WeylChamberOrientation(d, di)
                cases += 1
                got = shadow_L(x, di).elements
                if not (got == by_r[di.label]
                        == shadow_naive(w, ori).elements
                        == shadow_naive(w, ori, max_folds=top).elements):
                    bad.append((tag, _name(x), _name(di.label)))
    _verdict("C1", not bad,
             f"L = R = naive = bounded naive on {cases} element/direction pairs")
    assert not bad, bad[:5]


def test_c2_trivial_and_base_alcove_shadows_are_bruhat_intervals():
    sweeps = [("A2~", _ball("A2~"))]
    for tag in ("A2", "B2", "G2"):
        d = _datum(tag)
        sweeps.append((tag, elements_up_to(d, d.spherical_datum.w0_length)))
    bad = []
    cases = 0
    for tag, elems in sweeps:
        d = _datum(tag)
        plus = trivial_orientation(d, 1)
        at_base = alcove_orientation(d, d.identity)
        for x in elems:
            cases += 1
            w = reduced_word(x)
            interval = bruhat_interval(x).elements
            if not (shadow_naive(w, plus).elements == interval
                    == shadow_naive(w, at_base).elements):
                bad.append((tag, _name(x)))
    _verdict("C2", not bad, f"shadow = subword interval on {cases} elements")
    assert not bad, bad[:5]


def test_c3_chamber_shadows_ignore_the_choice_of_reduced_word():
    bad = []
    words_seen = 0
    for tag in ("A2~", "B2~"):
        d = _datum(tag)
        for x in _ball(tag):
            words = braid_equivalent_words(x)
            words_seen += len(words)
            for di in _directions(d):
                shadows = {frozenset(shadow_L(x, di, word=w).elements)
                           for w in words}
                if len(shadows) != 1:
                    bad.append((tag, _name(x), _name(di.label)))
    # negative control: one table orientation must tell the two reduced
    # words of the longest element apart, or the sweep above proves nothing
    fin = _datum("A2")
    table = braid_sensitive_orientation(fin)
    one = shadow_naive((1, 2, 1), table).elements
    two = shadow_naive((2, 1, 2), table).elements
    control = one != two
    ok = not bad and control
    _verdict("C3", ok,
             f"invariance across {words_seen} reduced words, control differs")
    assert not bad, bad[:5]
    assert control, "table orientation did not separate the two words"


def test_c4_fold_counts_sit_between_reflection_length_and_longest():
    tops = {"A2~": 3, "B2~": 4, "G2~": 6}
    bad = []
    cases = 0
    for tag in AFFINE:
        d = _datum(tag)
        top = d.spherical_datum.w0_length
        assert top == tops[tag]
        for x in _ball(tag):
            base = Gallery(d.identity,
                           DecoratedWord(reduced_word(x), frozenset()))
            for di in _directions(d):
                ori = WeylChamberOrientation(d, di)
                for positions in _positive_folds(base, ori):
                    cases += 1
                    y = end_alcove(multifold(base, positions))
                    low = reflection_length(x * y.inverse(), cap=top)
                    if low is None or not low <= len(positions) <= top:
                        bad.append((tag, _name(x), sorted(positions)))
    _verdict("C4", not bad, f"bounds hold on {cases} positive foldings")
    assert not bad, bad[:5]


def test_c5_valuation_max_formula_and_wall_crossing_monotonicity():
    """The length of x is the largest valuation over all directions, and
    a reflection lowers the valuation exactly when its wall has x on the
    positive side."""
    window = range(-6, 7)
    bad_max = []
    bad_step = []
    cases = 0
    for tag in AFFINE:
        d = _datum(tag)
        oris = [WeylChamberOrientation(d, di) for di in _directions(d)]
        walls = [(Hyperplane(r, k), d.reflection(r, k))
                 for r in d.positive_roots for k in window]
        for x in _ball(tag):
            vals = [valuation(o, x) for o in oris]
            if any(v > length(x) for v in vals) or max(vals) != length(x):
                bad_max.append((tag, _name(x)))
            pt = d.barycenter_image(x)
            for h, r in walls:
                rx = r * x
                positive = side_of(pt, h)
                for o, vx in zip(oris, vals):
                    cases += 1
                    vrx = valuation(o, rx)
                    drops = vx > vrx
                    if vx == vrx or drops != (positive in o.positive_signs(h)):
                        bad_step.append((tag, _name(x), h))
    ok = not bad_max and not bad_step
    _verdict("C5", ok, f"max formula and {cases} reflection steps")
    assert not bad_max, bad_max[:5]
    assert not bad_step, bad_step[:5]


def test_c6_partial_shadows_compose_across_additive_splits():
    trials = 200
    bad = []
    cases = 0
    for tag in AFFINE:
        d = _datum(tag)
        rng = random.Random(20240906)
        chambers = list(d.spherical_datum.spherical_elements())
        dirs = _directions(d)
        for _ in range(trials):
            w = _random_reduced_word(d, rng, rng.randint(0, SWEEP))
            cut = rng.randint(0, len(w))
            x = element_from_word(d, w[:cut])
            y = element_from_word(d, w[cut:])
            for di in dirs:
                for a in chambers:
                    cases += 1
                    whole = partial_shadow(x * y, di, a).elements
                    if whole != compose_partial(x, y, di, a).elements:
                        bad.append((tag, w, cut, _name(di.label), _name(a)))
    _verdict("C6", not bad,
             f"recursion = direct on {cases} (pair, direction, chamber) cases")
    assert not bad, bad[:5]


# -- fold calculus on random galleries ---------------------------------------

_TAGS7 = ("A2~", "B2~", "G2~", "A2")


def _random_gallery(rng, min_len=0):
    d = _datum(rng.choice(_TAGS7))
    n = rng.randint(max(min_len, 1), 10)
    letters = tuple(rng.choice(d.gens) for _ in range(n))
    folds = frozenset(i for i in range(1, n + 1) if rng.random() < 0.3)
    start = element_from_word(
        d, [rng.choice(d.gens) for _ in range(rng.randint(0, 3))])
    return Gallery(start, DecoratedWord(letters, folds))


def test_c7_fold_calculus_laws_on_random_galleries():
    rng = random.Random(20240907)
    runs = 1000
    bad = []
    for _ in range(runs):  # folding twice at one spot is the identity
        g = _random_gallery(rng, min_len=1)
        i = rng.randint(1, len(g.word.letters))
        if fold(fold(g, i), i) != g:
            bad.append(("involution", g, i))
    for _ in range(runs):  # folds at two spots commute
        g = _random_gallery(rng, min_len=2)
        n = len(g.word.letters)
        i = rng.randint(1, n)
        j = rng.randint(1, n - 1)
        j += j >= i
        if fold(fold(g, i), j) != fold(fold(g, j), i):
            bad.append(("commutation", g, i, j))
    for _ in range(runs):  # multifolds toggle by symmetric difference
        g = _random_gallery(rng)
        n = len(g.word.letters)
        one = frozenset(i for i in range(1, n + 1) if rng.random() < 0.4)
        two = frozenset(i for i in range(1, n + 1) if rng.random() < 0.4)
        folded = multifold(g, one)
        # the same alcove walk must come out of plain tail reflections
        expl = unfolded_gallery(g.start, g.word.letters)
        for p in sorted(folded.word.folds):
            expl = reflect_tail(expl, p)
        if not (folded.word.letters == g.word.letters
                and folded.word.folds == g.word.folds ^ one
                and multifold(folded, two) == multifold(g, one ^ two)
                and expl.alcoves == folded.alcoves()):
            bad.append(("multifold", g, one, two))
    for _ in range(runs):  # the footprint word multiplies to the end alcove
        g = _random_gallery(rng)
        walked = footprint(g)
        prod = element_from_word(g.datum, walked.word.letters)
        if not end_alcove(g) == g.start * prod == end_alcove(walked):
            bad.append(("footprint", g))
    _verdict("C7", not bad, f"four fold laws on {runs} random galleries each")
    assert not bad, bad[:3]


def test_c8_left_sweep_outpaces_subset_enumeration():
    """Timing thresholds are machine dependent; loosen them with
    COXETER_SHADOWS_ACCEPT_SPEEDUP / COXETER_SHADOWS_ACCEPT_SECONDS."""
    factor = float(os.environ.get("COXETER_SHADOWS_ACCEPT_SPEEDUP", "10"))
    budget = float(os.environ.get("COXETER_SHADOWS_ACCEPT_SECONDS", "10"))
    d = _datum("A2~")
    ori = dominant_orientation(d)
    di = ori.direction
    warm = staircase_word(d, 4)  # compile the kernels outside the clock
    shadow_naive(warm, ori)
    shadow_L(element_from_word(d, warm), di)
    shadow_R(element_from_word(d, warm))

    w20 = staircase_word(d, 20)
    x20 = element_from_word(d, w20)
    t_l = min(_timed(shadow_L, x20, di) for _ in range(5))
    t0 = time.perf_counter()
    naive = shadow_naive(w20, ori)
    t_n = time.perf_counter() - t0
    assert naive.elements == shadow_L(x20, di).elements

    x40 = element_from_word(d, staircase_word(d, 40))
    t0 = time.perf_counter()
    left = shadow_L(x40, di)
    t_40 = time.perf_counter() - t0
    by_r = {dd.label: sh.elements for dd, sh in shadow_R(x40).items()}
    agree = left.elements == by_r[di.label]

    ok = t_n >= factor * t_l and t_40 < budget and agree
    _verdict("C8", ok,
             f"length 20: naive {t_n * 1e3:.0f} ms vs L {t_l * 1e3:.1f} ms "
             f"(need {factor:.0f}x); length 40: {t_40:.2f} s of {budget:.0f}")
    assert agree
    assert t_n >= factor * t_l, (t_n, t_l)
    assert t_40 < budget, t_40


def _timed(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def test_c9_scene_markup_reproduces_the_shadow_sets():
    fixtures = [
        ("A2~", (0, 1, 2, 1), (1, 2)),
        ("A2~", (0, 1, 2, 0, 1, 0), ()),
        ("A2~", (), (1,)),
        ("G2~", (0, 1, 2, 1), (2, 1)),
        ("G2~", (0, 1, 2, 1, 2), (1, 2, 1)),
    ]
    bad = []
    for tag, word, toward in fixtures:
        d = _datum(tag)
        x = element_from_word(d, word)
        di = Direction.from_element(
            d, element_from_word(d.spherical_datum, toward))
        back = scene_polygons(scene_svg(build_scene(x, di)))
        want_full = frozenset(_name(g) for g in full_shadow(x).elements)
        want_reg = frozenset(_name(g) for g in shadow_L(x, di).elements)
        if not (back["full"] == want_full and back["regular"] == want_reg
                and back["marked"] == {_name(x)}
                and back["regular"] <= back["full"]
                and len(back["legend_directions"])
                == len(list(d.spherical_datum.spherical_elements()))):
            bad.append((tag, word, toward))
    _verdict("C9", not bad, f"{len(fixtures)} scenes read back structurally")
    assert not bad, bad
