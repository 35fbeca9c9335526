"""Independent re-derivations used to cross-check the primary code paths.

The primary gallery code never moves an alcove: folding is bookkeeping on
a decorated word.  The oracle here does the opposite: it keeps galleries
as explicit alcove lists and folds by literally reflecting the tail
across the panel's wall, detecting folds afterwards as repeated alcoves.
Agreement between the two is a strong end-to-end check that the word
calculus means what it claims geometrically.

``check`` runs one named comparison and returns an OracleReport; the
suites below group them the way the command line exposes them.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

from . import shadows
from .coxeter import (
    CoxeterDatum,
    GroupElement,
    Panel,
    _bfs,
    element_from_word,
    length,
    reduced_word,
    reflection_length,
)
from .errors import WordTooLong
from .galleries import DecoratedWord, Gallery, end_alcove, multifold
from .orientations import (
    Direction,
    Orientation,
    WeylChamberOrientation,
    trivial_orientation,
    alcove_orientation,
)

ORACLE_CAP = 20


@dataclass
class ExplicitGallery:
    """A gallery as the list of visited alcoves plus its letters."""

    letters: tuple[int, ...]
    alcoves: tuple[GroupElement, ...]

    def folds(self) -> frozenset[int]:
        return frozenset(
            i for i in range(1, len(self.letters) + 1)
            if self.alcoves[i] == self.alcoves[i - 1]
        )

    def end(self) -> GroupElement:
        return self.alcoves[-1]


def unfolded_gallery(start: GroupElement, letters) -> ExplicitGallery:
    alcs = [start]
    for s in letters:
        alcs.append(alcs[-1] * start.datum.generator(s))
    return ExplicitGallery(tuple(letters), tuple(alcs))


def reflect_tail(g: ExplicitGallery, i: int) -> ExplicitGallery:
    """Fold at position i by reflecting alcoves i..n across the wall of
    the i-th panel."""
    datum = g.alcoves[0].datum
    wall = Panel(g.alcoves[i - 1], g.letters[i - 1]).wall()
    r = datum.reflection(wall.root, wall.level)
    alcs = list(g.alcoves)
    for j in range(i, len(alcs)):
        alcs[j] = r * alcs[j]
    return ExplicitGallery(g.letters, tuple(alcs))


def enumerate_foldings_explicit(start: GroupElement, letters, cap: int = ORACLE_CAP):
    """Every multifold of the word's gallery, one per subset of positions,
    each computed by sequential tail reflection.

    Yields (positions, gallery) pairs; the decorated-word calculus is not
    involved anywhere.
    """
    letters = tuple(letters)
    if len(letters) > cap:
        raise WordTooLong(f"word of length {len(letters)} over the oracle cap {cap}")
    base = unfolded_gallery(start, letters)
    for size in range(len(letters) + 1):
        for combo in itertools.combinations(range(1, len(letters) + 1), size):
            g = base
            for i in combo:
                g = reflect_tail(g, i)
            yield frozenset(combo), g


def positive_explicit(g: ExplicitGallery, ori: Orientation) -> bool:
    """Positivity read off the alcove list: every repeat must sit on the
    positive side of the panel it bounced off."""
    for i in g.folds():
        panel = Panel(g.alcoves[i - 1], g.letters[i - 1])
        if ori.value(panel, g.alcoves[i]) != 1:
            return False
    return True


def shadow_by_reflection(start: GroupElement, letters, ori: Orientation,
                         cap: int = ORACLE_CAP) -> frozenset[GroupElement]:
    """End alcoves of the positive explicit foldings; the oracle twin of
    the naive shadow."""
    out = set()
    for _, g in enumerate_foldings_explicit(start, letters, cap=cap):
        if positive_explicit(g, ori):
            out.add(g.end())
    return frozenset(out)


def bfs_group(datum: CoxeterDatum, max_length: int | None = None):
    """Group elements with their Cayley graph distance from the identity."""
    return _bfs(datum, max_length)


def elements_up_to(datum: CoxeterDatum, max_length: int):
    by_len: dict[int, list[GroupElement]] = {}
    for x, dep in bfs_group(datum, max_length).items():
        by_len.setdefault(dep, []).append(x)
    out = []
    for dep in sorted(by_len):
        out.extend(sorted(by_len[dep], key=reduced_word))
    return out


# -- reports ----------------------------------------------------------------


@dataclass
class OracleReport:
    case: str
    params: dict
    passed: bool
    checked: int
    counterexample: dict | None = None
    elapsed_ms: float = 0.0

    def to_json(self) -> str:
        obj = {
            "case": self.case,
            "params": self.params,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        return json.dumps(obj, sort_keys=True)


def _report(case, params, passed, checked, counterexample, t0):
    return OracleReport(
        case=case,
        params=params,
        passed=passed,
        checked=checked,
        counterexample=None if passed else counterexample,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def _words(x: GroupElement):
    return "".join(map(str, reduced_word(x))) or "e"


def check(case: str, datum: CoxeterDatum, max_length: int = 4, **kw) -> OracleReport:
    """Run one named oracle comparison over all elements up to max_length."""
    t0 = time.perf_counter()
    params = {"type": datum.tag, "max_length": max_length, **kw}
    checked = 0

    if case == "bfs_length":
        seen = bfs_group(datum, max_length if datum.affine else None)
        for x, dep in seen.items():
            checked += 1
            if length(x) != dep:
                return _report(case, params, False, checked,
                               {"element": _words(x), "bfs": dep,
                                "length": length(x)}, t0)
        if not datum.affine and datum.order is not None and len(seen) != datum.order:
            return _report(case, params, False, checked,
                           {"enumerated": len(seen), "order": datum.order}, t0)
        return _report(case, params, True, checked, None, t0)

    if case == "explicit_vs_decorated":
        # hat-set semantics against literal tail reflection
        import random

        rng = random.Random(kw.get("seed", 20240901))
        trials = kw.get("trials", 50)
        for _ in range(trials):
            m = rng.randint(0, min(8, max_length + 4))
            letters = tuple(rng.choice(datum.gens) for _ in range(m))
            start = element_from_word(
                datum, [rng.choice(datum.gens) for _ in range(rng.randint(0, 3))])
            base = Gallery(start, DecoratedWord(letters, frozenset()))
            for positions, g in enumerate_foldings_explicit(start, letters):
                checked += 1
                folded = multifold(base, positions)
                if g.folds() != positions:
                    return _report(case, params, False, checked,
                                   {"letters": list(letters),
                                    "positions": sorted(positions),
                                    "detected": sorted(g.folds())}, t0)
                if tuple(folded.alcoves()) != g.alcoves:
                    return _report(case, params, False, checked,
                                   {"letters": list(letters),
                                    "positions": sorted(positions)}, t0)
        return _report(case, params, True, checked, None, t0)

    if case == "naive_vs_reflection":
        oris = _standard_orientations(datum)
        for x in elements_up_to(datum, max_length):
            w = reduced_word(x)
            for name, ori in oris:
                checked += 1
                fast = shadows.shadow_naive(w, ori).elements
                slow = shadow_by_reflection(datum.identity, w, ori)
                if fast != slow:
                    return _report(case, params, False, checked,
                                   {"element": _words(x), "orientation": name},
                                   t0)
        return _report(case, params, True, checked, None, t0)

    if case == "algL_vs_naive":
        for x in elements_up_to(datum, max_length):
            w = reduced_word(x)
            for d in _directions(datum):
                checked += 1
                ori = WeylChamberOrientation(datum, d)
                if shadows.shadow_L(x, d).elements != \
                        shadows.shadow_naive(w, ori).elements:
                    return _report(case, params, False, checked,
                                   {"element": _words(x),
                                    "direction": _words(d.label)}, t0)
        return _report(case, params, True, checked, None, t0)

    if case == "algR_vs_algL":
        for x in elements_up_to(datum, max_length):
            checked += 1
            R = shadows.shadow_R(x)
            for d, sh in R.items():
                if sh.elements != shadows.shadow_L(x, d).elements:
                    return _report(case, params, False, checked,
                                   {"element": _words(x),
                                    "direction": _words(d.label)}, t0)
        return _report(case, params, True, checked, None, t0)

    if case == "bruhat":
        # trivial-positive and base-alcove shadows both give the interval
        tp = trivial_orientation(datum, 1)
        io = alcove_orientation(datum, datum.identity)
        for x in elements_up_to(datum, max_length):
            checked += 1
            w = reduced_word(x)
            interval = shadows.bruhat_interval(x).elements
            if shadows.shadow_naive(w, tp).elements != interval:
                return _report(case, params, False, checked,
                               {"element": _words(x), "orientation": "+"}, t0)
            if shadows.shadow_naive(w, io).elements != interval:
                return _report(case, params, False, checked,
                               {"element": _words(x), "orientation": "id-alcove"},
                               t0)
        return _report(case, params, True, checked, None, t0)

    if case == "braid_invariance":
        for x in elements_up_to(datum, max_length):
            for d in _directions(datum):
                checked += 1
                ori = WeylChamberOrientation(datum, d)
                if not shadows.is_braid_invariant(ori, x):
                    return _report(case, params, False, checked,
                                   {"element": _words(x),
                                    "direction": _words(d.label)}, t0)
        return _report(case, params, True, checked, None, t0)

    if case == "fold_bounds":
        # reflection length of start*end^-1 <= fold count <= longest length
        top = datum.spherical_datum.w0_length
        for x in elements_up_to(datum, max_length):
            w = reduced_word(x)
            base = Gallery(datum.identity, DecoratedWord(w, frozenset()))
            for d in _directions(datum):
                ori = WeylChamberOrientation(datum, d)
                for positions in _positive_folds(base, ori):
                    checked += 1
                    if len(positions) > top:
                        return _report(case, params, False, checked,
                                       {"element": _words(x),
                                        "folds": len(positions)}, t0)
                    y = end_alcove(multifold(base, positions))
                    z = x * y.inverse()
                    rl = reflection_length(z, cap=top)
                    if rl is None or rl > len(positions):
                        return _report(case, params, False, checked,
                                       {"element": _words(x),
                                        "end": _words(y),
                                        "folds": sorted(positions),
                                        "reflection_length": rl}, t0)
        return _report(case, params, True, checked, None, t0)

    if case == "partial_product":
        import random

        rng = random.Random(kw.get("seed", 20240902))
        trials = kw.get("trials", 25)
        chambers = datum.spherical_datum.spherical_elements()
        done = 0
        while done < trials:
            w = _random_reduced_word(datum, rng, max_length)
            cut = rng.randint(0, len(w))
            x = element_from_word(datum, w[:cut])
            y = element_from_word(datum, w[cut:])
            done += 1
            for d in _directions(datum):
                for a in chambers:
                    checked += 1
                    lhs = shadows.partial_shadow(x * y, d, a).elements
                    rhs = shadows.compose_partial(x, y, d, a).elements
                    if lhs != rhs:
                        return _report(case, params, False, checked,
                                       {"x": _words(x), "y": _words(y),
                                        "direction": _words(d.label),
                                        "chamber": _words(a)}, t0)
        return _report(case, params, True, checked, None, t0)

    raise ValueError(f"unknown oracle case {case!r}")


SUITES = {
    "core": ("bfs_length", "explicit_vs_decorated", "naive_vs_reflection",
             "algL_vs_naive", "algR_vs_algL"),
    "bruhat": ("bruhat",),
    "braid": ("braid_invariance",),
    "bounds": ("fold_bounds",),
    "partial": ("partial_product",),
}


def run_suite(suite: str, datum: CoxeterDatum, max_length: int = 4):
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; pick from {sorted(SUITES)}")
    for case in SUITES[suite]:
        if case in ("algL_vs_naive", "algR_vs_algL", "braid_invariance",
                    "fold_bounds", "partial_product") and not datum.affine:
            continue
        yield check(case, datum, max_length=max_length)


# -- small helpers -----------------------------------------------------------


def _directions(datum: CoxeterDatum):
    if not datum.affine:
        return []
    return [Direction.from_element(datum, a)
            for a in datum.spherical_datum.spherical_elements()]


def _standard_orientations(datum: CoxeterDatum):
    out = [("+", trivial_orientation(datum, 1)),
           ("-", trivial_orientation(datum, -1)),
           ("id-alcove", alcove_orientation(datum, datum.identity))]
    if datum.affine:
        out.extend(("dir:" + _words(d.label), WeylChamberOrientation(datum, d))
                   for d in _directions(datum))
    return out


def _positive_folds(base: Gallery, ori: Orientation):
    """Positions of the positive multifolds, pruned: an inadmissible fold
    stays inadmissible for every superset sharing the prefix."""
    m = len(base.word.letters)
    datum = base.datum
    out = []

    def walk(i, cur, positions):
        if i > m:
            out.append(frozenset(positions))
            return
        s = base.word.letters[i - 1]
        walk(i + 1, cur * datum.generator(s), positions)
        if ori.value(Panel(cur, s), cur) == 1:
            positions.append(i)
            walk(i + 1, cur, positions)
            positions.pop()

    walk(1, base.start, [])
    return out


def _random_reduced_word(datum: CoxeterDatum, rng, target: int):
    """A uniformly grown reduced word: extend by random non-descents."""
    x = datum.identity
    w: list[int] = []
    while len(w) < target:
        options = [s for s in datum.gens
                   if length(x * datum.generator(s)) > length(x)]
        s = rng.choice(options)
        x = x * datum.generator(s)
        w.append(s)
    return tuple(w)
