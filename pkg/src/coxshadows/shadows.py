"""Shadows: end alcoves of positively folded galleries.

Given a word w and an orientation, the shadow is the set of end alcoves of
all positively folded galleries obtained by folding the unfolded gallery
of w at any subset of positions.  Three routes are implemented:

* ``shadow_naive`` sweeps all subsets of positions (optionally capped by a
  fold budget) and keeps the positive ones; exponential but orientation
  agnostic, it is the semantic reference the fast routes are tested
  against.
* ``shadow_L`` runs the one-direction recursion: walk the word letter by
  letter keeping, next to every crossed image, those states allowed to
  fold, which the chamber geometry decides by one sign test.
* ``shadow_R`` runs the all-directions recursion from the right end of
  the word, maintaining one partial shadow per chamber at infinity and
  mixing them as letters are prepended.

Chamber orientations do not care which reduced word of an element is used
(the trivial and base-alcove orientations do not either), so shadows of
group elements are well defined for those kinds; other orientations are
word-level notions here.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .coxeter import (
    CoxeterDatum,
    GroupElement,
    descents,
    length,
    reduced_word,
)
from .errors import (
    BoundRequiresWeylOrientation,
    Exceeded,
    LengthNotAdditive,
    NotADescent,
    WordTooLong,
)
from .orientations import (
    AlcoveOrientation,
    Direction,
    Orientation,
    TrivialOrientation,
    WeylChamberOrientation,
    act,
    valuation,
)

NAIVE_CAP = 22
NAIVE_CAP_BOUNDED = 40


@dataclass(frozen=True, slots=True, eq=False)
class ShadowSet:
    """A set of end alcoves plus provenance of the computation."""

    datum: CoxeterDatum = field(repr=False)
    elements: frozenset[GroupElement]
    request: dict = field(default_factory=dict)
    fold_histogram: dict | None = None
    timing_ms: float = 0.0

    def __eq__(self, other):
        if isinstance(other, ShadowSet):
            return self.datum is other.datum and self.elements == other.elements
        if isinstance(other, (set, frozenset)):
            return self.elements == other
        return NotImplemented

    def __hash__(self):
        return hash(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements())

    def __contains__(self, x):
        return x in self.elements

    def sorted_elements(self) -> list[GroupElement]:
        return sorted(self.elements, key=lambda x: (length(x), reduced_word(x)))

    def words(self) -> list[tuple[int, ...]]:
        return [reduced_word(x) for x in self.sorted_elements()]

    def to_json(self) -> dict:
        obj = {
            "request": self.request,
            "count": len(self.elements),
            "elements": [list(w) for w in self.words()],
        }
        if self.fold_histogram is not None:
            obj["fold_histogram"] = {str(k): v for k, v in sorted(self.fold_histogram.items())}
        obj["timing_ms"] = round(self.timing_ms, 3)
        return obj

    def __repr__(self):
        words = ["".join(map(str, w)) or "e" for w in self.words()]
        return f"ShadowSet({{{', '.join(words)}}})"


def describe_orientation(ori: Orientation) -> str:
    if isinstance(ori, TrivialOrientation):
        return "+" if ori.sign == 1 else "-"
    if isinstance(ori, WeylChamberOrientation):
        return "dir:" + "".join(map(str, reduced_word(ori.direction.label)))
    if isinstance(ori, AlcoveOrientation):
        return "alcove:" + "".join(map(str, reduced_word(ori.alcove)))
    return ori.kind


def _finish(datum, elems, request, hist, t0) -> ShadowSet:
    return ShadowSet(
        datum=datum,
        elements=frozenset(elems),
        request=request,
        fold_histogram=hist,
        timing_ms=(time.perf_counter() - t0) * 1000.0,
    )


# -- naive sweep -----------------------------------------------------------


def shadow_naive(word, ori: Orientation, start: GroupElement | None = None,
                 max_folds: int | None = None, backend: str | None = None,
                 cap: int | None = None) -> ShadowSet:
    """Fold the word's gallery at every subset of positions and collect the
    end alcoves of the positive ones.

    The sweep is exponential in the word length: 2^n galleries, or all
    subsets within the fold budget when ``max_folds`` is given.  Budgets
    are only sound for chamber orientations, where the number of folds of
    a positive gallery is bounded; other orientations refuse the option.
    """
    t0 = time.perf_counter()
    datum = ori.datum
    word = tuple(word)
    if start is None:
        start = datum.identity
    if start.datum is not datum:
        raise ValueError("start alcove belongs to a different group")
    limit = cap if cap is not None else (NAIVE_CAP if max_folds is None else NAIVE_CAP_BOUNDED)
    if len(word) > limit:
        raise WordTooLong(
            f"word of length {len(word)} over the sweep cap {limit}")
    if max_folds is not None and not isinstance(ori, WeylChamberOrientation):
        raise BoundRequiresWeylOrientation(
            "fold budgets are only sound for Weyl chamber orientations")
    request = {
        "type": datum.tag,
        "word": list(word),
        "orientation": describe_orientation(ori),
        "algorithm": "naive" if max_folds is None else "naive_bounded",
        "max_folds": max_folds,
        "start": list(reduced_word(start)),
    }
    if isinstance(ori, WeylChamberOrientation):
        rows, hist, leaves = kernels.naive_weyl(
            datum, word, start, ori.direction.vector, max_folds, backend=backend)
        elems = kernels.rows_to_elements(datum, rows)
        request["leaves"] = leaves
        return _finish(datum, elems, request, hist, t0)
    ends, hist, leaves = _naive_object(datum, word, ori, start)
    request["leaves"] = leaves
    return _finish(datum, ends, request, hist, t0)


def _naive_object(datum, word, ori, start):
    """Reference sweep for arbitrary orientations, one evaluate per fold."""
    from .coxeter import Panel

    m = len(word)
    gens = [datum.generator(s) for s in word]
    ends = set()
    hist: dict[int, int] = {}
    leaves = 0

    def walk(i, cur, folds, positive):
        nonlocal leaves
        if i == m:
            leaves += 1
            if positive:
                ends.add(cur)
                hist[folds] = hist.get(folds, 0) + 1
            return
        walk(i + 1, cur * gens[i], folds, positive)
        good = positive and ori.value(Panel(cur, word[i]), cur) == 1
        walk(i + 1, cur, folds + 1, good)

    walk(0, start, 0, True)
    return ends, hist, leaves


# -- one-direction recursion ----------------------------------------------


def shadow_L(x: GroupElement, direction: Direction,
             backend: str | None = None, word=None) -> ShadowSet:
    """Shadow of x for the chamber orientation of ``direction``.

    Walks a reduced word of x; after each letter the state set holds the
    shadow of the prefix.  A state may fold at a letter exactly when it
    sits on the positive side of the wall it would cross, which one sign
    of the pulled-back direction vector decides.
    """
    t0 = time.perf_counter()
    datum = x.datum
    if direction.datum is not datum:
        raise ValueError("direction belongs to a different group")
    letters = tuple(word) if word is not None else reduced_word(x)
    request = {
        "type": datum.tag,
        "word": list(letters),
        "orientation": "dir:" + "".join(map(str, reduced_word(direction.label))),
        "algorithm": "L",
    }
    n = datum.rank
    start = np.concatenate([
        kernels.state_row(datum.identity, None),
        np.array(direction.vector, dtype=np.int64),
    ])[None, :]
    rows = start
    ops = 0
    for s in letters:
        g = datum.generator(s)
        root, _ = datum._gen_wall[s]
        rows = kernels.cross_fold_step(
            rows,
            np.array(g.mat, dtype=np.int64),
            np.array(g.tvec, dtype=np.int64),
            np.array(root, dtype=np.int64),
            1 if s != 0 else -1,
            backend=backend,
        )
        ops += len(rows)
    elems = kernels.rows_to_elements(datum, rows[:, : n * n + n])
    request["states"] = ops
    return _finish(datum, elems, request, None, t0)


# -- all-directions recursion ----------------------------------------------


def shadow_R(x: GroupElement, backend: str | None = None,
             word=None) -> dict[Direction, ShadowSet]:
    """Shadows of x for every chamber at infinity at once.

    Processes a reduced word from its right end, keeping one set per
    chamber; prepending a letter maps each chamber's set through the
    letter and, when the letter starts off negatively for that chamber,
    also keeps the set as it was.
    """
    t0 = time.perf_counter()
    datum = x.datum
    sph = datum.spherical_datum
    letters = tuple(word) if word is not None else reduced_word(x)
    chambers = sph.spherical_elements()
    dirs = {a: Direction.from_element(datum, a) for a in chambers}
    idrow = kernels.state_row(datum.identity, None)[None, :]
    table: dict[GroupElement, np.ndarray] = {a: idrow for a in chambers}
    theta = datum.highest_root

    def vneg(s, a):
        # sign of the valuation of the single letter s for chamber a
        vec = dirs[a].vector
        if s == 0:
            return sum(t * v for t, v in zip(theta, vec)) < 0
        return vec[s - 1] > 0

    threads = kernels.thread_count()
    for s in reversed(letters):
        g = datum.generator(s)
        gm = np.array(g.mat, dtype=np.int64)
        gt = np.array(g.tvec, dtype=np.int64)
        sbar = GroupElement(sph, g.mat, (0,) * datum.rank)

        def one(a):
            moved = kernels.left_mul_rows(table[sbar * a], gm, gt, backend=backend)
            if vneg(s, a):
                return a, kernels.unique_rows([moved, table[a]])
            return a, np.unique(moved, axis=0)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                table = dict(pool.map(one, chambers))
        else:
            table = dict(one(a) for a in chambers)

    out = {}
    for a in chambers:
        request = {
            "type": datum.tag,
            "word": list(letters),
            "orientation": "dir:" + "".join(map(str, reduced_word(a))),
            "algorithm": "R",
        }
        elems = kernels.rows_to_elements(datum, table[a])
        out[dirs[a]] = _finish(datum, elems, request, None, t0)
    return out


def full_shadow(x: GroupElement, backend: str | None = None) -> ShadowSet:
    """Union of the shadows over every chamber at infinity."""
    t0 = time.perf_counter()
    per_dir = shadow_R(x, backend=backend)
    elems: set[GroupElement] = set()
    for sh in per_dir.values():
        elems |= sh.elements
    request = {
        "type": x.datum.tag,
        "word": list(reduced_word(x)),
        "algorithm": "full",
    }
    return _finish(x.datum, elems, request, None, t0)


# -- partial shadows --------------------------------------------------------

# the recursion hits the same factors once per (direction, chamber) pair,
# so the inner calls are memoized; both are pure in their arguments
_shadow_L_cached = lru_cache(maxsize=4096)(shadow_L)
_shadow_R_cached = lru_cache(maxsize=512)(shadow_R)


def partial_shadow(x: GroupElement, direction: Direction, a: GroupElement,
                   backend: str | None = None) -> ShadowSet:
    """The part of the shadow whose members project to the chamber a."""
    t0 = time.perf_counter()
    sph = x.datum.spherical_datum
    if a.datum is not sph:
        raise ValueError("the chamber label must be a spherical element")
    base = _shadow_L_cached(x, direction, backend)
    elems = {z for z in base.elements
             if GroupElement(sph, z.mat, (0,) * x.datum.rank) == a}
    request = dict(base.request)
    request["algorithm"] = "partial"
    request["chamber"] = "".join(map(str, reduced_word(a)))
    return _finish(x.datum, elems, request, None, t0)


def compose_partial(x: GroupElement, y: GroupElement, direction: Direction,
                    a: GroupElement, backend: str | None = None) -> ShadowSet:
    """Partial shadow of x*y assembled from shadows of the two factors.

    Requires length(x*y) = length(x) + length(y).  The shadow of x is
    split by chamber; each part multiplies the matching partial shadow of
    y for the orientation pulled back through that chamber.
    """
    t0 = time.perf_counter()
    datum = x.datum
    sph = datum.spherical_datum
    if length(x * y) != length(x) + length(y):
        raise LengthNotAdditive(
            f"length({reduced_word(x)} * {reduced_word(y)}) splits strictly")
    shx = _shadow_L_cached(x, direction, backend)
    by_chamber: dict[GroupElement, list[GroupElement]] = {}
    for z in shx.elements:
        b = GroupElement(sph, z.mat, (0,) * datum.rank)
        by_chamber.setdefault(b, []).append(z)
    shy = _shadow_R_cached(y, backend)
    by_label = {d.label: sh for d, sh in shy.items()}
    sigma = direction.label
    out: set[GroupElement] = set()
    for b, xs in by_chamber.items():
        binv = b.inverse()
        ys = [v for v in by_label[binv * sigma].elements
              if GroupElement(sph, v.mat, (0,) * datum.rank) == binv * a]
        for u in xs:
            for v in ys:
                out.add(u * v)
    request = {
        "type": datum.tag,
        "word": list(reduced_word(x)) + list(reduced_word(y)),
        "orientation": "dir:" + "".join(map(str, reduced_word(sigma))),
        "algorithm": "compose",
        "chamber": "".join(map(str, reduced_word(a))),
        "split": [list(reduced_word(x)), list(reduced_word(y))],
    }
    return _finish(datum, out, request, None, t0)


# -- descent recursions ------------------------------------------------------


def descent_recursion_step(x: GroupElement, s: int, side: str,
                           direction: Direction,
                           backend: str | None = None) -> ShadowSet:
    """One unfolding of the descent recursion, evaluated literally.

    The right form shortens x to xs and keeps, next to the translated
    shadow, the members whose valuation drops when multiplied by s; the
    left form branches on the valuation sign of the letter itself.  Both
    call the valuation directly instead of the local sign test the fast
    recursion uses, which is what makes this an independent cross-check.
    """
    t0 = time.perf_counter()
    datum = x.datum
    ori = WeylChamberOrientation(datum, direction)
    g = datum.generator(s)
    if side == "right":
        if s not in descents(x, "right"):
            raise NotADescent(f"{s} is not a right descent")
        base = shadow_L(x * g, direction, backend=backend)
        elems = {z * g for z in base.elements}
        elems |= {z for z in base.elements
                  if valuation(ori, z * g) < valuation(ori, z)}
    elif side == "left":
        if s not in descents(x, "left"):
            raise NotADescent(f"{s} is not a left descent")
        moved = act(g, ori)
        inner = shadow_L(g * x, moved.direction, backend=backend)
        elems = {g * z for z in inner.elements}
        if valuation(ori, g) < 0:
            elems |= shadow_L(g * x, direction, backend=backend).elements
    else:
        raise ValueError("side must be 'left' or 'right'")
    request = {
        "type": datum.tag,
        "word": list(reduced_word(x)),
        "orientation": "dir:" + "".join(map(str, reduced_word(direction.label))),
        "algorithm": f"descent-{side}",
        "letter": s,
    }
    return _finish(datum, elems, request, None, t0)


# -- braid moves and the subword order ---------------------------------------


def braid_equivalent_words(x: GroupElement, cap: int = 14) -> frozenset[tuple[int, ...]]:
    """All reduced words of x, by closing one word under braid moves."""
    if length(x) > cap:
        raise Exceeded(f"length {length(x)} over the braid closure cap {cap}")
    datum = x.datum
    gens = list(datum.gens)
    start = reduced_word(x)
    seen = {start}
    queue = [start]
    while queue:
        w = queue.pop()
        for i, s in enumerate(w):
            for t in gens:
                if t == s:
                    continue
                m = datum.coxeter_m(s, t)
                if m == 0 or i + m > len(w):
                    continue
                ok = all(
                    w[i + k] == (s if k % 2 == 0 else t) for k in range(m)
                )
                if not ok:
                    continue
                flip = tuple(t if k % 2 == 0 else s for k in range(m))
                new = w[:i] + flip + w[i + m:]
                if new not in seen:
                    seen.add(new)
                    queue.append(new)
    return frozenset(seen)


def is_braid_invariant(ori: Orientation, x: GroupElement, cap: int = 14,
                       backend: str | None = None) -> bool:
    """Whether the word shadow of x is the same for all its reduced words."""
    words = braid_equivalent_words(x, cap=cap)
    ref = None
    for w in sorted(words):
        sh = shadow_naive(w, ori, backend=backend)
        if ref is None:
            ref = sh.elements
        elif sh.elements != ref:
            return False
    return True


def bruhat_interval(x: GroupElement) -> ShadowSet:
    """All elements reachable as products of subwords of a reduced word.

    Built from plain group multiplication, with no gallery machinery:
    walk the word once, either appending each letter or not.
    """
    t0 = time.perf_counter()
    datum = x.datum
    cur = {datum.identity}
    for s in reduced_word(x):
        g = datum.generator(s)
        cur |= {z * g for z in cur}
    request = {
        "type": datum.tag,
        "word": list(reduced_word(x)),
        "algorithm": "bruhat",
    }
    return _finish(datum, cur, request, None, t0)
