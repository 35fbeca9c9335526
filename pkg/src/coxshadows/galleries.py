"""Combinatorial galleries as decorated words.

A gallery of type (s_1, ..., s_n) starting at an alcove c_0 visits alcoves
c_0, c_1, ..., c_n where each step either crosses the type-s_i panel of
c_{i-1} (giving c_i = c_{i-1} s_i) or stays put (c_i = c_{i-1}).  The
stay-put positions are the folds; a decorated word records the letters
plus the set of folded positions (1-based), written ``0 1^ 2`` in text
with a caret after each folded letter.

Folding a gallery at position i toggles that position: geometrically the
tail of the gallery is reflected across the wall of the i-th panel, which
on decorated words is just a symmetric difference on the fold set.  The
equivalence of the two descriptions is what the oracle module re-derives
by literally reflecting alcove lists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import CoxeterDatum, GroupElement, Panel, element_from_word, length
from .errors import PositionOutOfRange
from .orientations import Orientation


@dataclass(frozen=True, slots=True)
class DecoratedWord:
    """Letters (generator indices) plus the set of folded positions."""

    letters: tuple[int, ...]
    folds: frozenset[int]

    def __post_init__(self):
        bad = [i for i in self.folds if not 1 <= i <= len(self.letters)]
        if bad:
            raise PositionOutOfRange(
                f"fold positions {sorted(bad)} outside 1..{len(self.letters)}")

    def to_text(self) -> str:
        return " ".join(
            f"{s}^" if (i + 1) in self.folds else str(s)
            for i, s in enumerate(self.letters)
        )

    @staticmethod
    def from_text(text: str) -> "DecoratedWord":
        letters = []
        folds = set()
        for tok in text.split():
            if tok.endswith("^"):
                folds.add(len(letters) + 1)
                tok = tok[:-1]
            letters.append(int(tok))
        return DecoratedWord(tuple(letters), frozenset(folds))

    def to_json(self) -> dict:
        return {"letters": list(self.letters), "folds": sorted(self.folds)}

    @staticmethod
    def from_json(obj: dict) -> "DecoratedWord":
        return DecoratedWord(tuple(obj["letters"]), frozenset(obj.get("folds", ())))


@dataclass(frozen=True, slots=True)
class Gallery:
    """A decorated word together with its starting alcove."""

    start: GroupElement
    word: DecoratedWord

    @property
    def datum(self) -> CoxeterDatum:
        return self.start.datum

    def alcoves(self) -> tuple[GroupElement, ...]:
        """The visited alcoves c_0 ... c_n."""
        out = [self.start]
        cur = self.start
        for i, s in enumerate(self.word.letters, start=1):
            if i not in self.word.folds:
                cur = cur * self.datum.generator(s)
            out.append(cur)
        return tuple(out)

    def panels(self) -> tuple[Panel, ...]:
        """Panel crossed or folded at each step, anchored at c_{i-1}."""
        alcs = self.alcoves()
        return tuple(
            Panel(alcs[i - 1], s) for i, s in enumerate(self.word.letters, start=1)
        )


def gallery_from(start: GroupElement, word: DecoratedWord) -> Gallery:
    for s in word.letters:
        if s not in start.datum.gens:
            raise ValueError(f"{start.datum.tag} has no generator {s}")
    return Gallery(start, word)


def minimal_gallery(x: GroupElement) -> Gallery:
    """The unfolded gallery of the canonical reduced word of x."""
    from .coxeter import reduced_word

    return Gallery(x.datum.identity,
                   DecoratedWord(reduced_word(x), frozenset()))


def footprint(g: Gallery) -> Gallery:
    """Drop the folded letters; the result walks the same alcove sequence
    without repeats."""
    letters = tuple(
        s for i, s in enumerate(g.word.letters, start=1) if i not in g.word.folds
    )
    return Gallery(g.start, DecoratedWord(letters, frozenset()))


def end_alcove(g: Gallery) -> GroupElement:
    cur = g.start
    for i, s in enumerate(g.word.letters, start=1):
        if i not in g.word.folds:
            cur = cur * g.datum.generator(s)
    return cur


def fold(g: Gallery, i: int) -> Gallery:
    """Reflect the tail of the gallery at position i (toggle the fold)."""
    if not 1 <= i <= len(g.word.letters):
        raise PositionOutOfRange(f"position {i} outside 1..{len(g.word.letters)}")
    return Gallery(g.start, DecoratedWord(g.word.letters, g.word.folds ^ {i}))


def multifold(g: Gallery, positions) -> Gallery:
    """Fold at a set of positions at once; folds commute, so the order
    never matters."""
    positions = frozenset(positions)
    bad = [i for i in positions if not 1 <= i <= len(g.word.letters)]
    if bad:
        raise PositionOutOfRange(
            f"positions {sorted(bad)} outside 1..{len(g.word.letters)}")
    return Gallery(g.start, DecoratedWord(g.word.letters, g.word.folds ^ positions))


def is_positively_folded(g: Gallery, ori: Orientation) -> bool:
    """Every fold must land on the positive side of its panel's wall."""
    cur = g.start
    for i, s in enumerate(g.word.letters, start=1):
        if i in g.word.folds:
            if ori.value(Panel(cur, s), cur) != 1:
                return False
        else:
            cur = cur * g.datum.generator(s)
    return True


def act_on_gallery(x: GroupElement, g: Gallery) -> Gallery:
    """Left translation; folds and letters are untouched."""
    return Gallery(x * g.start, g.word)


def is_minimal(g: Gallery) -> bool:
    """No folds and as short as the distance between its endpoints."""
    if g.word.folds:
        return False
    return length(g.start.inverse() * end_alcove(g)) == len(g.word.letters)
