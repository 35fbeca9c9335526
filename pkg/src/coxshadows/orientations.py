"""Orientations: signs attached to the two sides of every wall.

An orientation assigns, to each pair (panel, alcove containing it), a sign.
All orientations here are wall consistent: the sign only depends on which
side of the panel's wall the alcove lies, so each kind is really a rule
mapping a wall to the set of its positive sides (one, both, or neither).

Kinds
-----
* trivial: every side positive (sign +1) or no side positive (sign -1);
* alcove: positive side of every wall is the side of a fixed alcove;
* simplex: like alcove for a lower dimensional face, except that walls
  containing the face have both sides positive;
* weyl_chamber: on an affine group, the positive side of a wall is where
  the wall's root pairs positively against a fixed chamber direction;
* custom_table: an explicit finite table of signs per (wall, side);
* periodic: one set of positive sides per parallel class of walls.

A ``periodic`` orientation over a finite group doubles as the boundary
data of an affine one; ``boundary_orientation`` and ``affine_orientation``
convert back and forth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import coxeter
from .coxeter import (
    CoxeterDatum,
    GroupElement,
    Hyperplane,
    Panel,
    length,
    reduced_word,
    separating_hyperplanes,
    side_of,
)
from .errors import (
    NotAffine,
    NotIncident,
    NotPeriodic,
    NotWallConsistent,
    UnsupportedType,
)

BOTH_SIDES = frozenset((1, -1))
NO_SIDES = frozenset()


@dataclass(frozen=True, slots=True)
class Direction:
    """A Weyl chamber of the boundary, named by a finite group element.

    ``vector`` is the image of the all-ones coweight vector under the
    label, an interior point of the chamber; its pairings against roots
    decide every side question about the chamber.
    """

    datum: CoxeterDatum = field(repr=False)
    label: GroupElement
    vector: tuple[int, ...]

    @staticmethod
    def from_element(datum: CoxeterDatum, label: GroupElement) -> "Direction":
        if not datum.affine:
            raise NotAffine(f"{datum.tag} has no chamber directions at infinity")
        rho = (1,) * datum.rank
        vec = tuple(sum(label.mat[i][k] * rho[k] for k in range(datum.rank))
                    for i in range(datum.rank))
        return Direction(datum, label, vec)

    @staticmethod
    def from_word(datum: CoxeterDatum, word) -> "Direction":
        sph = datum.spherical_datum
        return Direction.from_element(datum, coxeter.element_from_word(sph, word))

    def __repr__(self):
        return f"Direction({''.join(map(str, reduced_word(self.label))) or 'e'})"


@dataclass(frozen=True, slots=True)
class Simplex:
    """A face of an alcove; ``types`` are the panel types it lies on."""

    alcove: GroupElement
    types: frozenset[int]

    def face_point(self) -> tuple[Fraction, ...]:
        """An interior point of the face, in coweight coordinates."""
        d = self.alcove.datum
        n = d.rank
        if d.affine:
            verts = []
            for s in d.gens:
                if s in self.types:
                    continue
                if s == 0:
                    verts.append((Fraction(0),) * n)
                else:
                    m = d.highest_root[s - 1]
                    verts.append(tuple(Fraction(1, m) if i == s - 1 else Fraction(0)
                                       for i in range(n)))
            pt = tuple(sum(v[i] for v in verts) / len(verts) for i in range(n))
        else:
            pt = tuple(Fraction(0 if (i + 1) in self.types else 1) for i in range(n))
        return self.alcove.apply(pt)


class Orientation:
    """Base class; concrete kinds implement the per-wall side rule."""

    kind = "?"

    def __init__(self, datum: CoxeterDatum):
        self.datum = datum

    def positive_signs(self, h: Hyperplane) -> frozenset[int]:
        raise NotImplementedError

    def value(self, panel: Panel, alcove: GroupElement) -> int:
        a, b = panel.alcoves()
        if alcove != a and alcove != b:
            raise NotIncident(f"{alcove!r} does not contain the given panel")
        h = panel.wall()
        side = side_of(self.datum.barycenter_image(alcove), h)
        return 1 if side in self.positive_signs(h) else -1

    def opposite(self) -> "Orientation":
        return OppositeOrientation(self)


class TrivialOrientation(Orientation):
    kind = "trivial"

    def __init__(self, datum, sign: int):
        super().__init__(datum)
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign = sign

    def positive_signs(self, h):
        return BOTH_SIDES if self.sign == 1 else NO_SIDES

    def value(self, panel, alcove):
        a, b = panel.alcoves()
        if alcove != a and alcove != b:
            raise NotIncident(f"{alcove!r} does not contain the given panel")
        return self.sign

    def opposite(self):
        return TrivialOrientation(self.datum, -self.sign)

    def __eq__(self, other):
        return (isinstance(other, TrivialOrientation)
                and other.datum is self.datum and other.sign == self.sign)

    def __hash__(self):
        return hash(("trivial", id(self.datum), self.sign))

    def __repr__(self):
        return f"TrivialOrientation({'+' if self.sign == 1 else '-'})"


class SimplexOrientation(Orientation):
    """Positive side of a wall is the side of a fixed face; walls through
    the face have both sides positive."""

    kind = "simplex"

    def __init__(self, datum, simplex: Simplex):
        super().__init__(datum)
        if simplex.alcove.datum is not datum:
            raise ValueError("simplex belongs to a different group")
        self.simplex = simplex
        self._point = simplex.face_point()

    def positive_signs(self, h):
        side = side_of(self._point, h)
        return BOTH_SIDES if side == 0 else frozenset((side,))

    def __eq__(self, other):
        return (type(other) is type(self) and other.datum is self.datum
                and other.simplex == self.simplex)

    def __hash__(self):
        return hash((self.kind, id(self.datum), self.simplex))

    def __repr__(self):
        return f"{type(self).__name__}({self.simplex})"


class AlcoveOrientation(SimplexOrientation):
    """Positive side of every wall is the side of a fixed alcove."""

    kind = "alcove"

    def __init__(self, datum, alcove: GroupElement):
        super().__init__(datum, Simplex(alcove, frozenset()))
        self.alcove = alcove


class WeylChamberOrientation(Orientation):
    """Positive side of a wall is where its root pairs positively with a
    chamber direction.  Only affine groups carry these."""

    kind = "weyl_chamber"

    def __init__(self, datum, direction: Direction):
        super().__init__(datum)
        if not datum.affine:
            raise NotAffine(f"{datum.tag} has no chamber directions at infinity")
        self.direction = direction

    def positive_signs(self, h):
        pairing = sum(a * b for a, b in zip(h.root, self.direction.vector))
        return frozenset((1,)) if pairing > 0 else frozenset((-1,))

    def __eq__(self, other):
        return (isinstance(other, WeylChamberOrientation)
                and other.datum is self.datum
                and other.direction.label == self.direction.label)

    def __hash__(self):
        return hash(("weyl", id(self.datum), self.direction.label))

    def __repr__(self):
        return f"WeylChamberOrientation({self.direction!r})"


class CustomTableOrientation(Orientation):
    """Explicit sign table over a finite declared set of walls.

    ``entries`` maps (Hyperplane, side) -> sign.  Both sides of every
    declared wall must be present; walls outside the table raise KeyError
    when queried.
    """

    kind = "custom_table"

    def __init__(self, datum, entries: dict):
        super().__init__(datum)
        entries = dict(entries)
        walls = {h for (h, _side) in entries}
        for h in walls:
            if h.root not in datum._root_index:
                raise ValueError(f"{h} is not in canonical positive form")
            if not datum.affine and h.level != 0:
                raise ValueError(f"{h} is not a wall of the finite group")
            if (h, 1) not in entries or (h, -1) not in entries:
                raise NotWallConsistent(f"table declares only one side of {h}")
        for (h, side), val in entries.items():
            if side not in (1, -1) or val not in (1, -1):
                raise ValueError("table sides and values must be +1 or -1")
        self.entries = entries
        self.walls = frozenset(walls)

    def positive_signs(self, h):
        if (h, 1) not in self.entries:
            raise KeyError(f"wall {h} is not declared in the table")
        return frozenset(s for s in (1, -1) if self.entries[(h, s)] == 1)

    def __eq__(self, other):
        return (isinstance(other, CustomTableOrientation)
                and other.datum is self.datum and other.entries == self.entries)

    def __hash__(self):
        return hash(("custom", id(self.datum), frozenset(self.entries.items())))

    def __repr__(self):
        return f"CustomTableOrientation({len(self.walls)} walls)"


class PeriodicOrientation(Orientation):
    """One positive-side set per parallel class of walls (per root)."""

    kind = "periodic"

    def __init__(self, datum, signs: dict):
        super().__init__(datum)
        fixed = {}
        for root, sgns in signs.items():
            root = tuple(root)
            if root not in datum._root_index:
                raise ValueError(f"{root} is not a positive root of {datum.tag}")
            fixed[root] = frozenset(sgns)
        missing = set(datum.positive_roots) - set(fixed)
        if missing:
            raise ValueError(f"no sides declared for classes {sorted(missing)}")
        self.signs = fixed

    def positive_signs(self, h):
        return self.signs[h.root]

    def __eq__(self, other):
        return (isinstance(other, PeriodicOrientation)
                and other.datum is self.datum and other.signs == self.signs)

    def __hash__(self):
        return hash(("periodic", id(self.datum),
                     frozenset((r, s) for r, s in self.signs.items())))

    def __repr__(self):
        return f"PeriodicOrientation({self.signs})"


class OppositeOrientation(Orientation):
    """Pointwise negation of another orientation."""

    kind = "opposite"

    def __init__(self, inner: Orientation):
        super().__init__(inner.datum)
        self.inner = inner

    def positive_signs(self, h):
        return BOTH_SIDES - self.inner.positive_signs(h)

    def value(self, panel, alcove):
        return -self.inner.value(panel, alcove)

    def opposite(self):
        return self.inner

    def __eq__(self, other):
        return isinstance(other, OppositeOrientation) and other.inner == self.inner

    def __hash__(self):
        return hash(("opp", self.inner))


# -- the operations ------------------------------------------------------


def trivial_orientation(datum, sign: int = 1) -> TrivialOrientation:
    return TrivialOrientation(datum, sign)


def alcove_orientation(datum, alcove: GroupElement) -> AlcoveOrientation:
    return AlcoveOrientation(datum, alcove)


def simplex_orientation(datum, alcove: GroupElement, types) -> SimplexOrientation:
    return SimplexOrientation(datum, Simplex(alcove, frozenset(types)))


def chamber_orientation(datum, direction: Direction) -> WeylChamberOrientation:
    return WeylChamberOrientation(datum, direction)


def dominant_orientation(datum) -> WeylChamberOrientation:
    return WeylChamberOrientation(
        datum, Direction.from_element(datum, datum.spherical_datum.identity))


def braid_sensitive_orientation(datum) -> CustomTableOrientation:
    """The stock counterexample to braid invariance.

    A wall-consistent table on the rank-2 simply-laced finite group whose
    shadows tell the two reduced words of the longest element apart: both
    simple-root walls are positive on both sides, while the long-root wall
    is positive only on the side of the identity alcove.  The shadow of
    (1,2,1) then contains s1 but not s2; for (2,1,2) the other way around.
    """
    if datum.affine or datum.tag != "A2":
        raise UnsupportedType(
            f"the bundled counterexample table lives on A2, not {datum.tag}")
    table = {}
    for root in datum.positive_roots:
        h = Hyperplane(root, 0)
        neg = root == datum.highest_root
        table[(h, 1)] = -1 if neg else 1
        table[(h, -1)] = 1
    return CustomTableOrientation(datum, table)


def evaluate(ori: Orientation, panel: Panel, alcove: GroupElement) -> int:
    """Sign of the orientation at (panel, alcove); alcove must contain it."""
    return ori.value(panel, alcove)


def positive_side(ori: Orientation, h: Hyperplane) -> frozenset[int]:
    """Set of positive sides of a wall: both, one, or neither."""
    return ori.positive_signs(h)


def act(x: GroupElement, ori: Orientation) -> Orientation:
    """Left action on orientations: (x.phi)(p, c) = phi(x^-1 p, x^-1 c)."""
    d = ori.datum
    if x.datum is not d:
        raise ValueError("element acts on orientations of its own group")
    if isinstance(ori, TrivialOrientation):
        return ori
    if isinstance(ori, WeylChamberOrientation):
        sph = d.spherical_datum
        lin = GroupElement(sph, x.mat, (0,) * d.rank)
        return WeylChamberOrientation(
            d, Direction.from_element(d, lin * ori.direction.label))
    if isinstance(ori, AlcoveOrientation):
        return AlcoveOrientation(d, x * ori.alcove)
    if isinstance(ori, SimplexOrientation):
        s = ori.simplex
        return SimplexOrientation(d, Simplex(x * s.alcove, s.types))
    if isinstance(ori, CustomTableOrientation):
        new = {}
        for (h, side), val in ori.entries.items():
            h2, flipped = d.map_hyperplane(x, h)
            new[(h2, -side if flipped else side)] = val
        return CustomTableOrientation(d, new)
    if isinstance(ori, PeriodicOrientation):
        new = {}
        for root, sgns in ori.signs.items():
            h2, flipped = d.map_hyperplane(x, Hyperplane(root, 0))
            new[h2.root] = frozenset(-s for s in sgns) if flipped else sgns
        return PeriodicOrientation(d, new)
    if isinstance(ori, OppositeOrientation):
        return OppositeOrientation(act(x, ori.inner))
    raise TypeError(f"cannot act on orientation of kind {ori.kind}")


def valuation(ori: Orientation, x: GroupElement) -> int:
    """Positively crossed walls minus negatively crossed walls on the way
    from the base alcove to x."""
    d = x.datum
    if ori.datum is not d:
        raise ValueError("orientation belongs to a different group")
    if isinstance(ori, TrivialOrientation):
        return ori.sign * length(x)
    if isinstance(ori, WeylChamberOrientation) and d.affine:
        # all separating walls of one parallel class lie on the same side
        # of x, so the class contributes its full count with one sign
        pt = d.barycenter_image_scaled(x)
        den = d.bary_den
        vec = ori.direction.vector
        total = 0
        for r in d.positive_roots:
            q = sum(a * b for a, b in zip(r, pt)) // den
            if q == 0:
                continue
            pos = sum(a * b for a, b in zip(r, vec)) > 0
            total += abs(q) if (q > 0) == pos else -abs(q)
        return total
    total = 0
    bary = d.barycenter_image(x)
    for h in separating_hyperplanes(x):
        total += 1 if side_of(bary, h) in ori.positive_signs(h) else -1
    return total


def is_dominant(ori: Orientation, x: GroupElement) -> bool:
    """True when every wall on the way to x is crossed positively."""
    return valuation(ori, x) == length(x)


def boundary_orientation(ori: Orientation) -> PeriodicOrientation:
    """Restrict a periodic orientation of an affine group to the spherical
    wall classes at infinity."""
    d = ori.datum
    if not d.affine:
        raise NotAffine(f"{d.tag} has no boundary")
    sph = d.spherical_datum
    if isinstance(ori, TrivialOrientation):
        s = BOTH_SIDES if ori.sign == 1 else NO_SIDES
        return PeriodicOrientation(sph, {r: s for r in sph.positive_roots})
    if isinstance(ori, WeylChamberOrientation):
        vec = ori.direction.vector
        signs = {}
        for r in sph.positive_roots:
            p = sum(a * b for a, b in zip(r, vec))
            signs[r] = frozenset((1,)) if p > 0 else frozenset((-1,))
        return PeriodicOrientation(sph, signs)
    if isinstance(ori, PeriodicOrientation):
        return PeriodicOrientation(sph, dict(ori.signs))
    if isinstance(ori, OppositeOrientation):
        inner = boundary_orientation(ori.inner)
        return PeriodicOrientation(
            sph, {r: BOTH_SIDES - s for r, s in inner.signs.items()})
    if isinstance(ori, CustomTableOrientation):
        signs: dict = {}
        for (h, _), _ in ori.entries.items():
            got = ori.positive_signs(h)
            if signs.setdefault(h.root, got) != got:
                raise NotPeriodic(f"sides differ along the class of {h.root}")
        if set(signs) != set(sph.positive_roots):
            raise NotPeriodic("table does not cover every parallel class")
        return PeriodicOrientation(sph, signs)
    raise NotPeriodic(f"{ori.kind} orientations are not periodic")


def affine_orientation(datum: CoxeterDatum, table) -> Orientation:
    """Extend boundary data to the affine group, recognizing the special
    kinds: all-positive and all-negative tables give trivial orientations,
    chamber tables give Weyl chamber orientations."""
    if not datum.affine:
        raise NotAffine(f"{datum.tag} is not affine")
    sph = datum.spherical_datum
    if isinstance(table, PeriodicOrientation):
        signs = {r: table.signs[r] for r in sph.positive_roots}
    else:
        signs = {tuple(r): frozenset(s) for r, s in dict(table).items()}
        if set(signs) != set(sph.positive_roots):
            raise ValueError("table must declare every positive root class")
    if all(s == BOTH_SIDES for s in signs.values()):
        return TrivialOrientation(datum, 1)
    if all(s == NO_SIDES for s in signs.values()):
        return TrivialOrientation(datum, -1)
    if all(len(s) == 1 for s in signs.values()):
        label = _chamber_from_signs(sph, {r: next(iter(s)) for r, s in signs.items()})
        if label is not None:
            return WeylChamberOrientation(datum, Direction.from_element(datum, label))
    return PeriodicOrientation(datum, signs)


def _chamber_from_signs(sph: CoxeterDatum, eps: dict) -> GroupElement | None:
    """Find the chamber whose interior realizes the given root signs, if any.

    Walks down by simple reflections: a simple root with a negative sign is
    flipped by its reflection, pulling the target chamber one step closer
    to the dominant one.  Unrealizable sign patterns never reach the
    all-positive state within the length of the longest element.
    """
    target = dict(eps)
    eps = dict(eps)
    word = []
    for _ in range(sph.w0_length + 1):
        neg = [i for i, r in enumerate(sph.simple_roots) if eps[r] == -1]
        if not neg:
            break
        j = neg[0]
        word.append(j + 1)
        refl = sph.generator(j + 1)
        new = {}
        for r in sph.positive_roots:
            h2, flipped = sph.map_hyperplane(refl, Hyperplane(r, 0))
            new[r] = -eps[h2.root] if flipped else eps[h2.root]
        eps = new
    if any(eps[r] == -1 for r in sph.positive_roots):
        return None
    cand = coxeter.element_from_word(sph, word)
    vec = tuple(sum(cand.mat[i][k] for k in range(sph.rank)) for i in range(sph.rank))
    for r in sph.positive_roots:
        p = sum(a * b for a, b in zip(r, vec))
        if (1 if p > 0 else -1) != target[r]:
            return None
    return cand


# -- serialization and tags ----------------------------------------------


def table_to_json(ori: CustomTableOrientation) -> dict:
    entries = sorted(
        ((list(h.root), h.level, side, val) for (h, side), val in ori.entries.items()),
        key=lambda e: (e[0], e[1], -e[2]),
    )
    return {
        "type": ori.datum.tag,
        "entries": [
            {"root": r, "level": lv, "side": s, "value": v}
            for r, lv, s, v in entries
        ],
    }


def custom_table_from_json(datum: CoxeterDatum, obj: dict) -> CustomTableOrientation:
    entries = {}
    for e in obj["entries"]:
        h = datum.hyperplane(tuple(e["root"]), e["level"])
        entries[(h, e["side"])] = e["value"]
    return CustomTableOrientation(datum, entries)


def orientation_from_tag(datum: CoxeterDatum, tag: str) -> Orientation:
    """Parse the command-line orientation tags.

    '+' and '-' are the trivial orientations, 'id-alcove' is the alcove
    orientation at the base alcove, 'dir:<word>' is the Weyl chamber
    orientation named by a spherical word ('dir:' alone is dominant), and
    'table:<file.json>' loads a custom table.
    """
    if tag == "+":
        return TrivialOrientation(datum, 1)
    if tag == "-":
        return TrivialOrientation(datum, -1)
    if tag == "id-alcove":
        return AlcoveOrientation(datum, datum.identity)
    if tag.startswith("dir:"):
        word = [int(c) for c in tag[4:].strip()]
        return WeylChamberOrientation(datum, Direction.from_word(datum, word))
    if tag.startswith("table:"):
        with open(tag[6:], "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        return custom_table_from_json(datum, obj)
    raise ValueError(f"unknown orientation tag {tag!r}")
