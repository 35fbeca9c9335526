"""Exact arithmetic for finite and affine Weyl groups.

Coordinate conventions
----------------------
Everything lives in the rational span ``V`` of the coroot lattice of a
finite crystallographic root system.  Two dual coordinate systems are used:

* points of ``V`` (alcove barycenters, translation vectors, direction
  vectors) are stored by their coordinates in the basis of fundamental
  coweights;
* linear functionals (roots) are stored by their coefficients over the
  simple roots.

With these choices the pairing of a root against a point is the plain dot
product of the coordinate tuples, simple coroots are the columns of the
Cartan matrix, and every group element acts as an integer matrix plus an
integer translation vector.  Geometric predicates (which side of a wall,
how many walls are crossed) then reduce to exact integer arithmetic; no
floating point appears anywhere in this module.

The barycenter of the fundamental alcove has rational coordinates with a
fixed denominator ``D`` depending only on the type.  It is stored scaled
by ``D``, so images of it under group elements stay integral.  The alcove
containing ``x . barycenter`` determines ``x``, which is how elements are
compared against geometry throughout.

Generator indexing: the spherical generators are ``1 .. rank``; for affine
groups the extra affine generator has index ``0``.  Words are tuples of
generator indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import Exceeded, NotAffine, UnsupportedType

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]

# orders of the finite Weyl groups, used as a guard before full enumeration
_FACT = [1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880]


def _mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(a: Matrix, v: Vector) -> Vector:
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) for i in range(n))


def _vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


@lru_cache(maxsize=None)
def _mat_inverse(a: Matrix) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[pivot] = work[pivot], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    inv = tuple(tuple(int(work[i][n + j]) for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            if work[i][n + j].denominator != 1:
                raise ArithmeticError("matrix is not invertible over the integers")
    return inv


def _cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix C[i][j] = <alpha_i, alpha_j^vee>, 0-indexed."""
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    ok = True
    if family == "A" and n >= 1:
        for i in range(n - 1):
            bond(i, i + 1)
    elif family == "B" and n >= 2:
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)  # last simple root short
    elif family == "C" and n >= 2:
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)  # last simple root long
    elif family == "D" and n >= 3:
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif family == "E" and n in (6, 7, 8):
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)]:
            bond(i, j)
        for i in range(4, n - 1):
            bond(i, i + 1)
    elif family == "F" and n == 4:
        bond(0, 1)
        bond(1, 2, -2, -1)
        bond(2, 3)
    elif family == "G" and n == 2:
        bond(0, 1, -1, -3)
    else:
        ok = False
    if not ok:
        raise UnsupportedType(f"no irreducible crystallographic type {family}{rank}")
    return c


def _group_order(family: str, rank: int) -> int:
    if family == "A":
        return _FACT[rank + 1] if rank + 1 < len(_FACT) else 0
    if family in ("B", "C"):
        return (2 ** rank) * _FACT[rank] if rank < len(_FACT) else 0
    if family == "D":
        return (2 ** (rank - 1)) * _FACT[rank] if rank < len(_FACT) else 0
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    if family == "F":
        return 1152
    return 12  # G2


_TAG_RE = re.compile(r"^([A-G])([0-9]+)(~?)$")


class CoxeterDatum:
    """All precomputed data of one finite or affine Weyl group.

    Instances are interned: ``build_datum`` returns the same object for the
    same (family, rank, affine) triple, so elements of one group can be
    hashed and compared cheaply.
    """

    def __init__(self, family: str, rank: int, affine: bool):
        self.family = family
        self.rank = rank
        self.affine = affine
        self.tag = f"{family}{rank}" + ("~" if affine else "")
        self.cartan: Matrix = tuple(tuple(row) for row in _cartan_matrix(family, rank))
        n = rank

        # simple roots are the unit coefficient tuples in their own basis,
        # simple coroots are the columns of the Cartan matrix
        self.simple_roots: tuple[Vector, ...] = tuple(
            tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
        )
        self.simple_coroots: tuple[Vector, ...] = tuple(
            tuple(self.cartan[a][i] for a in range(n)) for i in range(n)
        )

        self.positive_roots, self.positive_coroots = self._close_roots()
        self._root_index = {r: i for i, r in enumerate(self.positive_roots)}
        heights = [sum(r) for r in self.positive_roots]
        top = max(heights)
        if heights.count(top) != 1:
            raise UnsupportedType(f"{self.tag}: highest root is not unique")
        hi = heights.index(top)
        self.highest_root: Vector = self.positive_roots[hi]
        self.highest_coroot: Vector = self.positive_coroots[hi]

        # scaled fundamental-alcove barycenter: the true barycenter is
        # b0_i = 1 / ((n+1) * m_i) with m_i the coefficients of the highest
        # root, stored as integers B_i = D * b0_i
        marks = self.highest_root
        big = lcm(*marks)
        self.bary_den: int = (n + 1) * big
        self.bary_scaled: Vector = tuple((n + 1) * big // ((n + 1) * m) for m in marks)

        self.gens: tuple[int, ...] = tuple(range(0, n + 1)) if affine else tuple(range(1, n + 1))
        self._gen_mat: dict[int, Matrix] = {}
        self._gen_tvec: dict[int, Vector] = {}
        self._gen_wall: dict[int, tuple[Vector, int]] = {}
        for i in range(1, n + 1):
            j = i - 1
            m = tuple(
                tuple((1 if a == b else 0) - (self.cartan[a][j] if b == j else 0)
                      for b in range(n))
                for a in range(n)
            )
            self._gen_mat[i] = m
            self._gen_tvec[i] = (0,) * n
            self._gen_wall[i] = (self.simple_roots[j], 0)
        if affine:
            th, thv = self.highest_root, self.highest_coroot
            m0 = tuple(
                tuple((1 if a == b else 0) - thv[a] * th[b] for b in range(n))
                for a in range(n)
            )
            self._gen_mat[0] = m0
            self._gen_tvec[0] = thv
            self._gen_wall[0] = (th, 1)

        self.coxeter_matrix: Matrix = self._coxeter_matrix()
        self.identity = GroupElement(self, _mat_identity(n), (0,) * n)
        self.order: int | None = None if affine else _group_order(family, rank)
        self.w0_length: int = len(self.positive_roots)

        self._refl_mat_to_root = {
            self.reflection(r, 0).mat: r for r in self.positive_roots
        }
        self._spherical_elements: tuple[GroupElement, ...] | None = None
        self._reflen_cache: dict[GroupElement, int] = {}
        self._window_cache: dict = {}

    def _close_roots(self):
        n = self.rank
        pairs = {self.simple_roots[i]: self.simple_coroots[i] for i in range(n)}
        frontier = list(pairs)
        while frontier:
            nxt = []
            for root in frontier:
                co = pairs[root]
                for j in range(n):
                    pj = sum(root[k] * self.cartan[k][j] for k in range(n))
                    new_root = tuple(
                        c - (pj if k == j else 0) for k, c in enumerate(root)
                    )
                    new_co = tuple(
                        co[a] - co[j] * self.cartan[a][j] for a in range(n)
                    )
                    if new_root not in pairs:
                        pairs[new_root] = new_co
                        nxt.append(new_root)
            frontier = nxt
        pos = sorted((r for r in pairs if all(c >= 0 for c in r)),
                     key=lambda r: (sum(r), r))
        return tuple(pos), tuple(pairs[r] for r in pos)

    def _coxeter_matrix(self) -> Matrix:
        rows = []
        for s in self.gens:
            row = []
            rs, _ = self._gen_wall[s]
            vs = self.highest_coroot if s == 0 else self.simple_coroots[s - 1]
            for t in self.gens:
                if s == t:
                    row.append(1)
                    continue
                rt, _ = self._gen_wall[t]
                vt = self.highest_coroot if t == 0 else self.simple_coroots[t - 1]
                prod = _dot(rs, vt) * _dot(rt, vs)
                # entry 0 stands for an infinite bond (only in affine A1)
                row.append({0: 2, 1: 3, 2: 4, 3: 6, 4: 0}[prod])
            rows.append(tuple(row))
        return tuple(rows)

    # -- basic objects -------------------------------------------------

    def generator(self, s: int) -> "GroupElement":
        if s not in self.gens:
            raise ValueError(f"{self.tag} has no generator {s}")
        return GroupElement(self, self._gen_mat[s], self._gen_tvec[s])

    def coxeter_m(self, s: int, t: int) -> int:
        """Order of the product of two generators; 0 stands for infinite."""
        return self.coxeter_matrix[self.gens.index(s)][self.gens.index(t)]

    def generator_wall(self, s: int) -> "Hyperplane":
        root, level = self._gen_wall[s]
        return Hyperplane(root, level)

    def reflection(self, root: Vector, level: int) -> "GroupElement":
        """The reflection fixing the wall at the given root and level."""
        root, coroot, level = self._canonical_root(root, level)
        n = self.rank
        m = tuple(
            tuple((1 if a == b else 0) - coroot[a] * root[b] for b in range(n))
            for a in range(n)
        )
        if level != 0 and not self.affine:
            raise NotAffine(f"{self.tag} has no wall at level {level}")
        return GroupElement(self, m, tuple(level * c for c in coroot))

    def _canonical_root(self, root: Vector, level: int):
        root = tuple(root)
        if root in self._root_index:
            return root, self.positive_coroots[self._root_index[root]], level
        neg = tuple(-c for c in root)
        if neg in self._root_index:
            return neg, self.positive_coroots[self._root_index[neg]], -level
        raise ValueError(f"{root} is not a root of {self.tag}")

    def hyperplane(self, root: Vector, level: int) -> "Hyperplane":
        root, _, level = self._canonical_root(root, level)
        if not self.affine and level != 0:
            raise NotAffine(f"{self.tag} has no wall at level {level}")
        return Hyperplane(root, level)

    def coroot_of(self, root: Vector) -> Vector:
        return self.positive_coroots[self._root_index[tuple(root)]]

    @property
    def barycenter(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(b, self.bary_den) for b in self.bary_scaled)

    @property
    def spherical_datum(self) -> "CoxeterDatum":
        return build_datum(self.family, self.rank, affine=False) if self.affine else self

    def spherical_elements(self) -> tuple["GroupElement", ...]:
        """All elements of the finite Weyl group, sorted by length then word."""
        sph = self.spherical_datum
        if sph is not self:
            return sph.spherical_elements()
        if self._spherical_elements is None:
            if self.order and self.order > 100_000:
                raise Exceeded(f"{self.tag} is too large to enumerate ({self.order})")
            elems = sorted(_bfs(self), key=lambda x: (length(x), reduced_word(x)))
            self._spherical_elements = tuple(elems)
        return self._spherical_elements

    # -- geometry helpers ----------------------------------------------

    def barycenter_image_scaled(self, x: "GroupElement") -> Vector:
        """Coordinates of bary_den * (x . barycenter); always integral."""
        mb = _mat_vec(x.mat, self.bary_scaled)
        return tuple(m + self.bary_den * t for m, t in zip(mb, x.tvec))

    def barycenter_image(self, x: "GroupElement") -> tuple[Fraction, ...]:
        pt = self.barycenter_image_scaled(x)
        return tuple(Fraction(c, self.bary_den) for c in pt)

    def map_hyperplane(self, x: "GroupElement", h: "Hyperplane"):
        """Image of a wall under x, with the sign flip of the normal.

        Returns (canonical image, flipped) where flipped is True when the
        canonical positive normal of the image points the other way than
        the transported normal.
        """
        inv = _mat_inverse(x.mat)
        moved = tuple(
            sum(h.root[a] * inv[a][b] for a in range(self.rank))
            for b in range(self.rank)
        )
        level = h.level + _dot(moved, x.tvec)
        if moved in self._root_index:
            return Hyperplane(moved, level), False
        return Hyperplane(tuple(-c for c in moved), -level), True

    def __repr__(self):
        return f"CoxeterDatum({self.tag!r})"


@dataclass(frozen=True, slots=True)
class GroupElement:
    """One element of a (finite or affine) Weyl group.

    ``mat`` is the linear part in fundamental-coweight coordinates and
    ``tvec`` the translation part, a coroot-lattice vector in the same
    coordinates.  The element acts on points as v -> mat . v + tvec.
    """

    datum: CoxeterDatum = field(repr=False)
    mat: Matrix
    tvec: Vector

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.datum is not self.datum:
            raise ValueError("cannot multiply elements of different groups")
        return GroupElement(
            self.datum,
            _mat_mul(self.mat, other.mat),
            _vec_add(_mat_vec(self.mat, other.tvec), self.tvec),
        )

    def inverse(self) -> "GroupElement":
        inv = _mat_inverse(self.mat)
        return GroupElement(
            self.datum, inv, tuple(-c for c in _mat_vec(inv, self.tvec))
        )

    def apply(self, point) -> tuple[Fraction, ...]:
        """Image of a point given in fundamental-coweight coordinates."""
        n = self.datum.rank
        return tuple(
            sum(self.mat[i][k] * point[k] for k in range(n)) + self.tvec[i]
            for i in range(n)
        )

    def is_identity(self) -> bool:
        return self == self.datum.identity

    def __repr__(self):
        return f"<{self.datum.tag} {''.join(map(str, reduced_word(self)))or 'e'}>"


@dataclass(frozen=True, slots=True)
class Hyperplane:
    """A wall: the zero set of <root, .> - level, with root in canonical
    positive form."""

    root: Vector
    level: int


@dataclass(frozen=True, slots=True)
class Panel:
    """The type-``type`` facet of an alcove.

    The same geometric panel has two representations, one for each of the
    two alcoves containing it; ``alcoves`` returns both.
    """

    alcove: GroupElement
    type: int

    def wall(self) -> Hyperplane:
        d = self.alcove.datum
        h, _ = d.map_hyperplane(self.alcove, d.generator_wall(self.type))
        return h

    def alcoves(self) -> tuple[GroupElement, GroupElement]:
        return self.alcove, self.alcove * self.alcove.datum.generator(self.type)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


@lru_cache(maxsize=None)
def _build_datum(family: str, rank: int, affine: bool) -> CoxeterDatum:
    return CoxeterDatum(family, rank, affine)


def build_datum(family: str, rank: int, affine: bool = False) -> CoxeterDatum:
    """Interned constructor for group data, e.g. build_datum('A', 2, True)."""
    if not isinstance(rank, int) or rank < 1:
        raise UnsupportedType(f"invalid rank {rank!r}")
    return _build_datum(str(family).upper(), rank, bool(affine))


def datum_from_tag(tag: str) -> CoxeterDatum:
    """Parse tags like 'A2', 'B2~', 'G2~' (trailing ~ marks the affine group)."""
    m = _TAG_RE.match(tag.strip())
    if not m:
        raise UnsupportedType(f"cannot parse type tag {tag!r}")
    return build_datum(m.group(1), int(m.group(2)), affine=m.group(3) == "~")


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    return x * y


def element_from_word(datum: CoxeterDatum, word) -> GroupElement:
    x = datum.identity
    for s in word:
        x = x * datum.generator(s)
    return x


def length(x: GroupElement) -> int:
    """Number of walls separating the fundamental alcove from its image."""
    d = x.datum
    pt = d.barycenter_image_scaled(x)
    den = d.bary_den
    if d.affine:
        return sum(abs(_dot(r, pt) // den) for r in d.positive_roots)
    return sum(1 for r in d.positive_roots if _dot(r, pt) < 0)


def descents(x: GroupElement, side: str = "right") -> frozenset[int]:
    """Generators s with length(xs) < length(x)  (or sx for side='left')."""
    d = x.datum
    lx = length(x)
    out = []
    for s in d.gens:
        g = d.generator(s)
        y = x * g if side == "right" else g * x
        if length(y) < lx:
            out.append(s)
    return frozenset(out)


def reduced_word(x: GroupElement) -> tuple[int, ...]:
    """Canonical reduced word: repeatedly strip the smallest right descent."""
    d = x.datum
    word = []
    cur = x
    lcur = length(cur)
    while lcur > 0:
        for s in d.gens:
            nxt = cur * d.generator(s)
            ln = length(nxt)
            if ln < lcur:
                word.append(s)
                cur, lcur = nxt, ln
                break
        else:
            raise AssertionError("no descent found for a non-identity element")
    word.reverse()
    return tuple(word)


def side_of(point, h: Hyperplane) -> int:
    """-1, 0 or +1 according to the sign of <root, point> - level."""
    val = sum(a * b for a, b in zip(h.root, point)) - h.level
    return (val > 0) - (val < 0)


def separating_hyperplanes(x: GroupElement) -> list[Hyperplane]:
    """Walls between the fundamental alcove and x, exactly length(x) many."""
    d = x.datum
    pt = d.barycenter_image_scaled(x)
    den = d.bary_den
    out = []
    for r in d.positive_roots:
        v = _dot(r, pt)
        if d.affine:
            q = v // den
            if q > 0:
                out.extend(Hyperplane(r, k) for k in range(1, q + 1))
            elif q < 0:
                out.extend(Hyperplane(r, k) for k in range(q + 1, 1))
        elif v < 0:
            out.append(Hyperplane(r, 0))
    return out


def spherical_projection(x: GroupElement) -> GroupElement:
    """Forget the translation part; lands in the finite Weyl group."""
    d = x.datum
    if not d.affine:
        raise NotAffine(f"{d.tag} has no spherical projection")
    sph = d.spherical_datum
    return GroupElement(sph, x.mat, (0,) * d.rank)


def is_reflection(x: GroupElement) -> bool:
    """True when x fixes some wall of the group pointwise."""
    d = x.datum
    root = d._refl_mat_to_root.get(x.mat)
    if root is None:
        return False
    coroot = d.coroot_of(root)
    j = next(i for i, c in enumerate(coroot) if c != 0)
    k, rem = divmod(x.tvec[j], coroot[j])
    if rem != 0:
        return False
    if not d.affine and k != 0:
        return False
    return x.tvec == tuple(k * c for c in coroot)


def _window_reflections(d: CoxeterDatum, x: GroupElement, pad: int):
    """Reflections in walls near the segment from the base alcove to x."""
    if not d.affine:
        key = ("sph",)
    else:
        pt = d.barycenter_image_scaled(x)
        den = d.bary_den
        bounds = []
        for r in d.positive_roots:
            v = _dot(r, pt)
            lo = min(0, v // den) - pad
            hi = max(1, -((-v) // den)) + pad
            bounds.append((lo, hi))
        key = tuple(bounds)
    cached = d._window_cache.get(key)
    if cached is not None:
        return cached
    refl = []
    if not d.affine:
        refl = [d.reflection(r, 0) for r in d.positive_roots]
    else:
        for (lo, hi), r in zip(key, d.positive_roots):
            refl.extend(d.reflection(r, k) for k in range(lo, hi + 1))
    pair_keys = None
    d._window_cache[key] = [refl, pair_keys]
    return d._window_cache[key]


def _reflen_search(d, x, cap, pad) -> int | None:
    entry = _window_reflections(d, x, pad)
    refl = entry[0]
    if cap >= 2 and any(is_reflection(r * x) for r in refl):
        return 2
    if cap < 3:
        return None
    if entry[1] is None:
        pairs = {}
        for r1 in refl:
            for r2 in refl:
                p = r1 * r2
                pairs.setdefault((p.mat, p.tvec), p)
        entry[1] = pairs
    pairs = entry[1]

    def down(y: GroupElement, depth: int) -> bool:
        # can y be written with exactly <= depth window reflections?
        if depth >= 4:
            return any(down(q * y, depth - 2) for q in pairs.values())
        if depth == 3:
            return any(is_reflection(q * y) for q in pairs.values())
        if depth == 2:
            return (y.mat, y.tvec) in pairs
        if depth == 1:
            return is_reflection(y)
        return y.is_identity()

    for depth in range(3, cap + 1):
        if down(x, depth):
            return depth
    return None


def reflection_length(x: GroupElement, cap: int) -> int | None:
    """Minimal number of reflections multiplying to x, or None past cap.

    Searches products of reflections in walls near the segment from the
    base alcove to x, enlarging the window until the answer stabilizes.
    A factorization that leaves the window only to come back can in
    principle exist, which is why the window grows; two consecutive sizes
    agreeing is taken as the answer.
    """
    if x.is_identity():
        return 0
    if is_reflection(x):
        return 1 if cap >= 1 else None
    cached = x.datum._reflen_cache.get(x)
    if cached is not None:
        return cached if cached <= cap else None
    d = x.datum
    prev = -1
    best = None
    for pad in (1, 2, 4):
        best = _reflen_search(d, x, cap, pad)
        if best == prev:
            break
        prev = best
        if not d.affine:
            break  # finite groups have no window to grow
    if best is not None:
        d._reflen_cache[x] = best
    return best


def _bfs(datum: CoxeterDatum, max_length: int | None = None):
    """Breadth-first enumeration of the group by right multiplication.

    Yields nothing fancy: a dict element -> distance from the identity.
    For affine groups max_length is required.
    """
    if datum.affine and max_length is None:
        raise NotAffine(f"{datum.tag} is infinite; a max_length is required")
    gens = [datum.generator(s) for s in datum.gens]
    seen = {datum.identity: 0}
    frontier = [datum.identity]
    depth = 0
    while frontier and (max_length is None or depth < max_length):
        depth += 1
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen[y] = depth
                    nxt.append(y)
        frontier = nxt
    return seen


def element_to_json(x: GroupElement, include_barycenter: bool = False) -> dict:
    obj: dict = {"word": list(reduced_word(x))}
    if include_barycenter:
        obj["barycenter"] = [
            f"{f.numerator}/{f.denominator}" for f in x.datum.barycenter_image(x)
        ]
    return obj


def element_from_json(datum: CoxeterDatum, obj: dict) -> GroupElement:
    if "word" not in obj:
        raise ValueError("element JSON needs a 'word' key")
    return element_from_word(datum, obj["word"])
