"""Static SVG scenes for rank-2 affine groups.

A scene shows the alcove tiling inside a disc, the full shadow of one
element shaded light, its shadow toward one chamber direction shaded
dark on top, the element's own alcove outlined, an arrow for the chosen
direction, and a legend listing every chamber of the finite group.

All polygon corners are exact rationals mapped through one fixed planar
realization per family; floats appear only at the final formatting step,
printed with a fixed precision so output is byte for byte reproducible.
Every shaded polygon carries the reduced word of its element in a
``data-element`` attribute, which is what the structural round-trip in
``scene_polygons`` reads back.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction

from .coxeter import CoxeterDatum, GroupElement, length, reduced_word
from .errors import RenderUnsupported
from .orientations import Direction
from .shadows import ShadowSet, full_shadow, shadow_L

# planar root vectors (rows), chosen per family so that
# 2 (r_i, r_j) / (r_j, r_j) reproduces the Cartan matrix
_SQ3 = math.sqrt(3.0)
_SQ2 = math.sqrt(2.0)
_ROOT_ROWS = {
    "A": ((1.0, 0.0), (-0.5, 0.5 * _SQ3)),
    "B": ((_SQ2, 0.0), (-0.5 * _SQ2, 0.5 * _SQ2)),
    "G": ((1.0, 0.0), (-1.5, 0.5 * _SQ3)),
}

UNIT = 110.0
PAD = 24.0
LEGEND_W = 150.0

_STYLE = {
    "base": {"fill": "none", "stroke": "#c9c9c9", "stroke-width": "1"},
    "full": {"fill": "#bcd2ee", "stroke": "#8aa8cf", "stroke-width": "1"},
    "regular": {"fill": "#2e5fa3", "stroke": "#1d3e6e", "stroke-width": "1"},
}


def _f(v: float) -> str:
    out = f"{v:.4f}"
    return "0.0000" if out == "-0.0000" else out


def embedding(datum: CoxeterDatum):
    """Columns of the inverse root-row matrix: the planar images of the
    fundamental coweights."""
    if datum.rank != 2 or not datum.affine:
        raise RenderUnsupported(
            f"scenes are drawn for rank-2 affine types only, not {datum.tag}")
    rows = _ROOT_ROWS[datum.family]
    (a, b), (c, d) = rows
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


def embed_point(omega, point) -> tuple[float, float]:
    x = float(point[0])
    y = float(point[1])
    return (omega[0][0] * x + omega[0][1] * y,
            omega[1][0] * x + omega[1][1] * y)


def _fund_vertices(datum: CoxeterDatum):
    m = datum.highest_root
    zero = (Fraction(0), Fraction(0))
    return (zero,
            (Fraction(1, m[0]), Fraction(0)),
            (Fraction(0), Fraction(1, m[1])))


def alcove_corners(datum: CoxeterDatum, omega, g: GroupElement):
    return tuple(embed_point(omega, g.apply(v)) for v in _fund_vertices(datum))


def _norm(p) -> float:
    return math.hypot(p[0], p[1])


def ball(datum: CoxeterDatum, omega, radius: float):
    """Alcoves whose embedded barycenter lies within the radius, found by
    flood fill through the adjacency graph of the tiling."""
    seen = {datum.identity}
    out = [datum.identity]
    queue = [datum.identity]
    while queue:
        cur = queue.pop()
        for s in datum.gens:
            nb = cur * datum.generator(s)
            if nb in seen:
                continue
            seen.add(nb)
            if _norm(embed_point(omega, datum.barycenter_image(nb))) <= radius:
                out.append(nb)
                queue.append(nb)
    return sorted(out, key=lambda g: (length(g), reduced_word(g)))


@dataclass
class RenderScene:
    datum: CoxeterDatum
    element: GroupElement
    direction: Direction
    radius: float
    grid: list
    full: ShadowSet
    regular: ShadowSet


def build_scene(element: GroupElement, direction: Direction,
                radius: float = 2.6) -> RenderScene:
    datum = element.datum
    omega = embedding(datum)
    full = full_shadow(element)
    regular = shadow_L(element, direction)
    # widen the view until every shaded alcove and the marked one fit
    reach = radius
    for g in list(full.elements) + [element]:
        for corner in alcove_corners(datum, omega, g):
            reach = max(reach, _norm(corner) + 0.3)
    grid = ball(datum, omega, reach)
    return RenderScene(datum, element, direction, reach, grid, full, regular)


def _word_name(x: GroupElement) -> str:
    return "".join(map(str, reduced_word(x))) or "e"


def _poly(parent, corners, style_key, name=None):
    pts = " ".join(f"{_f(x)},{_f(-y)}" for x, y in corners)
    el = ET.SubElement(parent, "polygon", {"points": pts, "class": style_key})
    for k, v in _STYLE[style_key].items():
        el.set(k, v)
    if name is not None:
        el.set("data-element", name)
    return el


def scene_svg(scene: RenderScene) -> str:
    datum = scene.datum
    omega = embedding(datum)
    r = scene.radius * UNIT

    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": _f(2 * r + 2 * PAD + LEGEND_W),
        "height": _f(2 * r + 2 * PAD),
        "viewBox": f"{_f(-r - PAD)} {_f(-r - PAD)} "
                   f"{_f(2 * r + 2 * PAD + LEGEND_W)} {_f(2 * r + 2 * PAD)}",
    })
    title = ET.SubElement(root, "title")
    title.text = (f"{datum.tag}: shadows of {_word_name(scene.element)} "
                  f"toward {_word_name(scene.direction.label)}")

    def scaled(g):
        return tuple((x * UNIT, y * UNIT)
                     for x, y in alcove_corners(datum, omega, g))

    grid_layer = ET.SubElement(root, "g", {"id": "grid"})
    for g in scene.grid:
        _poly(grid_layer, scaled(g), "base")

    full_layer = ET.SubElement(root, "g", {"id": "full"})
    for g in scene.full.sorted_elements():
        _poly(full_layer, scaled(g), "full", name=_word_name(g))

    reg_layer = ET.SubElement(root, "g", {"id": "regular"})
    for g in scene.regular.sorted_elements():
        _poly(reg_layer, scaled(g), "regular", name=_word_name(g))

    marked = ET.SubElement(root, "g", {"id": "marked"})
    pts = " ".join(f"{_f(x)},{_f(-y)}" for x, y in scaled(scene.element))
    ET.SubElement(marked, "polygon", {
        "points": pts, "class": "marked", "fill": "none",
        "stroke": "#d62728", "stroke-width": "3",
        "data-element": _word_name(scene.element),
    })

    _arrow(root, omega, scene.direction)
    _legend(root, scene, r)

    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=False) + "\n"


def _arrow(root, omega, direction: Direction):
    dx, dy = embed_point(omega, direction.vector)
    n = math.hypot(dx, dy)
    dx, dy = dx / n * 0.9 * UNIT, dy / n * 0.9 * UNIT
    tip = (dx, -dy)
    back = math.atan2(-dy, dx) + math.pi
    spread = 0.45
    head1 = (tip[0] + 18 * math.cos(back + spread), tip[1] + 18 * math.sin(back + spread))
    head2 = (tip[0] + 18 * math.cos(back - spread), tip[1] + 18 * math.sin(back - spread))
    g = ET.SubElement(root, "g", {
        "id": "direction", "stroke": "#111111", "stroke-width": "2.5",
        "fill": "none", "stroke-linecap": "round",
    })
    ET.SubElement(g, "line", {"x1": "0.0000", "y1": "0.0000",
                              "x2": _f(tip[0]), "y2": _f(tip[1])})
    ET.SubElement(g, "line", {"x1": _f(tip[0]), "y1": _f(tip[1]),
                              "x2": _f(head1[0]), "y2": _f(head1[1])})
    ET.SubElement(g, "line", {"x1": _f(tip[0]), "y1": _f(tip[1]),
                              "x2": _f(head2[0]), "y2": _f(head2[1])})


def _legend(root, scene: RenderScene, r: float):
    chambers = scene.datum.spherical_datum.spherical_elements()
    g = ET.SubElement(root, "g", {
        "id": "legend", "font-family": "monospace", "font-size": "13",
    })
    x0 = r + PAD + 12
    y = -r + 6
    rows = [("input", _word_name(scene.element), "#d62728"),
            ("full", f"{len(scene.full)} alcoves", "#bcd2ee"),
            ("regular", f"{len(scene.regular)} alcoves", "#2e5fa3")]
    for label, text, color in rows:
        ET.SubElement(g, "rect", {"x": _f(x0), "y": _f(y), "width": "11",
                                  "height": "11", "fill": color})
        t = ET.SubElement(g, "text", {"x": _f(x0 + 16), "y": _f(y + 10)})
        t.text = f"{label}: {text}"
        y += 19
    y += 8
    head = ET.SubElement(g, "text", {"x": _f(x0), "y": _f(y + 10)})
    head.text = f"directions of {scene.datum.spherical_datum.tag}:"
    y += 19
    for a in chambers:
        chosen = a == scene.direction.label
        ET.SubElement(g, "rect", {
            "x": _f(x0), "y": _f(y), "width": "11", "height": "11",
            "fill": "#111111" if chosen else "none",
            "stroke": "#111111", "class": "legend-direction",
        })
        t = ET.SubElement(g, "text", {"x": _f(x0 + 16), "y": _f(y + 10)})
        t.text = f"dir {_word_name(a)}"
        y += 17


def scene_polygons(svg_text: str) -> dict[str, frozenset[str]]:
    """Element words per layer, read back out of the markup."""
    ns = {"s": "http://www.w3.org/2000/svg"}
    root = ET.fromstring(svg_text)
    out = {}
    for layer in ("full", "regular", "marked"):
        node = root.find(f"s:g[@id='{layer}']", ns)
        polys = [] if node is None else node.findall("s:polygon", ns)
        out[layer] = frozenset(p.get("data-element") for p in polys)
    legend = root.find("s:g[@id='legend']", ns)
    texts = [] if legend is None else legend.findall("s:text", ns)
    out["legend_directions"] = frozenset(
        t.text[4:] for t in texts if t.text and t.text.startswith("dir "))
    return out


def render_svg(element: GroupElement, direction: Direction,
               radius: float = 2.6, out_path: str | None = None):
    """Build the scene, verify the shaded polygons against the shadow
    sets they claim to show, then write or return the markup."""
    scene = build_scene(element, direction, radius)
    text = scene_svg(scene)
    back = scene_polygons(text)
    want_full = frozenset(_word_name(g) for g in scene.full.elements)
    want_reg = frozenset(_word_name(g) for g in scene.regular.elements)
    if back["full"] != want_full or back["regular"] != want_reg:
        raise RuntimeError("rendered polygons disagree with the shadow sets")
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return scene, text
