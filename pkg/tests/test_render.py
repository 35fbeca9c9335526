"""Scenes must show exactly the sets they claim to show."""

import pytest

from coxshadows import (
    Direction,
    RenderUnsupported,
    datum_from_tag,
    element_from_word,
    full_shadow,
    shadow_L,
)
from coxshadows import render

from conftest import names


def dominant(datum):
    return Direction.from_element(datum, datum.spherical_datum.identity)


def test_polygons_equal_shadows(a2aff):
    x = element_from_word(a2aff, (0, 1, 2, 0, 1, 0))
    scene, text = render.render_svg(x, dominant(a2aff))
    back = render.scene_polygons(text)
    assert back["full"] == frozenset(names(full_shadow(x).elements))
    assert back["regular"] == frozenset(
        names(shadow_L(x, dominant(a2aff)).elements))
    assert back["marked"] == frozenset(names({x}))


def test_marked_alcove_is_the_input(a2aff):
    x = element_from_word(a2aff, (0, 1, 2))
    _, text = render.render_svg(x, dominant(a2aff))
    back = render.scene_polygons(text)
    assert back["marked"] == frozenset(names({x}))


def test_identity_scene(a2aff):
    _, text = render.render_svg(a2aff.identity, dominant(a2aff))
    back = render.scene_polygons(text)
    assert back["full"] == {"e"}
    assert back["regular"] == {"e"}


def test_g2_legend_lists_all_twelve():
    g2 = datum_from_tag("G2~")
    x = element_from_word(g2, (0, 1, 2))
    _, text = render.render_svg(x, dominant(g2))
    back = render.scene_polygons(text)
    assert len(back["legend_directions"]) == 12


def test_grid_covers_the_shading(a2aff):
    x = element_from_word(a2aff, (0, 1, 2, 0, 1))
    scene, text = render.render_svg(x, dominant(a2aff))
    grid_names = names(scene.grid)
    assert frozenset(names(scene.full.elements)) <= frozenset(grid_names)


def test_deterministic_output(a2aff):
    x = element_from_word(a2aff, (0, 1))
    _, first = render.render_svg(x, dominant(a2aff))
    _, second = render.render_svg(x, dominant(a2aff))
    assert first == second


def test_writes_file(tmp_path, a2aff):
    out = tmp_path / "scene.svg"
    render.render_svg(a2aff.identity, dominant(a2aff), out_path=str(out))
    text = out.read_text(encoding="utf-8")
    assert text.startswith("<svg")
    assert render.scene_polygons(text)["full"] == {"e"}


def test_unsupported_types():
    b3 = datum_from_tag("B3~")
    with pytest.raises(RenderUnsupported):
        render.embedding(b3)
    fin = datum_from_tag("A2")
    with pytest.raises(RenderUnsupported):
        render.embedding(fin)


def test_embedding_is_inverse_of_root_rows(b2aff):
    om = render.embedding(b2aff)
    rows = render._ROOT_ROWS["B"]
    for i in range(2):
        for j in range(2):
            dot = rows[i][0] * om[0][j] + rows[i][1] * om[1][j]
            assert dot == pytest.approx(1.0 if i == j else 0.0)
