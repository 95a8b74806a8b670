import xml.etree.ElementTree as ET

import pytest

from pinwheels.atf import mutation_chain, wahl_cone, wps_triangle
from pinwheels.svg import SvgOptions, count_elements, render_svg


def test_cone_drawing():
    assert count_elements(render_svg(wahl_cone(2, 1))) == {"path": 1, "cut": 1, "star": 1}


@pytest.mark.parametrize("t,cuts", [((1, 1, 1), 0), ((1, 1, 2), 1), ((1, 2, 5), 2), ((2, 5, 29), 3)])
def test_triangle_drawing(t, cuts):
    assert count_elements(render_svg(wps_triangle(t))) == {"path": 1, "cut": cuts, "star": cuts}


def test_default_unit():
    assert SvgOptions().unit == 20
    root = ET.fromstring(render_svg(wps_triangle((1, 1, 1))))
    # unit triangle plus 20px margins
    assert root.get("width") == "60" and root.get("height") == "60"


def test_max_size_caps_the_drawing():
    text = render_svg(wps_triangle((5, 29, 433)), SvgOptions(max_size=400, labels=False))
    root = ET.fromstring(text)
    assert float(root.get("width")) <= 440 and float(root.get("height")) <= 440
    assert "<text" not in text


def test_chain_drawings_parse():
    for tri, _ in mutation_chain(steps=4):
        ET.fromstring(render_svg(tri))


def test_unsupported_object():
    with pytest.raises(TypeError):
        render_svg("triangle")
