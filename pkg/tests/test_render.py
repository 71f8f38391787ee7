import xml.etree.ElementTree as ET

import pytest

from tesscurv import metric
from tesscurv.patch import make_patch
from tesscurv.render import chi_class, render_svg, tutte_layout

from helpers import kagome, regular

NS = "{http://www.w3.org/2000/svg}"


def polygons(svg):
    root = ET.fromstring(svg)
    return root.findall(f"{NS}polygon")


def test_square_patch_zero_colour():
    p = regular(4, 4, 3)
    polys = polygons(render_svg(p))
    assert len(polys) == len(p.faces)
    classes = {int(e.get("data-face")): e.get("class") for e in polys}
    for f, cls in classes.items():
        assert cls in ("chi-zero", "chi-undefined")
        if all(v in p.complete_vertices for v in p.faces[f]):
            assert cls == "chi-zero"


def test_kagome_colours():
    K = kagome(3)
    for f in K.faces:
        if all(v in K.complete_vertices for v in K.faces[f]):
            assert chi_class(K, f) == ("positive" if len(K.faces[f]) == 3 else "negative")


def test_hyperbolic_colour():
    p = regular(3, 7, 2)
    assert chi_class(p, 0) == "negative"


def test_deterministic():
    assert render_svg(regular(4, 5, 2)) == render_svg(regular(4, 5, 2))


def test_layout_is_barycentric():
    p = regular(4, 4, 2)
    pos = tutte_layout(p)
    bnd = set(metric.make_polygon(p, p.faces).boundary)
    for v in p.vertices:
        x, y = pos[v]
        if v in bnd:
            assert abs(x * x + y * y - 1) < 1e-12
        else:
            nb = p.neighbours[v]
            assert abs(x - sum(pos[w][0] for w in nb) / len(nb)) < 1e-9
            assert abs(y - sum(pos[w][1] for w in nb) / len(nb)) < 1e-9


def test_non_disc_rejected():
    p = make_patch({0: (0, 1, 2), 1: (0, 3, 4)})
    with pytest.raises(metric.NotAPolygon):
        render_svg(p)
