import re
import xml.etree.ElementTree as ET

import pytest

from narrmap.ca import correspondence_analysis, factor_map
from narrmap.cluster import Dendrogram, constrained_cluster
from narrmap.crosstab import CrossTab
from narrmap.viz import PlotModel, default_glyphs, render_dendrogram, render_factor_map, render_line_chart

SVG = "{http://www.w3.org/2000/svg}"


def scatter(xs, ys, **kw):
    n = len(xs)
    kw.setdefault("labels", tuple(f"p{i}" for i in range(n)))
    kw.setdefault("series", ("s",) * n)
    kw.setdefault("glyphs", {"s": "S"})
    return PlotModel("scatter", tuple(xs), tuple(ys), **kw)


def glyphs_of(svg):
    root = ET.fromstring(svg)
    return [t for t in root.iter(SVG + "text") if "glyph" in t.get("class", "").split()]


def test_two_point_model_has_two_glyphs():
    svg = render_factor_map(scatter([0.0, 1.0], [0.0, 1.0]))
    assert len(glyphs_of(svg)) == 2


def test_scatter_is_byte_stable():
    m = scatter([0.1, -0.4, 2.0], [1.0, 0.5, -0.25], highlight=frozenset({2}))
    assert render_factor_map(m) == render_factor_map(m)


def test_well_formed_with_viewbox():
    for svg in (
        render_factor_map(scatter([0.0, 1.0], [0.0, 1.0], title="a < b & c")),
        render_dendrogram(constrained_cluster([0.0, 1.0, 3.0]), ["x", "y", "z"]),
        render_line_chart(PlotModel("line", (0.0, 1.0), (5.0, 6.0), ("a", "b"), ("f", "f"), {"f": "*"})),
    ):
        root = ET.fromstring(svg)
        assert root.tag == SVG + "svg"
        assert re.fullmatch(r"0 0 [\d.]+ [\d.]+", root.get("viewBox"))


def test_diagonal_table_glyphs_are_mirrored():
    emb = correspondence_analysis(CrossTab.from_counts([[4, 0], [0, 4]]))
    svg = render_factor_map(factor_map(emb), size=400)
    g = glyphs_of(svg)
    x0, x1 = float(g[0].get("x")), float(g[1].get("x"))
    assert x0 > x1
    assert x0 + x1 == pytest.approx(400.0, abs=1e-3)  # symmetric about the centre
    assert g[0].get("y") == g[1].get("y")


def test_equal_aspect_scaling():
    svg = render_factor_map(scatter([-1.0, 1.0, 0.0], [0.0, 0.0, 0.5]), size=500)
    g = glyphs_of(svg)
    dx = float(g[1].get("x")) - float(g[0].get("x"))
    dy = float(g[0].get("y")) - float(g[2].get("y"))
    assert dy / dx == pytest.approx(0.25, abs=1e-3)


def test_highlight_uses_distinct_class():
    svg = render_factor_map(scatter([0.0, 1.0], [0.0, 1.0], highlight=frozenset({1})))
    classes = [t.get("class") for t in glyphs_of(svg)]
    assert classes == ["glyph", "glyph outlier"]


def test_empty_model_rejected():
    with pytest.raises(ValueError):
        render_factor_map(scatter([], []))


def test_model_validation():
    with pytest.raises(ValueError):
        scatter([0.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        scatter([0.0, 1.0], [0.0, 1.0], series=("a", "b"), glyphs={"a": "X", "b": "X"})
    with pytest.raises(ValueError):
        scatter([0.0], [0.0], glyphs={})


def test_default_glyphs():
    assert default_glyphs(["Harry", "Pride", "Shadow", "Steel", "Stories"]) == {
        "Harry": "H", "Pride": "P", "Shadow": "S", "Steel": "S2", "Stories": "S3",
    }


def test_negative_zero_formatting():
    svg = render_factor_map(scatter([-0.0, 1e-9], [0.0, -1e-9]))
    assert "-0.000" not in svg


def test_dendrogram_two_leaves():
    svg = render_dendrogram(constrained_cluster([[0.0], [2.5]]), ["a", "b"])
    merges = [p for p in ET.fromstring(svg).iter(SVG + "path") if "merge" in p.get("class")]
    assert len(merges) == 1
    assert merges[0].get("data-height") == "2.500"


def test_dendrogram_hand_example_nesting():
    d = constrained_cluster([0.0, 1.0, 3.0, 7.0])
    svg = render_dendrogram(d, ["c0", "c1", "c2", "c3"])
    paths = [p for p in ET.fromstring(svg).iter(SVG + "path") if "merge" in p.get("class")]
    assert [p.get("data-height") for p in paths] == ["1.000", "3.000", "7.000"]
    assert [p.get("data-span") for p in paths] == ["0-1", "0-2", "0-3"]
    # bar y coordinate (the V target) rises with height
    bars = [float(re.search(r"V ([\d.]+) H", p.get("d")).group(1)) for p in paths]
    assert bars[0] > bars[1] > bars[2]
    # each bracket starts from its left child's position
    second_start = re.match(r"M ([\d.]+) ([\d.]+)", paths[1].get("d")).groups()
    assert float(second_start[1]) == pytest.approx(bars[0])


def test_dendrogram_leaf_order_is_segment_order():
    labels = ["Zeta", "Alpha", "Mid", "Beta", "Omega"]
    svg = render_dendrogram(constrained_cluster([0.0, 9.0, 1.0, 8.0, 2.0]), labels)
    positions = [svg.index(f">{l}</text>") for l in labels]
    assert positions == sorted(positions)


def test_dendrogram_is_byte_stable_and_checks_labels():
    d = constrained_cluster([0.0, 1.0, 3.0, 7.0])
    assert render_dendrogram(d) == render_dendrogram(d)
    with pytest.raises(ValueError):
        render_dendrogram(d, ["only", "three", "labels"])
    with pytest.raises(ValueError):
        render_dendrogram(Dendrogram(3, ()))


def test_dendrogram_marks_inversions():
    d = constrained_cluster([0.0, 10.0, 10.5, 0.1, 0.2], linkage="ward")
    svg = render_dendrogram(d)
    assert svg.count('class="merge inversion"') == len(d.inversions) == 1
