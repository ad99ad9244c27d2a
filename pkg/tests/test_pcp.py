import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefpcp import (
    Dataset,
    EvaluationRecord,
    WeightVector,
    build_pcp,
    color_for,
    generate_synthetic,
    pareto_front,
    render_svg,
)
from prefpcp.errors import DegenerateDimensions, LengthMismatch, OutOfRange
from prefpcp.pcp import COLOR_STOPS, colormap_position

BLUE_END = (68, 1, 84)
YELLOW_END = (253, 231, 37)


def small_dataset(points, params=None):
    m = len(points[0])
    if params is None:
        params = [(float(i),) for i in range(len(points))]
    records = tuple(
        EvaluationRecord(tuple(p), tuple(f)) for p, f in zip(params, points)
    )
    cols = np.array([r.params for r in records])
    domains = tuple((float(cols[:, j].min()), float(cols[:, j].max())) for j in range(cols.shape[1]))
    return Dataset(
        tuple(f"p{j}" for j in range(cols.shape[1])),
        tuple(f"f{j}" for j in range(m)),
        records,
        domains,
    )


class TestColorFor:
    def test_blue_anchor_at_minimum(self):
        assert color_for(0.0, 0.0, 1.0) == BLUE_END

    def test_yellow_anchor_at_maximum(self):
        assert color_for(1.0, 0.0, 1.0) == YELLOW_END

    def test_degenerate_range_maps_to_blue(self):
        assert color_for(5.0, 5.0, 5.0) == BLUE_END

    def test_interior_stops_hit_exactly(self):
        for t, rgb in COLOR_STOPS:
            assert color_for(t, 0.0, 1.0) == rgb

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            color_for(-0.1, 0.0, 1.0)
        with pytest.raises(OutOfRange):
            color_for(1.1, 0.0, 1.0)

    @given(
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    )
    def test_monotone_in_stop_parameter(self, t_a, t_b):
        # strict monotonicity lives in colormap position; quantized RGB may tie
        if t_a == t_b:
            assert color_for(t_a, 0.0, 1.0) == color_for(t_b, 0.0, 1.0)
        else:
            lo, hi = sorted((t_a, t_b))
            assert colormap_position(lo, 0.0, 1.0) < colormap_position(hi, 0.0, 1.0)

    def test_channels_interpolate_linearly_between_stops(self):
        mid = color_for(0.125, 0.0, 1.0)
        expected = tuple(
            round(a + (b - a) * 0.5) for a, b in zip(COLOR_STOPS[0][1], COLOR_STOPS[1][1])
        )
        assert mid == expected


class TestBuildPcp:
    def test_zero_top_k_keeps_exactly_pareto(self):
        ds = small_dataset([(1, 2), (2, 1), (2, 2), (3, 3)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=0)
        assert tuple(p.record_index for p in model.polylines) == ps.indices

    def test_full_top_k_includes_everything(self):
        ds = small_dataset([(1, 2), (2, 1), (2, 2), (3, 3)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=ds.n)
        assert [p.record_index for p in model.polylines] == list(range(ds.n))

    def test_selection_matches_sort_oracle(self):
        rng = np.random.default_rng(8)
        points = rng.uniform(0, 1, size=(200, 3)).tolist()
        ds = small_dataset(points)
        ps = pareto_front(ds)
        w = WeightVector((0.2, 0.3, 0.5))
        k = 25
        model = build_pcp(ds, ps, w, top_k=k)
        phi = np.array(points) @ np.array(w.w)
        non_pareto = [i for i in range(ds.n) if i not in set(ps.indices)]
        expected_extra = sorted(non_pareto, key=lambda i: (phi[i], i))[:k]
        assert {p.record_index for p in model.polylines} == set(ps.indices) | set(expected_extra)
        threshold = sorted(phi[i] for i in non_pareto)[k - 1]
        excluded = set(range(ds.n)) - {p.record_index for p in model.polylines}
        assert all(phi[i] >= threshold for i in excluded)

    def test_ties_break_by_record_index(self):
        ds = small_dataset([(0, 0), (2, 2), (2, 2), (2, 2)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=1)
        assert {p.record_index for p in model.polylines} == {0, 1}

    def test_weight_change_moves_only_color_phi_membership(self):
        rng = np.random.default_rng(9)
        points = rng.uniform(0, 1, size=(100, 2)).tolist()
        ds = small_dataset(points)
        ps = pareto_front(ds)
        first = build_pcp(ds, ps, WeightVector((0.9, 0.1)), top_k=10)
        second = build_pcp(ds, ps, WeightVector((0.1, 0.9)), top_k=10)
        assert first.axes == second.axes
        geometry_first = {p.record_index: p.vertices for p in first.polylines}
        geometry_second = {p.record_index: p.vertices for p in second.polylines}
        common = set(geometry_first) & set(geometry_second)
        assert set(ps.indices) <= common
        for i in common:
            assert geometry_first[i] == geometry_second[i]

    def test_axis_ranges(self):
        ds = small_dataset([(1, 5), (2, 4), (3, 6)], params=[(0.1,), (0.9,), (0.5,)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=0)
        param_axis, metric_one, metric_two = model.axes
        assert (param_axis.lo, param_axis.hi) == ds.param_domains[0]
        assert param_axis.kind == "param"
        # metric axes span the full dataset, not just the Pareto set
        assert (metric_one.lo, metric_one.hi) == (1.0, 3.0)
        assert (metric_two.lo, metric_two.hi) == (4.0, 6.0)

    def test_constant_axis_widened(self):
        ds = small_dataset([(1, 5), (2, 5)], params=[(0.5,), (0.5,)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=ds.n)
        param_axis = model.axes[0]
        assert (param_axis.lo, param_axis.hi) == (0.0, 1.0)
        metric_two = model.axes[2]
        assert (metric_two.lo, metric_two.hi) == (4.5, 5.5)

    def test_vertices_normalized(self):
        rng = np.random.default_rng(10)
        points = rng.uniform(-3, 3, size=(50, 2)).tolist()
        ds = small_dataset(points)
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=ds.n)
        for poly in model.polylines:
            assert len(poly.vertices) == len(model.axes)
            assert all(0.0 <= v <= 1.0 for v in poly.vertices)

    def test_phi_and_color_consistency(self):
        rng = np.random.default_rng(11)
        points = rng.uniform(0, 1, size=(80, 2)).tolist()
        ds = small_dataset(points)
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.4, 0.6)), top_k=20)
        lo, hi = model.phi_range
        for poly in model.polylines:
            assert lo <= poly.phi <= hi
            assert poly.color == color_for(poly.phi, lo, hi)

    def test_paper_shape_polyline_count(self, paper_shape_dataset, paper_shape_pareto):
        model = build_pcp(
            paper_shape_dataset,
            paper_shape_pareto,
            WeightVector((1 / 3, 1 / 3, 1 / 3)),
            top_k=30,
        )
        n_pareto = len(paper_shape_pareto)
        assert max(n_pareto, 30) <= len(model.polylines) <= n_pareto + 30
        assert len(model.axes) == 8

    def test_length_mismatch(self):
        ds = small_dataset([(1, 2), (2, 1)])
        ps = pareto_front(ds)
        with pytest.raises(LengthMismatch):
            build_pcp(ds, ps, WeightVector((0.5, 0.3, 0.2)), top_k=0)

    def test_json_schema(self):
        ds = small_dataset([(1, 2), (2, 1)])
        ps = pareto_front(ds)
        payload = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=0).to_json_dict()
        assert set(payload) == {"axes", "polylines", "weights"}
        assert all(set(ax) == {"name", "lo", "hi", "kind"} for ax in payload["axes"])
        assert all(
            set(p) == {"record", "vertices", "color", "phi"} for p in payload["polylines"]
        )


class TestRenderSvg:
    def test_structure_counts(self):
        ds = small_dataset([(1.0, 2.0), (2.0, 1.0), (3.0, 3.0)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=0)
        assert len(model.axes) == 3 and len(model.polylines) == 2
        root = ET.fromstring(render_svg(model))
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f"{ns}path")) == 2
        assert len(root.findall(f"{ns}line")) == 3

    def test_single_polyline(self):
        ds = small_dataset([(1.0, 2.0)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=0)
        root = ET.fromstring(render_svg(model))
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f"{ns}path")) == 1
        assert len(root.findall(f"{ns}line")) == 3

    def test_axes_only_when_no_polylines(self):
        ds = small_dataset([(1.0, 2.0), (2.0, 1.0)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=0)
        empty = type(model)(model.axes, (), model.phi_range, model.weights)
        root = ET.fromstring(render_svg(empty))
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f"{ns}path")) == 0
        assert len(root.findall(f"{ns}line")) == 3

    def test_draw_order_descending_phi(self):
        rng = np.random.default_rng(12)
        points = rng.uniform(0, 1, size=(20, 2)).tolist()
        ds = small_dataset(points)
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=ds.n)
        svg = render_svg(model)
        root = ET.fromstring(svg)
        ns = "{http://www.w3.org/2000/svg}"
        strokes = [el.get("stroke") for el in root.findall(f"{ns}path")]
        expected = [
            "rgb({},{},{})".format(*p.color)
            for p in sorted(model.polylines, key=lambda p: -p.phi)
        ]
        assert strokes == expected

    def test_name_escaping(self):
        ds = small_dataset([(1.0, 2.0), (2.0, 1.0)])
        renamed = Dataset(
            ("a<b&c",), ds.metric_names, ds.records, ds.param_domains
        )
        ps = pareto_front(renamed)
        model = build_pcp(renamed, ps, WeightVector((0.5, 0.5)), top_k=0)
        root = ET.fromstring(render_svg(model))  # must still be valid XML
        ns = "{http://www.w3.org/2000/svg}"
        labels = [el.text for el in root.findall(f"{ns}text")]
        assert "a<b&c" in labels

    def test_degenerate_dimensions(self):
        ds = small_dataset([(1.0, 2.0)])
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((0.5, 0.5)), top_k=0)
        with pytest.raises(DegenerateDimensions):
            render_svg(model, width=100, height=400)
        with pytest.raises(DegenerateDimensions):
            render_svg(model, width=400, height=100)

    def test_renders_paper_shape(self, paper_shape_dataset, paper_shape_pareto):
        ds = generate_synthetic(d=5, m=3, n=50, a=(0, 0, 0), b=1.0, noise=0.1, seed=2)
        ps = pareto_front(ds)
        model = build_pcp(ds, ps, WeightVector((1 / 3, 1 / 3, 1 / 3)), top_k=10)
        root = ET.fromstring(render_svg(model, width=1280, height=720))
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f"{ns}line")) == 8
