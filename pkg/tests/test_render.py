import json

import pytest

from conftest import load_fixture
from semsnap.data import load_dataset
from semsnap.errors import EmptyData, UnknownView
from semsnap.model import Canvas
from semsnap.operations import OperationKind, apply_operation, plan_operations
from semsnap.relations import find_relations
from semsnap.render import render_canvas, render_view


def _apply(canvas, view_id, kind, answers=None):
    rels = find_relations(canvas)
    for p in plan_operations(canvas, rels, view_id):
        if p.kind is kind:
            full = {c: p.confirm_to_proceed for c in p.required_confirmations}
            full.update(answers or {})
            return apply_operation(canvas, p, full)
    raise AssertionError(f"no {kind} plan")


class TestSingleViews:
    def test_line_view(self):
        canvas = load_fixture("election.canvas.json")
        spec = render_view(canvas, "clinton")
        assert spec.mark_type == "line"
        assert spec.mirror is False
        (mark,) = spec.series_marks
        assert mark.label == "mean(clinton_avg)"
        assert mark.color == "#1f77b4"
        assert len(mark.points) == len(set(p[0] for p in mark.points))
        assert spec.x_axis.kind == "temporal"
        assert spec.y_axis.kind == "quantitative"
        assert spec.legend == ()

    def test_scatter_view(self):
        canvas = load_fixture("election.canvas.json")
        spec = render_view(canvas, "polls")
        assert spec.mark_type == "point"

    def test_bar_points_follow_group_order(self):
        canvas = load_fixture("table1a.canvas.json")
        spec = render_view(canvas, "left")
        assert [p[0] for p in spec.series_marks[0].points] == ["4", "6", "8"]
        assert spec.x_axis.kind == "categorical"

    def test_unknown_view(self):
        canvas = load_fixture("table1a.canvas.json")
        with pytest.raises(UnknownView):
            render_view(canvas, "nope")


class TestPies:
    def test_arcs_and_scheme_legend(self):
        canvas = load_fixture("covid.canvas.json")
        spec = render_view(canvas, "pie_cases")
        assert spec.mark_type == "arc"
        assert dict(spec.legend) == {"male": "#9ecae1", "female": "#08519c"}
        assert all(v >= 0 for m in spec.series_marks for _, v in m.points)
        assert spec.x_axis is None and spec.y_axis is None

    def test_negative_arcs_rejected(self):
        canvas = load_fixture("covid.canvas.json")
        bad = load_dataset("date,agegroup,gender,cases,deaths\n"
                           "2020-04-01,0-19,male,-1,2\n",
                           [(c.name, c.type)
                            for c in canvas.dataset.columns],
                           name="bad.csv")
        broken = Canvas(dataset=bad, views=canvas.views,
                        registry=canvas.registry)
        with pytest.raises(EmptyData, match="non-negative"):
            render_view(broken, "pie_cases")


class TestComposedViews:
    def test_mirrored_view_sets_flag_and_legend(self):
        canvas = load_fixture("election.canvas.json")
        merged = _apply(canvas, "clinton", OperationKind.INTEGRATE_MIRROR)
        spec = render_view(merged, "clinton")
        assert spec.mirror is True
        assert [m.label for m in spec.series_marks] == [
            "mean(clinton_avg)", "mean(trump_avg)"]
        assert len(spec.legend) == 2

    def test_stacked_view_one_mark_per_series(self):
        canvas = load_fixture("nightingale.canvas.json")
        merged = _apply(canvas, "bar_disease", OperationKind.INTEGRATE_STACK)
        spec = render_view(merged, "bar_disease")
        assert len(spec.series_marks) == 3
        colors = {m.color for m in spec.series_marks}
        assert len(colors) == 3


class TestRenderCanvas:
    def test_order_by_grid_cell(self):
        canvas = load_fixture("covid.canvas.json")
        entries = render_canvas(canvas)
        cells = [(c.row, c.col) for _, c in entries]
        assert cells == sorted(cells)
        assert len(entries) == len(canvas.views)

    def test_docs_are_json_serializable(self):
        canvas = load_fixture("election.canvas.json")
        for spec, _ in render_canvas(canvas):
            doc = json.loads(json.dumps(spec.to_doc()))
            assert doc["viewId"] == spec.view_id
            assert doc["axes"]["x"] is None or "domain" in doc["axes"]["x"]
