import pytest

from conftest import load_fixture
from corpus import corpus
from semsnap.config import Config
from semsnap.errors import (
    ConfirmationDenied,
    EmptyMapping,
    IncompatibleChartTypes,
    MissingConfirmation,
    NothingPending,
    NoWitness,
    PaletteExhausted,
    PendingOperation,
    StalePlan,
    UnsupportedVariant,
)
from semsnap.model import (
    ChannelClass,
    ColorScheme,
    EquivalenceRegistry,
    FieldRef,
    PENDING,
)
from semsnap.operations import (
    CanvasHistory,
    OperationKind,
    apply_operation,
    begin,
    delete_view,
    differentiate,
    homogenize_data,
    homogenize_style,
    integrate_views,
    keep,
    plan_operations,
    record_equivalence,
    semantic_position,
    undo,
)
from semsnap.relations import find_relations


def plans_for(canvas, view_id, config=None):
    return plan_operations(canvas, find_relations(canvas), view_id,
                           config or Config())


def plan_of(canvas, view_id, kind, config=None):
    for p in plans_for(canvas, view_id, config):
        if p.kind is kind:
            return p
    raise AssertionError(f"no {kind} plan for {view_id}")


class TestPlanning:
    def test_plans_sorted_by_category_order(self):
        canvas = load_fixture("election.canvas.json")
        plans = plans_for(canvas, "trump")
        categories = [p.category for p in plans]
        order = ("homogenize-data", "homogenize-style", "differentiate",
                 "integrate")
        assert categories == sorted(categories, key=order.index)

    def test_plan_ids_are_stable_across_runs(self):
        canvas = load_fixture("election.canvas.json")
        first = [p.id for p in plans_for(canvas, "trump")]
        second = [p.id for p in plans_for(canvas, "trump")]
        assert first == second

    def test_conditional_plans_carry_the_question(self):
        canvas = load_fixture("table1c.canvas.json")
        plan = plan_of(canvas, "price", OperationKind.HOMOGENIZE_DATA)
        assert plan.required_confirmations == (("mean(price)", "mean(rank)"),)
        assert "mean(price)" in plan.question
        assert plan.confirm_to_proceed == "same"

    def test_integrate_proceeds_on_different(self):
        canvas = load_fixture("table1c.canvas.json")
        plan = plan_of(canvas, "price", OperationKind.INTEGRATE_MIRROR)
        assert plan.confirm_to_proceed == "different"

    def test_homogenize_data_suppressed_when_instance_would_survive(self):
        # firm same-grouping multiples: unioning domains cannot remove the
        # relation, so the plan must not be offered
        canvas = load_fixture("nightingale.canvas.json")
        kinds = {p.kind for p in plans_for(canvas, "area_deaths")}
        assert OperationKind.HOMOGENIZE_DATA not in kinds

    def test_both_confuser_sides_offered(self):
        canvas = load_fixture("table1f.canvas.json")
        targets = {p.target_view_ids for p in plans_for(canvas, "prices")
                   if p.kind is OperationKind.DIFFERENTIATE}
        assert targets == {("prices",), ("ranks",)}


class TestApply:
    def test_missing_confirmation(self):
        canvas = load_fixture("table1c.canvas.json")
        plan = plan_of(canvas, "price", OperationKind.HOMOGENIZE_DATA)
        with pytest.raises(MissingConfirmation):
            apply_operation(canvas, plan, {})

    def test_denied_confirmation_updates_registry(self):
        canvas = load_fixture("table1c.canvas.json")
        plan = plan_of(canvas, "price", OperationKind.HOMOGENIZE_DATA)
        with pytest.raises(ConfirmationDenied) as err:
            apply_operation(canvas, plan,
                            {("mean(price)", "mean(rank)"): "different"})
        updated = err.value.canvas
        assert updated is not None
        assert updated.registry.status("mean(price)", "mean(rank)") \
            == "confirmed-different"
        # the multiples relation is now firm and homogenize is withdrawn
        kinds = {p.kind for p in plans_for(updated, "price")}
        assert OperationKind.HOMOGENIZE_DATA not in kinds

    def test_confirmed_same_collapses_to_full_redundancy(self):
        canvas = load_fixture("table1c.canvas.json")
        plan = plan_of(canvas, "price", OperationKind.HOMOGENIZE_DATA)
        result = apply_operation(canvas, plan,
                                 {("mean(price)", "mean(rank)"): "same"})
        codes = [r.kind.code for r in find_relations(result).instances]
        assert codes == ["R1"]

    def test_stale_plan_rejected(self):
        canvas = load_fixture("table1a.canvas.json")
        plan = plan_of(canvas, "left", OperationKind.DELETE)
        changed = delete_view(canvas, plan.target_view_ids[0])
        with pytest.raises(StalePlan):
            apply_operation(changed, plan)

    def test_input_canvas_unchanged(self):
        canvas = load_fixture("table1a.canvas.json")
        plan = plan_of(canvas, "left", OperationKind.DELETE)
        apply_operation(canvas, plan)
        assert len(canvas.views) == 2


class TestRewrites:
    def test_homogenize_data_unions_both_domains(self):
        canvas = load_fixture("table1d.canvas.json")
        result = homogenize_data(canvas, "by_cyl", "by_gears",
                                 ChannelClass.POSITION_Y)
        doms = {v.binding(ChannelClass.POSITION_Y).domain
                for v in result.views}
        assert len(doms) == 1
        union = doms.pop()
        for v in canvas.views:
            old = v.binding(ChannelClass.POSITION_Y).domain
            assert union.min <= old.min and union.max >= old.max

    def test_homogenize_data_idempotent(self):
        canvas = load_fixture("table1d.canvas.json")
        once = homogenize_data(canvas, "by_cyl", "by_gears",
                               ChannelClass.POSITION_Y)
        twice = homogenize_data(once, "by_cyl", "by_gears",
                                ChannelClass.POSITION_Y)
        assert once.views == twice.views

    def test_homogenize_data_requires_mappings(self):
        canvas = load_fixture("table1a.canvas.json")
        with pytest.raises(EmptyMapping):
            homogenize_data(canvas, "left", "right", ChannelClass.COLOR)

    def test_homogenize_style_copies_source_visual(self):
        canvas = load_fixture("table1e.canvas.json")
        result = homogenize_style(canvas, "wide", "tight",
                                  ChannelClass.POSITION_Y)
        wide = result.view("wide").binding(ChannelClass.POSITION_Y)
        tight = result.view("tight").binding(ChannelClass.POSITION_Y)
        assert wide.visual == tight.visual
        assert wide.domain == tight.domain

    def test_homogenize_style_needs_a_witness(self):
        canvas = load_fixture("table1a.canvas.json")
        with pytest.raises(NoWitness):
            homogenize_style(canvas, "left", "right", ChannelClass.COLOR)

    def test_differentiate_is_deterministic(self):
        canvas = load_fixture("table1f.canvas.json")
        a = differentiate(canvas, "prices", ChannelClass.COLOR)
        b = differentiate(canvas, "prices", ChannelClass.COLOR)
        assert a.view("prices").binding(ChannelClass.COLOR).visual \
            == b.view("prices").binding(ChannelClass.COLOR).visual
        assert a.view("prices").binding(ChannelClass.COLOR).visual \
            != canvas.view("prices").binding(ChannelClass.COLOR).visual

    def test_differentiate_avoids_all_other_views(self):
        canvas = load_fixture("table1f.canvas.json")
        result = differentiate(canvas, "prices", ChannelClass.COLOR)
        chosen = result.view("prices").binding(ChannelClass.COLOR).visual
        other = result.view("ranks").binding(ChannelClass.COLOR).visual
        assert chosen != other

    def test_palette_exhausted(self):
        canvas = load_fixture("table1f.canvas.json")
        tiny = Config(constant_colors=("#d62728",))  # already on both views
        with pytest.raises(PaletteExhausted):
            differentiate(canvas, "prices", ChannelClass.COLOR, tiny)

    def test_integrate_requires_shared_chart_type(self):
        canvas = load_fixture("covid.canvas.json")
        with pytest.raises(IncompatibleChartTypes):
            integrate_views(canvas, ["bar_deaths", "stream_deaths"], "stack")

    def test_integrate_variant_applicability(self):
        canvas = load_fixture("covid.canvas.json")
        with pytest.raises(UnsupportedVariant):
            integrate_views(canvas, ["bar_deaths", "bar_cases"], "overlay")
        with pytest.raises(UnsupportedVariant):
            integrate_views(canvas, ["pie_cases", "pie_deaths"], "stack")

    def test_mirror_needs_exactly_two(self):
        canvas = load_fixture("nightingale.canvas.json")
        with pytest.raises(UnsupportedVariant):
            integrate_views(
                canvas, ["bar_disease", "bar_wounds", "bar_other"], "mirror")

    def test_stack_merges_series_and_unions_y(self):
        canvas = load_fixture("nightingale.canvas.json")
        result = integrate_views(
            canvas, ["bar_disease", "bar_wounds", "bar_other"], "stack")
        merged = result.view("bar_disease")
        assert merged.composition == "stacked"
        assert [s.label for s in merged.series] == [
            "sum(disease)", "sum(wounds)", "sum(other)"]
        dom = merged.binding(ChannelClass.POSITION_Y).domain
        for vid in ("bar_disease", "bar_wounds", "bar_other"):
            old = canvas.view(vid).binding(ChannelClass.POSITION_Y).domain
            assert dom.min <= old.min and dom.max >= old.max
        legend = merged.binding(ChannelClass.COLOR).visual
        assert isinstance(legend, ColorScheme)
        assert len(legend.assignment) == 3

    def test_integrate_recolors_colliding_series(self):
        canvas = load_fixture("nightingale.canvas.json")
        result = integrate_views(
            canvas, ["bar_disease", "bar_wounds", "bar_other"], "stack")
        colors = [s.color.hex for s in result.view("bar_disease").series]
        assert len(set(colors)) == 3  # the three grey bars got distinct colors

    def test_transfer_enriches_subset_and_drops_superset(self):
        canvas = load_fixture("table1b.canvas.json")
        plan = plan_of(canvas, "plain", OperationKind.INTEGRATE_TRANSFER)
        result = apply_operation(canvas, plan)
        assert [v.id for v in result.views] == ["plain"]
        color = result.view("plain").binding(ChannelClass.COLOR)
        assert not color.mapping.is_empty  # gained the superset's mapping
        assert find_relations(result).instances == ()


class TestHistory:
    def test_apply_keep_commits(self):
        canvas = load_fixture("table1a.canvas.json")
        plan = plan_of(canvas, "left", OperationKind.DELETE)
        hist = CanvasHistory(committed=(canvas,))
        hist = begin(hist, canvas, apply_operation(canvas, plan), plan)
        hist = keep(hist)
        assert len(hist.committed) == 2
        assert len(hist.current.views) == 1

    def test_single_pending_slot(self):
        canvas = load_fixture("table1a.canvas.json")
        plan = plan_of(canvas, "left", OperationKind.DELETE)
        hist = begin(CanvasHistory(committed=(canvas,)), canvas,
                     apply_operation(canvas, plan), plan)
        with pytest.raises(PendingOperation):
            begin(hist, hist.current, hist.current, plan)

    def test_undo_restores_registry(self):
        canvas = load_fixture("election.canvas.json")
        pair = ("mean(clinton_avg)", "mean(trump_avg)")
        plan = plan_of(canvas, "clinton", OperationKind.INTEGRATE_MIRROR)
        after = apply_operation(canvas, plan, {pair: "different"})
        hist = begin(CanvasHistory(committed=(canvas,)), canvas, after, plan)
        assert hist.current.registry.status(*pair) == "confirmed-different"
        _, hist = undo(hist)
        assert hist.current.registry.status(*pair) == PENDING
        assert hist.current == canvas

    def test_nothing_pending_errors(self):
        hist = CanvasHistory(committed=(load_fixture("table1a.canvas.json"),))
        with pytest.raises(NothingPending):
            undo(hist)
        with pytest.raises(NothingPending):
            keep(hist)


class TestScoring:
    def test_origin_for_clean_canvas(self):
        canvas = load_fixture("table1a.canvas.json")
        clean = delete_view(canvas, "left")
        pos = semantic_position(find_relations(clean))
        assert (pos.compactness, pos.consistency) == (0.0, 0.0)

    def test_default_weights(self):
        checks = {
            "table1a.canvas.json": (-3.0, 0.0),   # R1
            "table1b.canvas.json": (-2.0, 0.0),   # R2
            "table1c.canvas.json": (-0.5, -0.5),  # conditional R3a, y differs
            "table1d.canvas.json": (0.0, -1.0),   # R3b
            "table1e.canvas.json": (0.0, -2.0),   # R4
            "table1f.canvas.json": (0.0, -2.0),   # R5
        }
        for name, expected in checks.items():
            pos = semantic_position(find_relations(load_fixture(name)))
            assert (pos.compactness, pos.consistency) == expected, name

    def test_custom_weights(self):
        canvas = load_fixture("table1a.canvas.json")
        pos = semantic_position(find_relations(canvas), {"R1": 7})
        assert pos.compactness == -7.0

    def test_every_offered_plan_respects_its_axis(self):
        for canvas in corpus(40, base_seed=5000):
            rels = find_relations(canvas)
            before = semantic_position(rels)
            for view in canvas.views:
                for p in plan_operations(canvas, rels, view.id):
                    answers = {c: p.confirm_to_proceed
                               for c in p.required_confirmations}
                    after = semantic_position(
                        find_relations(apply_operation(canvas, p, answers)))
                    if p.category == "integrate":
                        assert after.compactness >= before.compactness - 1e-9
                    else:
                        assert after.consistency >= before.consistency - 1e-9


def test_record_equivalence_roundtrip():
    reg = record_equivalence(EquivalenceRegistry(), FieldRef("a", "sum"),
                             FieldRef("b", "sum"), True)
    assert reg.same("sum(a)", "sum(b)")
