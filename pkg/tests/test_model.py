import pytest
from hypothesis import given
from hypothesis import strategies as st

from semsnap.errors import ClassMismatch, ContradictoryConfirmation, UnknownChannel
from semsnap.model import (
    CONFIRMED_SAME,
    PENDING,
    Cell,
    ChannelBinding,
    ChannelClass,
    ChannelTuple,
    ColorScheme,
    ConstantColor,
    DataMapping,
    EquivalenceRegistry,
    FieldRef,
    PositionRange,
    Series,
    SizeRange,
    TriState,
    View,
    channel_class,
    data_eq,
    grouping_eq,
    tuples_of,
    visual_eq,
)

AGGS = ("none", "sum", "mean", "count", "min", "max")


def _bar(view_id="v", grouping="cat", y="sum(q)", fill="#aa0000"):
    return View(
        id=view_id, chart_type="bar", grouping=grouping,
        bindings=(
            ChannelBinding("x", ChannelClass.POSITION_X,
                           mapping=DataMapping.mapped(FieldRef(grouping)),
                           visual=PositionRange(0, 3)),
            ChannelBinding("y", ChannelClass.POSITION_Y,
                           mapping=DataMapping.mapped(FieldRef.parse(y)),
                           visual=PositionRange(0, 10)),
            ChannelBinding("fill", ChannelClass.COLOR,
                           visual=ConstantColor(fill)),
        ))


class TestFieldRef:
    def test_canonical_forms(self):
        assert FieldRef("price").canonical() == "price"
        assert FieldRef("price", "sum").canonical() == "sum(price)"
        assert FieldRef("*", "count").canonical() == "count(*)"

    def test_star_requires_count(self):
        with pytest.raises(ValueError):
            FieldRef("*", "sum")

    def test_unknown_aggregate(self):
        with pytest.raises(ValueError):
            FieldRef("price", "median")

    @given(st.text(alphabet="abcz_", min_size=1, max_size=8),
           st.sampled_from(AGGS))
    def test_parse_canonical_roundtrip(self, column, agg):
        ref = FieldRef(column, agg)
        assert FieldRef.parse(ref.canonical()) == ref


class TestChannelClasses:
    def test_fill_and_stroke_unify_to_color(self):
        assert channel_class("bar", "fill") is ChannelClass.COLOR
        assert channel_class("line", "stroke") is ChannelClass.COLOR

    def test_chart_specific_channels(self):
        assert channel_class("pie", "angle") is ChannelClass.ANGLE
        assert channel_class("scatter", "size") is ChannelClass.SIZE
        with pytest.raises(UnknownChannel):
            channel_class("bar", "angle")
        with pytest.raises(UnknownChannel):
            channel_class("pie", "x")


class TestView:
    def test_duplicate_channel_classes_rejected(self):
        b = ChannelBinding("fill", ChannelClass.COLOR,
                           visual=ConstantColor("#aa0000"))
        with pytest.raises(ValueError):
            View(id="v", chart_type="bar", grouping="g", bindings=(b, b))

    def test_mirrored_requires_two_series(self):
        with pytest.raises(ValueError):
            View(id="v", chart_type="bar", grouping="g", bindings=(),
                 composition="mirrored", series=(
                     Series("a", FieldRef("q", "sum"), ConstantColor("#aa0000")),))

    def test_with_binding_replaces_by_class(self):
        view = _bar()
        updated = view.with_binding(
            ChannelBinding("fill", ChannelClass.COLOR,
                           visual=ConstantColor("#00aa00")))
        assert updated.binding(ChannelClass.COLOR).visual == ConstantColor("#00aa00")
        assert len(updated.bindings) == len(view.bindings)


class TestTuplesOf:
    def test_single_view_one_tuple_per_binding(self):
        view = _bar()
        tuples = tuples_of(view)
        assert len(tuples) == 3
        assert {t.c for t in tuples} == {
            ChannelClass.POSITION_X, ChannelClass.POSITION_Y, ChannelClass.COLOR}

    def test_composed_view_emits_one_y_tuple_per_series(self):
        base = _bar()
        view = View(
            id="m", chart_type="bar", grouping="cat", bindings=base.bindings,
            composition="stacked",
            series=(
                Series("sum(a)", FieldRef("a", "sum"), ConstantColor("#aa0000")),
                Series("sum(b)", FieldRef("b", "sum"), ConstantColor("#00aa00")),
            ))
        ys = [t for t in tuples_of(view) if t.c is ChannelClass.POSITION_Y]
        assert [t.d.field.canonical() for t in ys] == ["sum(a)", "sum(b)"]


class TestRegistry:
    def test_pending_then_confirmed(self):
        reg = EquivalenceRegistry()
        assert reg.status("a", "b") == PENDING
        reg = reg.confirm("a", "b", True)
        assert reg.status("a", "b") == CONFIRMED_SAME
        assert reg.status("b", "a") == CONFIRMED_SAME

    def test_transitive_same(self):
        reg = EquivalenceRegistry().confirm("a", "b", True).confirm("b", "c", True)
        assert reg.same("a", "c")

    def test_contradiction_rejected(self):
        reg = EquivalenceRegistry().confirm("a", "b", True)
        with pytest.raises(ContradictoryConfirmation):
            reg.confirm("a", "b", False)

    def test_transitive_contradiction_rejected(self):
        reg = EquivalenceRegistry().confirm("a", "b", True).confirm("b", "c", True)
        with pytest.raises(ContradictoryConfirmation):
            reg.confirm("a", "c", False)


def _tuple(field=None, view_id="v"):
    mapping = DataMapping.mapped(field) if field else DataMapping.empty()
    return ChannelTuple(g="cat", c=ChannelClass.POSITION_Y, d=mapping,
                        v=PositionRange(0, 1), view_id=view_id)


class TestDataEq:
    def test_same_field_equal_without_registry(self):
        f = FieldRef("q", "sum")
        assert data_eq(_tuple(f), _tuple(f, "w"), TriState.EQUAL,
                       EquivalenceRegistry()) is TriState.EQUAL

    def test_distinct_fields_need_confirmation(self):
        verdict = data_eq(_tuple(FieldRef("a", "sum")),
                          _tuple(FieldRef("b", "sum"), "w"),
                          TriState.EQUAL, EquivalenceRegistry())
        assert verdict is TriState.NEEDS_CONFIRMATION

    def test_confirmations_decide(self):
        reg = EquivalenceRegistry().confirm("sum(a)", "sum(b)", True)
        assert data_eq(_tuple(FieldRef("a", "sum")),
                       _tuple(FieldRef("b", "sum"), "w"),
                       TriState.EQUAL, reg) is TriState.EQUAL
        reg = EquivalenceRegistry().confirm("sum(a)", "sum(b)", False)
        assert data_eq(_tuple(FieldRef("a", "sum")),
                       _tuple(FieldRef("b", "sum"), "w"),
                       TriState.EQUAL, reg) is TriState.DIFFERENT

    def test_empty_vs_empty_follows_grouping(self):
        reg = EquivalenceRegistry()
        assert data_eq(_tuple(), _tuple(view_id="w"),
                       TriState.EQUAL, reg) is TriState.EQUAL
        assert data_eq(_tuple(), _tuple(view_id="w"),
                       TriState.DIFFERENT, reg) is TriState.DIFFERENT

    def test_one_sided_empty_is_different(self):
        assert data_eq(_tuple(FieldRef("q")), _tuple(view_id="w"),
                       TriState.EQUAL,
                       EquivalenceRegistry()) is TriState.DIFFERENT


class TestGroupingEq:
    def test_identity_and_registry_extension(self):
        a, b = _bar("a", grouping="cat"), _bar("b", grouping="cat2")
        assert grouping_eq(a, _bar("c", grouping="cat"),
                           EquivalenceRegistry()) is TriState.EQUAL
        assert grouping_eq(a, b, EquivalenceRegistry()) is TriState.DIFFERENT
        reg = EquivalenceRegistry().confirm("cat", "cat2", True)
        assert grouping_eq(a, b, reg) is TriState.EQUAL


class TestVisualEq:
    def test_constants(self):
        assert visual_eq(ConstantColor("#aa0000"), ConstantColor("#AA0000"))
        assert not visual_eq(ConstantColor("#aa0000"), ConstantColor("#00aa00"))

    def test_position_ranges_tolerant(self):
        assert visual_eq(PositionRange(0, 1), PositionRange(0, 1 + 1e-12))
        assert not visual_eq(PositionRange(0, 1), PositionRange(0, 2))

    def test_same_kind_schemes_strict(self):
        a = ColorScheme("s1", "categorical", (("x", "#aa0000"),))
        b = ColorScheme("s2", "categorical", (("x", "#aa0000"),))
        assert not visual_eq(a, b)
        assert visual_eq(a, ColorScheme("s1", "categorical", (("x", "#aa0000"),)))

    def test_constant_vs_scheme_collides_on_shared_hex(self):
        scheme = ColorScheme("s", "categorical",
                             (("x", "#aa0000"), ("y", "#00aa00")))
        assert visual_eq(ConstantColor("#aa0000"), scheme)
        assert not visual_eq(ConstantColor("#0000aa"), scheme)

    def test_cross_kind_schemes_collide_on_shared_hex(self):
        cat = ColorScheme("c", "categorical", (("x", "#aa0000"),))
        ramp = ColorScheme("r", "continuous",
                           (("lo", "#aa0000"), ("hi", "#ffffff")))
        assert visual_eq(cat, ramp)

    def test_color_vs_size_is_a_class_mismatch(self):
        with pytest.raises(ClassMismatch):
            visual_eq(ConstantColor("#aa0000"), SizeRange(1, 2))

    @given(st.floats(0, 100, allow_nan=False), st.floats(0, 100, allow_nan=False))
    def test_size_range_reflexive(self, lo, hi):
        assert visual_eq(SizeRange(lo, hi), SizeRange(lo, hi))


def test_cell_defaults():
    assert Cell(1, 2) == Cell(1, 2, 1, 1)
