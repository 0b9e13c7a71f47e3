"""Renderer-agnostic chart descriptions resolved against the dataset."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .data import Dataset, group_aggregate
from .errors import EmptyData, UnknownView
from .model import (
    Canvas,
    CategoricalDomain,
    ChannelClass,
    ColorScheme,
    ConstantColor,
    FieldRef,
    QuantitativeDomain,
    View,
)

_MARK_OF_CHART = {
    "bar": "bar",
    "line": "line",
    "area": "area",
    "scatter": "point",
    "pie": "arc",
    "streamgraph": "stream",
}

_FALLBACK_COLOR = "#4c78a8"


@dataclass(frozen=True)
class AxisSpec:
    title: str
    domain: object  # DataDomain
    kind: str  # quantitative | categorical | temporal


@dataclass(frozen=True)
class SeriesMark:
    label: str
    points: tuple  # (x, y) or (category, value) pairs
    color: str


@dataclass(frozen=True)
class RenderSpec:
    view_id: str
    mark_type: str
    series_marks: tuple
    x_axis: Optional[AxisSpec]
    y_axis: Optional[AxisSpec]
    legend: tuple = ()  # (label, color) pairs
    mirror: bool = False

    def to_doc(self) -> dict:
        return {
            "viewId": self.view_id,
            "markType": self.mark_type,
            "seriesMarks": [
                {"label": m.label,
                 "points": [[_plain(x), y] for x, y in m.points],
                 "color": m.color}
                for m in self.series_marks],
            "axes": {
                "x": _axis_doc(self.x_axis),
                "y": _axis_doc(self.y_axis),
            },
            "legend": [[label, color] for label, color in self.legend],
            "mirror": self.mirror,
        }


def _plain(value):
    if hasattr(value, "isoformat"):
        return value.isoformat()
    return value


def _axis_doc(axis: Optional[AxisSpec]):
    if axis is None:
        return None
    if isinstance(axis.domain, QuantitativeDomain):
        domain = {"min": axis.domain.min, "max": axis.domain.max}
    else:
        domain = {"values": [_plain(v) for v in axis.domain.values]}
    return {"title": axis.title, "domain": domain, "kind": axis.kind}


def _axis_kind(dataset: Dataset, field: Optional[FieldRef], domain) -> str:
    if isinstance(domain, CategoricalDomain):
        return "categorical"
    if field is not None and field.column != "*" \
            and dataset.column(field.column).type == "temporal":
        return "temporal"
    return "quantitative"


def _axis_of(dataset: Dataset, view: View, cls: ChannelClass):
    binding = view.binding(cls)
    if binding is None or binding.domain is None:
        return None
    field = binding.mapping.field
    title = field.canonical() if field is not None else ""
    return AxisSpec(title=title, domain=binding.domain,
                    kind=_axis_kind(dataset, field, binding.domain))


def _constant_of(visual) -> str:
    if isinstance(visual, ConstantColor):
        return visual.hex
    if isinstance(visual, ColorScheme):
        return visual.colors()[0]
    return _FALLBACK_COLOR


def _series_points(dataset: Dataset, grouping: str, field: FieldRef) -> tuple:
    table = group_aggregate(dataset, grouping, field)
    return tuple(zip(table.keys, table.values))


def render_view(canvas: Canvas, view_id: str) -> RenderSpec:
    """Resolve one view into marks, axes, and a legend."""
    view = canvas.view(view_id)
    if view is None:
        raise UnknownView(f"no view named {view_id!r}")
    dataset = canvas.dataset
    if not dataset.rows:
        raise EmptyData("dataset has no rows")

    if view.chart_type == "pie":
        return _render_pie(dataset, view)

    marks = []
    if view.composition == "single":
        py = view.binding(ChannelClass.POSITION_Y)
        field = py.mapping.field if py is not None else None
        if field is None:
            raise EmptyData(f"view {view_id!r} has no y mapping")
        color = view.binding(ChannelClass.COLOR)
        marks.append(SeriesMark(
            label=field.canonical(),
            points=_series_points(dataset, view.grouping, field),
            color=_constant_of(color.visual if color else None)))
    else:
        for s in view.series:
            marks.append(SeriesMark(
                label=s.label,
                points=_series_points(dataset, view.grouping, s.y_field),
                color=_constant_of(s.color)))

    legend = tuple((m.label, m.color) for m in marks) \
        if len(marks) > 1 else ()
    return RenderSpec(
        view_id=view.id,
        mark_type=_MARK_OF_CHART[view.chart_type],
        series_marks=tuple(marks),
        x_axis=_axis_of(dataset, view, ChannelClass.POSITION_X),
        y_axis=_axis_of(dataset, view, ChannelClass.POSITION_Y),
        legend=legend,
        mirror=view.composition == "mirrored")


def _render_pie(dataset: Dataset, view: View) -> RenderSpec:
    angle = view.binding(ChannelClass.ANGLE)
    if angle is None or angle.mapping.is_empty:
        raise EmptyData(f"view {view.id!r} has no angle mapping")
    points = _series_points(dataset, view.grouping, angle.mapping.field)
    if any(v < 0 for _, v in points):
        raise EmptyData(f"view {view.id!r}: arc values must be non-negative")
    color = view.binding(ChannelClass.COLOR)
    visual = color.visual if color is not None else None
    legend = []
    if isinstance(visual, ColorScheme):
        assignment = dict(visual.assignment)
        colors = visual.colors()
        for i, (key, _) in enumerate(points):
            legend.append((str(key),
                           assignment.get(str(key),
                                          colors[i % len(colors)])))
    else:
        base = _constant_of(visual)
        legend = [(str(key), base) for key, _ in points]
    marks = tuple(
        SeriesMark(label=str(key), points=((key, value),), color=color_hex)
        for (key, value), (_, color_hex) in zip(points, legend))
    return RenderSpec(
        view_id=view.id, mark_type="arc", series_marks=marks,
        x_axis=None, y_axis=None, legend=tuple(legend), mirror=False)


def render_canvas(canvas: Canvas) -> list:
    """(RenderSpec, Cell) per view, stable by grid position."""
    ordered = sorted(canvas.views, key=lambda v: (v.cell.row, v.cell.col))
    return [(render_view(canvas, v.id), v.cell) for v in ordered]
