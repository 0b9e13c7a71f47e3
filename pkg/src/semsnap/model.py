"""Canvas data model: views, channel bindings, and the equality predicates.

Everything in here is an immutable value. A view is reduced to a set of
per-channel tuples (grouping, channel class, data mapping, visual output),
and the three equality predicates on those tuples -- grouping, data, and
visual -- are the primitives every inter-view relation is built from.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional, Union

from .errors import (
    ClassMismatch,
    ContradictoryConfirmation,
    UnknownChannel,
)

AGGREGATES = ("none", "sum", "mean", "count", "min", "max")

CHART_TYPES = ("bar", "line", "area", "pie", "scatter", "streamgraph")

COMPOSITIONS = ("single", "grouped", "stacked", "mirrored", "overlaid")


class ChannelClass(Enum):
    POSITION_X = "positionX"
    POSITION_Y = "positionY"
    COLOR = "color"
    SIZE = "size"
    ANGLE = "angle"


class TriState(Enum):
    EQUAL = "equal"
    DIFFERENT = "different"
    NEEDS_CONFIRMATION = "needs-confirmation"


@dataclass(frozen=True, order=True)
class FieldRef:
    """A column plus an optional aggregate, e.g. sum(deaths)."""

    column: str
    aggregate: str = "none"

    def __post_init__(self) -> None:
        if self.aggregate not in AGGREGATES:
            raise ValueError(f"unknown aggregate {self.aggregate!r}")
        if self.column == "*" and self.aggregate != "count":
            raise ValueError("the synthetic column '*' is only valid with count")

    def canonical(self) -> str:
        if self.aggregate == "none":
            return self.column
        return f"{self.aggregate}({self.column})"

    @classmethod
    def parse(cls, text: str) -> "FieldRef":
        text = text.strip()
        for agg in AGGREGATES[1:]:
            prefix = agg + "("
            if text.startswith(prefix) and text.endswith(")"):
                return cls(column=text[len(prefix):-1], aggregate=agg)
        return cls(column=text)


@dataclass(frozen=True)
class DataMapping:
    """The field a channel shows; an unmapped channel carries no field."""

    field: Optional[FieldRef] = None

    @classmethod
    def empty(cls) -> "DataMapping":
        return cls(None)

    @classmethod
    def mapped(cls, ref: FieldRef) -> "DataMapping":
        return cls(ref)

    @property
    def is_empty(self) -> bool:
        return self.field is None


@dataclass(frozen=True)
class QuantitativeDomain:
    min: float
    max: float

    def __post_init__(self) -> None:
        if self.min > self.max:
            raise ValueError(f"inverted domain [{self.min}, {self.max}]")


@dataclass(frozen=True)
class CategoricalDomain:
    values: tuple

    def __post_init__(self) -> None:
        if len(set(self.values)) != len(self.values):
            raise ValueError("categorical domain values must be distinct")


DataDomain = Union[QuantitativeDomain, CategoricalDomain]


@dataclass(frozen=True)
class PositionRange:
    axis_min: float
    axis_max: float


@dataclass(frozen=True)
class ConstantColor:
    hex: str

    def __post_init__(self) -> None:
        h = self.hex
        if not (h.startswith("#") and len(h) == 7):
            raise ValueError(f"expected 6-digit hex color, got {h!r}")
        object.__setattr__(self, "hex", h.lower())


@dataclass(frozen=True)
class ColorScheme:
    """A named color assignment: category colors, or ramp endpoints."""

    scheme_id: str
    kind: str  # "categorical" | "continuous"
    assignment: tuple  # ordered (label, hex) pairs

    def __post_init__(self) -> None:
        if self.kind not in ("categorical", "continuous"):
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        keys = [k for k, _ in self.assignment]
        if len(set(keys)) != len(keys):
            raise ValueError("scheme assignment keys must be distinct")
        norm = tuple((k, v.lower()) for k, v in self.assignment)
        object.__setattr__(self, "assignment", norm)

    def colors(self) -> tuple:
        return tuple(v for _, v in self.assignment)


@dataclass(frozen=True)
class SizeRange:
    min: float
    max: float


VisualOutput = Union[PositionRange, ConstantColor, ColorScheme, SizeRange]

_COLOR_VARIANTS = (ConstantColor, ColorScheme)


# Chart-native channel names and the class each resolves to. Stroke color of
# unfilled charts and fill color of filled charts are the same class.
_CHANNEL_TABLE = {
    "bar": {"x": ChannelClass.POSITION_X, "y": ChannelClass.POSITION_Y,
            "fill": ChannelClass.COLOR},
    "line": {"x": ChannelClass.POSITION_X, "y": ChannelClass.POSITION_Y,
             "stroke": ChannelClass.COLOR},
    "area": {"x": ChannelClass.POSITION_X, "y": ChannelClass.POSITION_Y,
             "fill": ChannelClass.COLOR},
    "scatter": {"x": ChannelClass.POSITION_X, "y": ChannelClass.POSITION_Y,
                "fill": ChannelClass.COLOR, "size": ChannelClass.SIZE},
    "pie": {"angle": ChannelClass.ANGLE, "fill": ChannelClass.COLOR},
    "streamgraph": {"x": ChannelClass.POSITION_X, "y": ChannelClass.POSITION_Y,
                    "fill": ChannelClass.COLOR},
}


def channel_class(chart_type: str, raw_channel: str) -> ChannelClass:
    """Resolve a chart-native channel name to its channel class."""
    try:
        return _CHANNEL_TABLE[chart_type][raw_channel]
    except KeyError:
        raise UnknownChannel(
            f"channel {raw_channel!r} is not valid for chart type {chart_type!r}"
        ) from None


def valid_channels(chart_type: str) -> dict:
    return dict(_CHANNEL_TABLE[chart_type])


@dataclass(frozen=True)
class ChannelBinding:
    raw_channel: str
    cls: ChannelClass
    mapping: DataMapping = field(default_factory=DataMapping.empty)
    domain: Optional[DataDomain] = None
    visual: Optional[VisualOutput] = None


@dataclass(frozen=True)
class Series:
    label: str
    y_field: FieldRef
    color: VisualOutput


@dataclass(frozen=True)
class Cell:
    row: int
    col: int
    row_span: int = 1
    col_span: int = 1


@dataclass(frozen=True)
class View:
    id: str
    chart_type: str
    grouping: str
    bindings: tuple  # ChannelBinding, one per present class
    composition: str = "single"
    series: tuple = ()
    cell: Cell = Cell(0, 0)

    def __post_init__(self) -> None:
        if self.chart_type not in CHART_TYPES:
            raise ValueError(f"unknown chart type {self.chart_type!r}")
        if self.composition not in COMPOSITIONS:
            raise ValueError(f"unknown composition {self.composition!r}")
        classes = [b.cls for b in self.bindings]
        if len(set(classes)) != len(classes):
            raise ValueError(f"view {self.id!r} has duplicate channel classes")
        if self.composition == "mirrored" and len(self.series) != 2:
            raise ValueError("mirrored composition requires exactly 2 series")
        if self.composition == "single" and self.series:
            raise ValueError("single composition must not carry series")

    def binding(self, cls: ChannelClass) -> Optional[ChannelBinding]:
        for b in self.bindings:
            if b.cls is cls:
                return b
        return None

    def with_binding(self, binding: ChannelBinding) -> "View":
        rest = tuple(b for b in self.bindings if b.cls is not binding.cls)
        order = list(ChannelClass)
        merged = tuple(sorted(rest + (binding,), key=lambda b: order.index(b.cls)))
        return replace(self, bindings=merged)


@dataclass(frozen=True)
class ChannelTuple:
    """One (grouping, channel class, data mapping, visual output) tuple.

    ``domain`` is carried along for domain-difference checks; it is derived
    from the owning binding (or the shared axis of a composed view).
    """

    g: str
    c: ChannelClass
    d: DataMapping
    v: VisualOutput
    view_id: str
    domain: Optional[DataDomain] = None


def tuples_of(view: View) -> list:
    """Reduce a view to its channel tuples.

    Composed views (anything but ``single``) emit one y-position tuple per
    series entry; every other binding contributes exactly one tuple.
    """
    out = []
    for b in view.bindings:
        if b.cls is ChannelClass.POSITION_Y and view.composition != "single":
            for s in view.series:
                out.append(ChannelTuple(
                    g=view.grouping, c=b.cls, d=DataMapping.mapped(s.y_field),
                    v=b.visual, view_id=view.id, domain=b.domain))
            continue
        out.append(ChannelTuple(
            g=view.grouping, c=b.cls, d=b.mapping, v=b.visual,
            view_id=view.id, domain=b.domain))
    return out


# --- equivalence registry -------------------------------------------------

CONFIRMED_SAME = "confirmed-same"
CONFIRMED_DIFFERENT = "confirmed-different"
PENDING = "pending"


def _pair_key(a: str, b: str) -> tuple:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Confirmation:
    a: str
    b: str
    status: str


@dataclass(frozen=True)
class EquivalenceRegistry:
    """User answers about semantic sameness of fields (and columns).

    Confirmed-same pairs form equivalence classes (union-find closure);
    confirmed-different pins a pair. Keys are canonical field strings.
    """

    confirmations: tuple = ()

    def _entry(self, a: str, b: str) -> Optional[Confirmation]:
        key = _pair_key(a, b)
        for c in self.confirmations:
            if _pair_key(c.a, c.b) == key:
                return c
        return None

    def _same_closure(self) -> dict:
        parent: dict = {}

        def find(x: str) -> str:
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.confirmations:
            if c.status == CONFIRMED_SAME:
                ra, rb = find(c.a), find(c.b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return {x: find(x) for x in parent}

    def same(self, a: str, b: str) -> bool:
        if a == b:
            return True
        roots = self._same_closure()
        return a in roots and b in roots and roots[a] == roots[b]

    def status(self, a: str, b: str) -> str:
        """Resolved status for a pair: same, different, or pending."""
        if self.same(a, b):
            return CONFIRMED_SAME
        entry = self._entry(a, b)
        if entry is not None and entry.status == CONFIRMED_DIFFERENT:
            return CONFIRMED_DIFFERENT
        return PENDING

    def confirm(self, a: str, b: str, same: bool) -> "EquivalenceRegistry":
        status = self.status(a, b)
        if status == CONFIRMED_SAME and not same:
            raise ContradictoryConfirmation(
                f"{a} and {b} are already confirmed the same")
        if status == CONFIRMED_DIFFERENT and same:
            raise ContradictoryConfirmation(
                f"{a} and {b} are already confirmed different")
        key = _pair_key(a, b)
        kept = tuple(c for c in self.confirmations
                     if _pair_key(c.a, c.b) != key)
        new = Confirmation(key[0], key[1],
                           CONFIRMED_SAME if same else CONFIRMED_DIFFERENT)
        return EquivalenceRegistry(kept + (new,))


@dataclass(frozen=True)
class Canvas:
    dataset: "object"  # semsnap.data.Dataset; kept loose to avoid a cycle
    views: tuple
    registry: EquivalenceRegistry = field(default_factory=EquivalenceRegistry)

    def __post_init__(self) -> None:
        ids = [v.id for v in self.views]
        if len(set(ids)) != len(ids):
            raise ValueError("view ids must be unique")

    def view(self, view_id: str) -> Optional[View]:
        for v in self.views:
            if v.id == view_id:
                return v
        return None

    def replace_views(self, views: Iterable[View]) -> "Canvas":
        return replace(self, views=tuple(views))

    def with_registry(self, registry: EquivalenceRegistry) -> "Canvas":
        return replace(self, registry=registry)


# --- equality predicates ---------------------------------------------------

def grouping_eq(view_a: View, view_b: View,
                registry: EquivalenceRegistry) -> TriState:
    """Grouping equality: column identity, optionally extended by the registry.

    Groupings never need confirmation; anything not (transitively) confirmed
    the same is simply different.
    """
    if view_a.grouping == view_b.grouping:
        return TriState.EQUAL
    if registry.same(view_a.grouping, view_b.grouping):
        return TriState.EQUAL
    return TriState.DIFFERENT


def data_eq(tuple_a: ChannelTuple, tuple_b: ChannelTuple, g_eq: TriState,
            registry: EquivalenceRegistry) -> TriState:
    da, db = tuple_a.d, tuple_b.d
    if da.is_empty and db.is_empty:
        # Two unmapped channels show "the same nothing" only under a shared
        # grouping; a shared red over different groupings is a confuser.
        return TriState.EQUAL if g_eq is TriState.EQUAL else TriState.DIFFERENT
    if da.is_empty or db.is_empty:
        return TriState.DIFFERENT
    if da.field == db.field:
        return TriState.EQUAL
    status = registry.status(da.field.canonical(), db.field.canonical())
    if status == CONFIRMED_SAME:
        return TriState.EQUAL
    if status == CONFIRMED_DIFFERENT:
        return TriState.DIFFERENT
    return TriState.NEEDS_CONFIRMATION


_REL_TOL = 1e-9


def _close(a: float, b: float) -> bool:
    return a == b or math.isclose(a, b, rel_tol=_REL_TOL, abs_tol=0.0)


def visual_eq(a: VisualOutput, b: VisualOutput) -> bool:
    """Visual-output equality, including cross-variant color collisions.

    Outputs of the same variant compare strictly. A constant color against a
    scheme, or two schemes of different kinds, count as equal when they share
    any color -- a shared red is a collision.
    """
    a_color = isinstance(a, _COLOR_VARIANTS)
    b_color = isinstance(b, _COLOR_VARIANTS)
    if a_color != b_color or (not a_color and type(a) is not type(b)):
        raise ClassMismatch(
            f"cannot compare {type(a).__name__} with {type(b).__name__}")
    if isinstance(a, PositionRange):
        return _close(a.axis_min, b.axis_min) and _close(a.axis_max, b.axis_max)
    if isinstance(a, SizeRange):
        return _close(a.min, b.min) and _close(a.max, b.max)
    if isinstance(a, ConstantColor) and isinstance(b, ConstantColor):
        return a.hex == b.hex
    if isinstance(a, ColorScheme) and isinstance(b, ColorScheme):
        if a.kind == b.kind:
            return (a.scheme_id == b.scheme_id
                    and a.assignment == b.assignment)
        return bool(set(a.colors()) & set(b.colors()))
    # constant vs scheme
    const, scheme = (a, b) if isinstance(a, ConstantColor) else (b, a)
    return const.hex in scheme.colors()
