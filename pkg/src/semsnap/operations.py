"""Relation-resolving canvas rewrites, history, and semantic-space scoring.

Plans are content-addressed: the id is a hash of what the operation will do,
so a plan listed by one process can be applied by another as long as the
canvas file has not changed in between.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .config import Config
from .data import union_domain
from .errors import (
    ConfirmationDenied,
    EmptyMapping,
    IncompatibleChartTypes,
    MissingConfirmation,
    NoWitness,
    NothingPending,
    PaletteExhausted,
    PendingOperation,
    StalePlan,
    UnknownView,
    UnsharedXAxis,
    UnsupportedVariant,
)
from .model import (
    Canvas,
    CategoricalDomain,
    ChannelBinding,
    ChannelClass,
    ColorScheme,
    ConstantColor,
    EquivalenceRegistry,
    FieldRef,
    PositionRange,
    Series,
    SizeRange,
    TriState,
    View,
    data_eq,
    grouping_eq,
    tuples_of,
    visual_eq,
)
from .relations import (
    RelationInstance,
    RelationKind,
    RelationSet,
    find_relations,
    integration_groups,
    relations_for_view,
)

CATEGORY_ORDER = ("homogenize-data", "homogenize-style", "differentiate",
                  "integrate")


class OperationKind(Enum):
    # Delete sits in the integrate menu: it is the other compactness move.
    DELETE = ("delete", "integrate")
    HOMOGENIZE_DATA = ("homogenize data", "homogenize-data")
    HOMOGENIZE_STYLE = ("homogenize style", "homogenize-style")
    DIFFERENTIATE = ("differentiate", "differentiate")
    INTEGRATE_OVERLAY = ("integrate: overlay", "integrate")
    INTEGRATE_GROUP = ("integrate: group", "integrate")
    INTEGRATE_STACK = ("integrate: stack", "integrate")
    INTEGRATE_MIRROR = ("integrate: mirror", "integrate")
    INTEGRATE_TRANSFER = ("integrate: transfer", "integrate")

    def __init__(self, label: str, category: str):
        self.label = label
        self.category = category


INTEGRATE_VARIANTS = {
    OperationKind.INTEGRATE_OVERLAY: "overlay",
    OperationKind.INTEGRATE_GROUP: "group",
    OperationKind.INTEGRATE_STACK: "stack",
    OperationKind.INTEGRATE_MIRROR: "mirror",
}

# chart types each integration variant accepts
VARIANT_CHARTS = {
    "overlay": ("scatter", "line"),
    "mirror": ("line", "area", "bar", "streamgraph"),
    "stack": ("bar", "area", "streamgraph"),
    "group": ("bar",),
}

COMPOSITION_OF_VARIANT = {
    "overlay": "overlaid",
    "group": "grouped",
    "stack": "stacked",
    "mirror": "mirrored",
}

QUESTION_TEMPLATE = "Are {a} and {b} representing the same quantity?"


@dataclass(frozen=True)
class OperationPlan:
    id: str
    kind: OperationKind
    target_view_ids: tuple
    resolves_relation_id: str
    description: str
    source_view_id: Optional[str] = None
    params: tuple = ()  # sorted (key, value) pairs
    required_confirmations: tuple = ()  # (a, b) canonical pairs
    confirm_to_proceed: str = "same"
    question: Optional[str] = None

    @property
    def category(self) -> str:
        return self.kind.category

    def param(self, key: str):
        for k, v in self.params:
            if k == key:
                return v
        return None


@dataclass(frozen=True)
class SemanticPosition:
    compactness: float
    consistency: float


def _plan_id(kind: OperationKind, targets, source, resolves, params) -> str:
    payload = json.dumps(
        [kind.name, list(targets), source, resolves, list(params)],
        sort_keys=True)
    return hashlib.sha1(payload.encode("utf-8")).hexdigest()[:12]


def _plan(kind, targets, resolves, description, source=None, params=(),
          confirmations=(), proceed="same") -> OperationPlan:
    params = tuple(sorted(params))
    question = None
    if confirmations:
        a, b = confirmations[0]
        question = QUESTION_TEMPLATE.format(a=a, b=b)
    return OperationPlan(
        id=_plan_id(kind, targets, source, resolves, params),
        kind=kind, target_view_ids=tuple(targets),
        resolves_relation_id=resolves, description=description,
        source_view_id=source, params=params,
        required_confirmations=tuple(confirmations),
        confirm_to_proceed=proceed, question=question)


# --- planning ----------------------------------------------------------------

def _class_tuples(view: View, cls: ChannelClass) -> list:
    return [t for t in tuples_of(view) if t.c is cls]


def plan_operations(canvas: Canvas, relation_set: RelationSet, view_id: str,
                    config: Optional[Config] = None) -> list:
    """All operation plans available from a selected view.

    Candidate plans come from the relation-to-operation table; each is then
    vetted by simulation and offered only if it executes cleanly, removes the
    witness it claims to resolve, and does not worsen its own axis score.
    """
    config = config or Config()
    relations = relations_for_view(relation_set, canvas, view_id)
    groups = integration_groups(relation_set, canvas)
    plans: list = []
    for rel in relations:
        plans.extend(_plans_for_relation(canvas, rel, view_id, groups, config))
    seen, unique = set(), []
    for p in plans:
        if p.id not in seen and _viable(canvas, relation_set, p, config):
            seen.add(p.id)
            unique.append(p)
    unique.sort(key=lambda p: (CATEGORY_ORDER.index(p.category),
                               p.target_view_ids, p.kind.name, p.id))
    return unique


def _viable(canvas: Canvas, relation_set: RelationSet, plan: OperationPlan,
            config: Config) -> bool:
    from .errors import SemSnapError
    simulated = canvas
    try:
        registry = canvas.registry
        for a, b in plan.required_confirmations:
            registry = registry.confirm(a, b,
                                        plan.confirm_to_proceed == "same")
        simulated = _execute(canvas.with_registry(registry), plan, config)
    except SemSnapError:
        return False
    after = find_relations(simulated)
    if not _closes(relation_set.get(plan.resolves_relation_id), after, plan):
        return False
    before_pos = semantic_position(relation_set, config.weights)
    after_pos = semantic_position(after, config.weights)
    if plan.category == "integrate":
        return after_pos.compactness >= before_pos.compactness
    return after_pos.consistency >= before_pos.consistency


def _closes(resolved, after: RelationSet, plan: OperationPlan) -> bool:
    """Resolution closure: the relation instance must not survive the plan."""
    if resolved is None:
        return False
    return after.get(resolved.id) is None


def _plans_for_relation(canvas, rel: RelationInstance, view_id, groups,
                        config) -> list:
    a_id, b_id = rel.view_ids
    view_a, view_b = canvas.view(a_id), canvas.view(b_id)
    plans = []
    kind = rel.kind

    if kind is RelationKind.FULL_REDUNDANCY:
        for victim in rel.view_ids:
            keeper = b_id if victim == a_id else a_id
            plans.append(_plan(
                OperationKind.DELETE, [victim], rel.id,
                f"Views '{a_id}' and '{b_id}' are fully redundant; "
                f"delete '{victim}' and keep '{keeper}'.",
                confirmations=rel.pending_confirmations))

    elif kind is RelationKind.PARTIAL_REDUNDANCY:
        subset, superset = _subset_of(rel)
        plans.append(_plan(
            OperationKind.DELETE, [subset], rel.id,
            f"View '{subset}' shows a subset of '{superset}'; "
            f"delete '{subset}'.",
            confirmations=rel.pending_confirmations))
        plans.append(_plan(
            OperationKind.INTEGRATE_TRANSFER, [subset, superset], rel.id,
            f"View '{subset}' shows a subset of '{superset}'; move the "
            f"extra mapping into '{subset}' and delete '{superset}'.",
            confirmations=rel.pending_confirmations))

    elif kind is RelationKind.MULTIPLES_SAME_GROUPING:
        for w in rel.witnesses:
            if w.tuple_a.domain != w.tuple_b.domain:
                plans.append(_plan(
                    OperationKind.HOMOGENIZE_DATA, [a_id, b_id], rel.id,
                    f"Views '{a_id}' and '{b_id}' are multiples with "
                    f"different {w.channel_class.value} domains; "
                    f"homogenize the domains.",
                    params=[("channel", w.channel_class.value)],
                    confirmations=w.pending_confirmations))
        group = next((g for g in groups if view_id in g), None)
        if group and a_id in group and b_id in group:
            pendings = _group_pendings(canvas, group)
            chart = canvas.view(group[0]).chart_type
            for op_kind, variant in INTEGRATE_VARIANTS.items():
                if chart not in VARIANT_CHARTS[variant]:
                    continue
                if variant in ("overlay", "mirror") and len(group) != 2:
                    continue
                names = ", ".join(f"'{v}'" for v in group)
                plans.append(_plan(
                    op_kind, group, rel.id,
                    f"Views {names} are multiples; integrate them into a "
                    f"single {variant} chart.",
                    params=[("variant", variant)],
                    confirmations=pendings, proceed="different"))

    elif kind is RelationKind.MULTIPLES_SAME_DATA:
        for w in rel.witnesses:
            plans.append(_plan(
                OperationKind.HOMOGENIZE_DATA, [a_id, b_id], rel.id,
                f"Views '{a_id}' and '{b_id}' show the same data over "
                f"different {w.channel_class.value} domains; homogenize "
                f"the domains.",
                params=[("channel", w.channel_class.value)],
                confirmations=w.pending_confirmations))

    elif kind is RelationKind.HALLUCINATOR:
        for w in rel.witnesses:
            for source, target in ((view_a, view_b), (view_b, view_a)):
                plans.append(_plan(
                    OperationKind.HOMOGENIZE_STYLE, [target.id], rel.id,
                    f"Views '{a_id}' and '{b_id}' show the same data in "
                    f"different ways (hallucinator); apply '{source.id}'s "
                    f"{w.channel_class.value} style to '{target.id}'.",
                    source=source.id,
                    params=[("channel", w.channel_class.value)],
                    confirmations=w.pending_confirmations))

    elif kind is RelationKind.CONFUSER:
        for w in rel.witnesses:
            for side in (view_a, view_b):
                plans.append(_plan(
                    OperationKind.DIFFERENTIATE, [side.id], rel.id,
                    f"Views '{a_id}' and '{b_id}' show different data the "
                    f"same way (confuser); differentiate "
                    f"'{side.id}'s {w.channel_class.value}.",
                    params=[("channel", w.channel_class.value)],
                    confirmations=w.pending_confirmations,
                    proceed="different"))
    return plans


def _subset_of(rel: RelationInstance) -> tuple:
    for w in rel.witnesses:
        if w.tuple_a.d.is_empty != w.tuple_b.d.is_empty:
            if w.tuple_a.d.is_empty:
                return rel.view_ids[0], rel.view_ids[1]
            return rel.view_ids[1], rel.view_ids[0]
    raise NoWitness("partial redundancy without a one-sided witness")


def _group_pendings(canvas: Canvas, group: list) -> tuple:
    relset = find_relations(canvas)
    seen, out = set(), []
    for inst in relset.instances:
        if inst.kind is not RelationKind.MULTIPLES_SAME_GROUPING:
            continue
        if not set(inst.view_ids) <= set(group):
            continue
        for pair in inst.pending_confirmations:
            if pair not in seen:
                seen.add(pair)
                out.append(pair)
    return tuple(out)


# --- rewrites ----------------------------------------------------------------

def _position_visual(domain) -> PositionRange:
    if isinstance(domain, CategoricalDomain):
        return PositionRange(axis_min=0.0, axis_max=float(len(domain.values)))
    return PositionRange(axis_min=domain.min, axis_max=domain.max)


_POSITIONAL = (ChannelClass.POSITION_X, ChannelClass.POSITION_Y,
               ChannelClass.ANGLE)


def _with_domain(binding: ChannelBinding, domain) -> ChannelBinding:
    visual = binding.visual
    if binding.cls in _POSITIONAL:
        visual = _position_visual(domain)
    return replace(binding, domain=domain, visual=visual)


def delete_view(canvas: Canvas, view_id: str) -> Canvas:
    if canvas.view(view_id) is None:
        raise UnknownView(f"no view named {view_id!r}")
    return canvas.replace_views(v for v in canvas.views if v.id != view_id)


def homogenize_data(canvas: Canvas, view_a_id: str, view_b_id: str,
                    cls: ChannelClass) -> Canvas:
    view_a, view_b = canvas.view(view_a_id), canvas.view(view_b_id)
    if view_a is None or view_b is None:
        raise UnknownView(f"unknown view in {view_a_id!r}, {view_b_id!r}")
    ba, bb = view_a.binding(cls), view_b.binding(cls)
    if ba is None or bb is None or ba.mapping.is_empty or bb.mapping.is_empty:
        raise EmptyMapping(f"both views need a mapped {cls.value} channel")
    union = union_domain(ba.domain, bb.domain)
    return canvas.replace_views(
        v.with_binding(_with_domain(v.binding(cls), union))
        if v.id in (view_a_id, view_b_id) else v
        for v in canvas.views)


def homogenize_style(canvas: Canvas, target_id: str, source_id: str,
                     cls: ChannelClass) -> Canvas:
    target, source = canvas.view(target_id), canvas.view(source_id)
    if target is None or source is None:
        raise UnknownView(f"unknown view in {target_id!r}, {source_id!r}")
    bt, bs = target.binding(cls), source.binding(cls)
    if bt is None or bs is None:
        raise NoWitness(f"no {cls.value} binding on both views")
    if not _has_hallucinator_witness(canvas, target, source, cls):
        raise NoWitness(
            f"no hallucinator witness on {cls.value} between "
            f"{target_id!r} and {source_id!r}")
    if bt.domain is not None and bs.domain is not None:
        union = union_domain(bt.domain, bs.domain)
    else:
        union = bt.domain or bs.domain
    new_views = []
    for v in canvas.views:
        if v.id == target_id:
            nb = replace(bt, visual=bs.visual)
            if union is not None:
                nb = _with_domain(nb, union)
            new_views.append(v.with_binding(nb))
        elif v.id == source_id and union is not None:
            new_views.append(v.with_binding(_with_domain(bs, union)))
        else:
            new_views.append(v)
    return canvas.replace_views(new_views)


def _has_hallucinator_witness(canvas, target, source, cls) -> bool:
    g = grouping_eq(target, source, canvas.registry)
    if g is not TriState.EQUAL:
        return False
    for ta in _class_tuples(target, cls):
        for tb in _class_tuples(source, cls):
            d = data_eq(ta, tb, g, canvas.registry)
            if d is TriState.EQUAL and (not ta.d.is_empty or
                                        not tb.d.is_empty) \
                    and not visual_eq(ta.v, tb.v):
                return True
    return False


def _palette_for(visual, config: Config) -> list:
    """Ordered replacement candidates matching the output's variant."""
    if isinstance(visual, ConstantColor):
        return [ConstantColor(c) for c in config.constant_colors]
    if isinstance(visual, ColorScheme):
        if visual.kind == "continuous":
            return [ColorScheme(sid, "continuous",
                                (("0", colors[0]), ("1", colors[-1])))
                    for sid, colors in config.ramps]
        labels = [k for k, _ in visual.assignment]
        out = []
        for sid, colors in config.categorical_schemes:
            assignment = tuple(
                (label, colors[i % len(colors)])
                for i, label in enumerate(labels))
            out.append(ColorScheme(sid, "categorical", assignment))
        return out
    if isinstance(visual, SizeRange):
        return [SizeRange(lo, hi) for lo, hi in config.size_ranges]
    return []


def differentiate(canvas: Canvas, view_id: str, cls: ChannelClass,
                  config: Optional[Config] = None) -> Canvas:
    """Replace a view's visual output with the first palette entry that
    collides with nothing else on the canvas."""
    config = config or Config()
    view = canvas.view(view_id)
    if view is None:
        raise UnknownView(f"no view named {view_id!r}")
    binding = view.binding(cls)
    if binding is None:
        raise NoWitness(f"view {view_id!r} has no {cls.value} channel")
    others = [t.v for v in canvas.views if v.id != view_id
              for t in _class_tuples(v, cls)]
    for candidate in _palette_for(binding.visual, config):
        if visual_eq(candidate, binding.visual):
            continue
        if any(visual_eq(candidate, other) for other in others):
            continue
        return canvas.replace_views(
            v.with_binding(replace(binding, visual=candidate))
            if v.id == view_id else v
            for v in canvas.views)
    raise PaletteExhausted(
        f"every palette entry for {cls.value} collides with another view")


def _series_of(view: View) -> list:
    if view.composition != "single":
        return list(view.series)
    py = view.binding(ChannelClass.POSITION_Y)
    color = view.binding(ChannelClass.COLOR)
    visual = color.visual if color is not None else ConstantColor("#4c78a8")
    if isinstance(visual, ColorScheme):
        visual = ConstantColor(visual.colors()[0])
    field_ref = py.mapping.field
    return [Series(label=field_ref.canonical(), y_field=field_ref,
                   color=visual)]


def integrate_views(canvas: Canvas, group: list, variant: str,
                    config: Optional[Config] = None) -> Canvas:
    """Merge the views of an integration group into one composed view."""
    config = config or Config()
    if variant not in VARIANT_CHARTS:
        raise UnsupportedVariant(f"unknown integration variant {variant!r}")
    views = []
    for vid in group:
        v = canvas.view(vid)
        if v is None:
            raise UnknownView(f"no view named {vid!r}")
        views.append(v)
    if len(views) < 2:
        raise UnsupportedVariant("integration needs at least two views")
    chart = views[0].chart_type
    if any(v.chart_type != chart for v in views):
        raise IncompatibleChartTypes(
            "integration requires a shared chart type")
    if chart not in VARIANT_CHARTS[variant]:
        raise UnsupportedVariant(
            f"variant {variant!r} does not apply to {chart!r} charts")
    if variant in ("overlay", "mirror") and len(views) != 2:
        raise UnsupportedVariant(f"{variant} integrates exactly two views")
    from .relations import _shared_x
    for i in range(len(views)):
        for j in range(i + 1, len(views)):
            if not _shared_x(views[i], views[j], canvas.registry):
                raise UnsharedXAxis(
                    f"views {views[i].id!r} and {views[j].id!r} do not "
                    f"share an x-axis mapping")

    series: list = []
    labels_used: set = set()
    for v in views:
        for s in _series_of(v):
            label = s.label
            if label in labels_used:
                label = f"{label} ({v.id})"
            labels_used.add(label)
            color = s.color
            if any(visual_eq(color, t.color) for t in series):
                color = _fresh_constant([t.color for t in series], config)
            series.append(Series(label=label, y_field=s.y_field, color=color))

    base = views[0]
    py_domain = None
    for v in views:
        d = v.binding(ChannelClass.POSITION_Y).domain
        py_domain = d if py_domain is None else union_domain(py_domain, d)
    px_domain = None
    for v in views:
        d = v.binding(ChannelClass.POSITION_X).domain
        px_domain = d if px_domain is None else union_domain(px_domain, d)

    py = _with_domain(replace(
        base.binding(ChannelClass.POSITION_Y),
        mapping=replace(base.binding(ChannelClass.POSITION_Y).mapping,
                        field=series[0].y_field)), py_domain)
    px = _with_domain(base.binding(ChannelClass.POSITION_X), px_domain)
    legend = ColorScheme(
        "series", "categorical",
        tuple((s.label, s.color.hex) for s in series))
    color_raw = next((b.raw_channel for b in base.bindings
                      if b.cls is ChannelClass.COLOR), "fill")
    color = ChannelBinding(raw_channel=color_raw, cls=ChannelClass.COLOR,
                           visual=legend)
    merged = replace(base, composition=COMPOSITION_OF_VARIANT[variant],
                     series=tuple(series))
    merged = merged.with_binding(px).with_binding(py).with_binding(color)
    drop = {v.id for v in views[1:]}
    return canvas.replace_views(
        merged if v.id == base.id else v
        for v in canvas.views if v.id not in drop)


def _fresh_constant(used: list, config: Config) -> ConstantColor:
    for c in config.constant_colors:
        candidate = ConstantColor(c)
        if not any(visual_eq(candidate, u) for u in used):
            return candidate
    raise PaletteExhausted("no distinct series color left")


def integrate_transfer(canvas: Canvas, subset_id: str,
                       superset_id: str) -> Canvas:
    """Move the superset's extra mappings into the subset view, then drop
    the superset."""
    subset, superset = canvas.view(subset_id), canvas.view(superset_id)
    if subset is None or superset is None:
        raise UnknownView(f"unknown view in {subset_id!r}, {superset_id!r}")
    enriched = subset
    for b in superset.bindings:
        if b.mapping.is_empty:
            continue
        own = enriched.binding(b.cls)
        if own is None or own.mapping.is_empty:
            enriched = enriched.with_binding(replace(b))
    canvas = canvas.replace_views(
        enriched if v.id == subset_id else v for v in canvas.views)
    return delete_view(canvas, superset_id)


# --- orchestration -----------------------------------------------------------

def record_equivalence(registry: EquivalenceRegistry, field_a: FieldRef,
                       field_b: FieldRef, same: bool) -> EquivalenceRegistry:
    return registry.confirm(field_a.canonical(), field_b.canonical(), same)


def apply_operation(canvas: Canvas, plan: OperationPlan, confirmations=None,
                    config: Optional[Config] = None) -> Canvas:
    """Execute a plan. Confirmations are a {(a, b): "same"|"different"} map;
    an answer that withdraws the plan raises ConfirmationDenied carrying the
    registry-updated canvas."""
    config = config or Config()
    confirmations = confirmations or {}
    relation_set = find_relations(canvas)
    if relation_set.get(plan.resolves_relation_id) is None:
        raise StalePlan(
            f"relation {plan.resolves_relation_id!r} no longer exists")
    current = plan_operations(canvas, relation_set, plan.target_view_ids[0],
                              config)
    if plan.id not in {p.id for p in current}:
        raise StalePlan(f"plan {plan.id!r} was not produced from this canvas")

    registry = canvas.registry
    denied = False
    for a, b in plan.required_confirmations:
        answer = confirmations.get((a, b)) or confirmations.get((b, a))
        if answer not in ("same", "different"):
            raise MissingConfirmation(
                QUESTION_TEMPLATE.format(a=a, b=b))
        registry = registry.confirm(a, b, answer == "same")
        if answer != plan.confirm_to_proceed:
            denied = True
    canvas = canvas.with_registry(registry)
    if denied:
        raise ConfirmationDenied(
            "the confirmation withdrew this operation", canvas=canvas)
    return _execute(canvas, plan, config)


def _execute(canvas: Canvas, plan: OperationPlan, config: Config) -> Canvas:
    kind = plan.kind
    if kind is OperationKind.DELETE:
        return delete_view(canvas, plan.target_view_ids[0])
    if kind is OperationKind.HOMOGENIZE_DATA:
        cls = ChannelClass(plan.param("channel"))
        a, b = plan.target_view_ids
        return homogenize_data(canvas, a, b, cls)
    if kind is OperationKind.HOMOGENIZE_STYLE:
        cls = ChannelClass(plan.param("channel"))
        return homogenize_style(canvas, plan.target_view_ids[0],
                                plan.source_view_id, cls)
    if kind is OperationKind.DIFFERENTIATE:
        cls = ChannelClass(plan.param("channel"))
        return differentiate(canvas, plan.target_view_ids[0], cls, config)
    if kind is OperationKind.INTEGRATE_TRANSFER:
        subset, superset = plan.target_view_ids
        return integrate_transfer(canvas, subset, superset)
    variant = INTEGRATE_VARIANTS[kind]
    return integrate_views(canvas, list(plan.target_view_ids), variant,
                           config)


# --- history -----------------------------------------------------------------

@dataclass(frozen=True)
class PendingChange:
    before: Canvas
    after: Canvas
    plan: OperationPlan


@dataclass(frozen=True)
class CanvasHistory:
    committed: tuple
    pending: Optional[PendingChange] = None

    @property
    def current(self) -> Canvas:
        if self.pending is not None:
            return self.pending.after
        return self.committed[-1]


def begin(history: CanvasHistory, before: Canvas, after: Canvas,
          plan: OperationPlan) -> CanvasHistory:
    if history.pending is not None:
        raise PendingOperation(
            "an operation is pending; keep or undo it first")
    return replace(history, pending=PendingChange(before, after, plan))


def undo(history: CanvasHistory):
    """Drop the pending change, restoring the snapshot it started from."""
    if history.pending is None:
        raise NothingPending("nothing to undo")
    return history.pending.before, replace(history, pending=None)


def keep(history: CanvasHistory) -> CanvasHistory:
    if history.pending is None:
        raise NothingPending("nothing to keep")
    return CanvasHistory(
        committed=history.committed + (history.pending.after,), pending=None)


# --- scoring -----------------------------------------------------------------

def semantic_position(relation_set: RelationSet,
                      weights: Optional[dict] = None) -> SemanticPosition:
    """Canvas position on the (compactness, consistency) axes.

    Each axis is the negated weighted count of its relations; a relation-free
    canvas sits at the origin. Unconfirmed relations count at half weight.
    """
    from .config import DEFAULT_WEIGHTS
    w = dict(DEFAULT_WEIGHTS)
    if weights:
        w.update(weights)
    compactness = 0.0
    consistency = 0.0
    for inst in relation_set.instances:
        factor = w["conditional-factor"] if inst.conditional else 1.0
        weight = w[inst.kind.code] * factor
        if inst.kind.axis == "redundancy":
            compactness -= weight
        else:
            consistency -= weight
        if inst.kind is RelationKind.MULTIPLES_SAME_GROUPING \
                and inst.domains_differ:
            consistency -= w["R3a-domain"] * factor
    return SemanticPosition(compactness=compactness, consistency=consistency)
