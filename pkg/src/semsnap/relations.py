"""Detection of inter-view relations over all view pairs.

Six relation kinds are evaluated per unordered view pair. The redundancy
axis (full redundancy > partial redundancy > same-grouping multiples) is
mutually exclusive per pair under that precedence; the consistency axis
(hallucinator, confuser, same-data multiples) is evaluated independently.

A data comparison between two distinct, unconfirmed fields is undecided;
relations whose existence hinges on such a comparison are reported with
``conditional=True`` and carry the field pairs awaiting confirmation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import UnknownView
from .model import (
    Canvas,
    ChannelClass,
    ChannelTuple,
    EquivalenceRegistry,
    TriState,
    View,
    data_eq,
    grouping_eq,
    tuples_of,
    visual_eq,
)

REDUNDANCY = "redundancy"
CONSISTENCY = "consistency"


class RelationKind(Enum):
    FULL_REDUNDANCY = ("R1", REDUNDANCY)
    PARTIAL_REDUNDANCY = ("R2", REDUNDANCY)
    MULTIPLES_SAME_GROUPING = ("R3a", REDUNDANCY)
    MULTIPLES_SAME_DATA = ("R3b", CONSISTENCY)
    HALLUCINATOR = ("R4", CONSISTENCY)
    CONFUSER = ("R5", CONSISTENCY)

    def __init__(self, code: str, axis: str):
        self.code = code
        self.axis = axis


@dataclass(frozen=True)
class Witness:
    channel_class: ChannelClass
    tuple_a: ChannelTuple
    tuple_b: ChannelTuple
    pending_confirmations: tuple = ()  # (canonical a, canonical b) pairs
    domains_differ: bool = False


@dataclass(frozen=True)
class RelationInstance:
    id: str
    kind: RelationKind
    view_ids: tuple  # sorted pair
    witnesses: tuple
    conditional: bool = False

    @property
    def pending_confirmations(self) -> tuple:
        seen, out = set(), []
        for w in self.witnesses:
            for pair in w.pending_confirmations:
                if pair not in seen:
                    seen.add(pair)
                    out.append(pair)
        return tuple(out)

    @property
    def domains_differ(self) -> bool:
        return any(w.domains_differ for w in self.witnesses)


@dataclass(frozen=True)
class RelationSet:
    instances: tuple
    by_view: dict = field(default_factory=dict)

    def get(self, instance_id: str) -> Optional[RelationInstance]:
        for inst in self.instances:
            if inst.id == instance_id:
                return inst
        return None


# --- pair context ----------------------------------------------------------

@dataclass(frozen=True)
class MatchedPair:
    channel_class: ChannelClass
    tuple_a: ChannelTuple
    tuple_b: ChannelTuple
    d: TriState

    @property
    def both_mapped(self) -> bool:
        return not (self.tuple_a.d.is_empty or self.tuple_b.d.is_empty)

    @property
    def one_sided(self) -> bool:
        return self.tuple_a.d.is_empty != self.tuple_b.d.is_empty

    @property
    def any_mapped(self) -> bool:
        return not (self.tuple_a.d.is_empty and self.tuple_b.d.is_empty)

    @property
    def v_equal(self) -> bool:
        return visual_eq(self.tuple_a.v, self.tuple_b.v)

    @property
    def domains_differ(self) -> bool:
        return self.tuple_a.domain != self.tuple_b.domain

    def pending(self) -> tuple:
        if self.d is not TriState.NEEDS_CONFIRMATION:
            return ()
        return ((self.tuple_a.d.field.canonical(),
                 self.tuple_b.d.field.canonical()),)


@dataclass(frozen=True)
class PairContext:
    view_a: View
    view_b: View
    g: TriState
    pairs: tuple  # MatchedPair


def pair_context(view_a: View, view_b: View,
                 registry: EquivalenceRegistry) -> PairContext:
    g = grouping_eq(view_a, view_b, registry)
    by_class_a: dict = {}
    for t in tuples_of(view_a):
        by_class_a.setdefault(t.c, []).append(t)
    by_class_b: dict = {}
    for t in tuples_of(view_b):
        by_class_b.setdefault(t.c, []).append(t)
    pairs = []
    for cls in ChannelClass:
        for ta in by_class_a.get(cls, ()):
            for tb in by_class_b.get(cls, ()):
                pairs.append(MatchedPair(
                    channel_class=cls, tuple_a=ta, tuple_b=tb,
                    d=data_eq(ta, tb, g, registry)))
    return PairContext(view_a=view_a, view_b=view_b, g=g, pairs=tuple(pairs))


def _witness(pair: MatchedPair, domains_differ: bool = False) -> Witness:
    return Witness(channel_class=pair.channel_class, tuple_a=pair.tuple_a,
                   tuple_b=pair.tuple_b, pending_confirmations=pair.pending(),
                   domains_differ=domains_differ)


# --- the six predicates ----------------------------------------------------
# Each returns (witnesses, conditional) or None.

def is_full_redundancy(ctx: PairContext):
    """Same grouping and every matched channel pair shows the same data."""
    if ctx.g is not TriState.EQUAL or not ctx.pairs:
        return None
    if all(p.d is TriState.EQUAL for p in ctx.pairs):
        return tuple(_witness(p) for p in ctx.pairs), False
    return None


def is_partial_redundancy(ctx: PairContext):
    """One view shows a subset: every disagreeing channel pair is unmapped on
    one side, and all the unmapped sides belong to the same view."""
    if ctx.g is not TriState.EQUAL:
        return None
    one_sided = [p for p in ctx.pairs if p.one_sided]
    shared = [p for p in ctx.pairs if p.both_mapped
              and p.d in (TriState.EQUAL, TriState.NEEDS_CONFIRMATION)]
    if not one_sided or not shared:
        return None
    if any(p.both_mapped and p.d is TriState.DIFFERENT for p in ctx.pairs):
        return None
    empty_on_a = [p.tuple_a.d.is_empty for p in one_sided]
    if not (all(empty_on_a) or not any(empty_on_a)):
        return None
    conditional = any(p.d is TriState.NEEDS_CONFIRMATION for p in shared)
    witnesses = tuple(_witness(p) for p in one_sided + shared)
    return witnesses, conditional


def is_multiples_same_grouping(ctx: PairContext):
    """Same grouping, some channel pair mapped on both sides to different
    data. Witnesses flag whether the matched y-domains differ."""
    if ctx.g is not TriState.EQUAL:
        return None
    firm = [p for p in ctx.pairs if p.both_mapped and p.d is TriState.DIFFERENT]
    pending = [p for p in ctx.pairs
               if p.both_mapped and p.d is TriState.NEEDS_CONFIRMATION]
    chosen = firm if firm else pending
    if not chosen:
        return None
    witnesses = tuple(
        _witness(p, domains_differ=(
            p.channel_class is ChannelClass.POSITION_Y and p.domains_differ))
        for p in chosen)
    return witnesses, not firm


def is_multiples_same_data(ctx: PairContext):
    """Different groupings, same data on a mapped channel pair, shown over
    differing domains.

    The domain condition makes the relation resolvable: once the domains are
    homogenized there is nothing inconsistent left to report.
    """
    if ctx.g is not TriState.DIFFERENT:
        return None
    firm = [p for p in ctx.pairs if p.both_mapped
            and p.d is TriState.EQUAL and p.domains_differ]
    pending = [p for p in ctx.pairs if p.both_mapped
               and p.d is TriState.NEEDS_CONFIRMATION and p.domains_differ]
    chosen = firm if firm else pending
    if not chosen:
        return None
    witnesses = tuple(_witness(p, domains_differ=True) for p in chosen)
    return witnesses, not firm


def is_hallucinator(ctx: PairContext):
    """Same grouping, same data on a mapped channel pair, different visual
    output -- the same thing shown two ways.

    Only firmly-equal data counts: an unconfirmed pair surfaces as a
    conditional multiples relation instead, which is where the confirmation
    question is asked.
    """
    if ctx.g is not TriState.EQUAL:
        return None
    hits = [p for p in ctx.pairs if p.any_mapped
            and p.d is TriState.EQUAL and not p.v_equal]
    if not hits:
        return None
    return tuple(_witness(p) for p in hits), False


def is_confuser(ctx: PairContext):
    """Some channel pair shows firmly different data with the same visual
    output. No grouping requirement; unmapped channels participate."""
    hits = [p for p in ctx.pairs
            if p.d is TriState.DIFFERENT and p.v_equal]
    if not hits:
        return None
    return tuple(_witness(p) for p in hits), False


_REDUNDANCY_CHAIN = (
    (RelationKind.FULL_REDUNDANCY, is_full_redundancy),
    (RelationKind.PARTIAL_REDUNDANCY, is_partial_redundancy),
    (RelationKind.MULTIPLES_SAME_GROUPING, is_multiples_same_grouping),
)

_CONSISTENCY_PREDICATES = (
    (RelationKind.HALLUCINATOR, is_hallucinator),
    (RelationKind.CONFUSER, is_confuser),
    (RelationKind.MULTIPLES_SAME_DATA, is_multiples_same_data),
)


def _instance_id(kind: RelationKind, a: str, b: str) -> str:
    return f"{kind.code}[{a}|{b}]"


def find_relations(canvas: Canvas) -> RelationSet:
    """Evaluate every unordered view pair against all six predicates."""
    instances = []
    views = canvas.views
    for i in range(len(views)):
        for j in range(i + 1, len(views)):
            a, b = sorted((views[i], views[j]), key=lambda v: v.id)
            ctx = pair_context(a, b, canvas.registry)
            for kind, predicate in _REDUNDANCY_CHAIN:
                hit = predicate(ctx)
                if hit is not None:
                    witnesses, conditional = hit
                    instances.append(RelationInstance(
                        id=_instance_id(kind, a.id, b.id), kind=kind,
                        view_ids=(a.id, b.id), witnesses=witnesses,
                        conditional=conditional))
                    break
            for kind, predicate in _CONSISTENCY_PREDICATES:
                hit = predicate(ctx)
                if hit is not None:
                    witnesses, conditional = hit
                    instances.append(RelationInstance(
                        id=_instance_id(kind, a.id, b.id), kind=kind,
                        view_ids=(a.id, b.id), witnesses=witnesses,
                        conditional=conditional))
    codes = [k.code for k, _ in _REDUNDANCY_CHAIN + _CONSISTENCY_PREDICATES]
    instances.sort(key=lambda r: (r.view_ids, codes.index(r.kind.code)))
    by_view: dict = {}
    for inst in instances:
        for vid in inst.view_ids:
            by_view.setdefault(vid, []).append(inst.id)
    return RelationSet(instances=tuple(instances), by_view=by_view)


def relations_for_view(relation_set: RelationSet, canvas: Canvas,
                       view_id: str) -> list:
    if canvas.view(view_id) is None:
        raise UnknownView(f"no view named {view_id!r}")
    ids = relation_set.by_view.get(view_id, [])
    return [relation_set.get(i) for i in ids]


def integration_groups(relation_set: RelationSet, canvas: Canvas) -> list:
    """Connected components of same-grouping multiples that can merge.

    An edge requires the same chart type and a shared (data-equal) x-axis
    mapping. Groups are candidates for stack/group, and mirror/overlay when
    exactly two views are involved.
    """
    edges = []
    for inst in relation_set.instances:
        if inst.kind is not RelationKind.MULTIPLES_SAME_GROUPING:
            continue
        a = canvas.view(inst.view_ids[0])
        b = canvas.view(inst.view_ids[1])
        if a is None or b is None or a.chart_type != b.chart_type:
            continue
        if not _shared_x(a, b, canvas.registry):
            continue
        edges.append((a.id, b.id))
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict = {}
    for vid in parent:
        groups.setdefault(find(vid), []).append(vid)
    order = {v.id: i for i, v in enumerate(canvas.views)}
    out = [sorted(g, key=lambda v: order[v]) for g in groups.values()
           if len(g) >= 2]
    out.sort(key=lambda g: order[g[0]])
    return out


def _shared_x(a: View, b: View, registry: EquivalenceRegistry) -> bool:
    ba = a.binding(ChannelClass.POSITION_X)
    bb = b.binding(ChannelClass.POSITION_X)
    if ba is None or bb is None:
        return False
    if ba.mapping.is_empty or bb.mapping.is_empty:
        return False
    ta = ChannelTuple(a.grouping, ChannelClass.POSITION_X, ba.mapping,
                      ba.visual, a.id)
    tb = ChannelTuple(b.grouping, ChannelClass.POSITION_X, bb.mapping,
                      bb.visual, b.id)
    g = grouping_eq(a, b, registry)
    return data_eq(ta, tb, g, registry) is TriState.EQUAL
