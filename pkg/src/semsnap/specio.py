"""Canvas document parsing/serialization and lint report formatting.

The document format is versioned JSON (extension .canvas.json). Parsing
validates everything it can and reports all violations at once; serialization
is deterministic, so round-tripping a file is byte-stable.
"""
from __future__ import annotations

import json
import os
from typing import Optional

from .data import Column, Dataset, compute_domain, load_dataset
from .errors import DocumentSyntaxError, ValidationError
from .model import (
    AGGREGATES,
    CHART_TYPES,
    COMPOSITIONS,
    Canvas,
    CategoricalDomain,
    Cell,
    ChannelBinding,
    ChannelClass,
    ColorScheme,
    ConstantColor,
    EquivalenceRegistry,
    FieldRef,
    DataMapping,
    PositionRange,
    QuantitativeDomain,
    Series,
    SizeRange,
    View,
    channel_class,
)

DOCUMENT_VERSION = 1

GRID_WIDTH = 3  # auto-placed cells go row-major, three per row

_POSITIONAL = (ChannelClass.POSITION_X, ChannelClass.POSITION_Y,
               ChannelClass.ANGLE)


def _position_visual(domain) -> PositionRange:
    if isinstance(domain, CategoricalDomain):
        return PositionRange(axis_min=0.0, axis_max=float(len(domain.values)))
    return PositionRange(axis_min=domain.min, axis_max=domain.max)


# --- parsing -----------------------------------------------------------------

def parse_canvas(text: str, base_path: str = ".") -> Canvas:
    """Parse a .canvas.json document. Dataset CSV paths resolve relative to
    ``base_path``. Raises DocumentSyntaxError for malformed JSON and
    ValidationError listing every violated invariant."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"invalid JSON: {exc.msg}",
                                  line=exc.lineno, column=exc.colno) from None

    violations: list = []

    def bad(msg: str) -> None:
        violations.append(msg)

    if not isinstance(doc, dict):
        raise ValidationError(["document root must be a JSON object"])
    if doc.get("version") != DOCUMENT_VERSION:
        bad(f"unsupported document version {doc.get('version')!r}; "
            f"expected {DOCUMENT_VERSION}")

    dataset = None
    ds = doc.get("dataset")
    if not isinstance(ds, dict):
        bad("missing 'dataset' object")
    else:
        source = ds.get("source")
        columns = ds.get("columns")
        if not isinstance(source, str):
            bad("dataset.source must be a path string")
        if not isinstance(columns, list):
            bad("dataset.columns must be a list")
        if isinstance(source, str) and isinstance(columns, list):
            try:
                schema = [Column(c["name"], c["type"]) for c in columns]
                path = os.path.join(base_path, source)
                with open(path, "r", encoding="utf-8") as fh:
                    dataset = load_dataset(fh.read(), schema, name=source)
            except FileNotFoundError:
                bad(f"dataset source {source!r} not found")
            except (KeyError, TypeError):
                bad("dataset.columns entries need 'name' and 'type'")
            except Exception as exc:  # SchemaError, ParseError, CellTypeError
                bad(f"dataset: {exc}")

    registry = EquivalenceRegistry()
    valid_entries = []
    for i, entry in enumerate(doc.get("equivalences", [])):
        try:
            status = entry["status"]
            if status not in ("confirmed-same", "confirmed-different"):
                bad(f"equivalences[{i}]: unknown status {status!r}")
                continue
            valid_entries.append((entry["a"], entry["b"], status, i))
        except (KeyError, TypeError):
            bad(f"equivalences[{i}]: needs 'a', 'b' and 'status'")
    # apply in canonical order so the registry is independent of file order
    for a, b, status, i in sorted(
            valid_entries, key=lambda e: (tuple(sorted(e[:2])), e[2])):
        try:
            registry = registry.confirm(a, b, status == "confirmed-same")
        except Exception as exc:
            bad(f"equivalences[{i}]: {exc}")

    views = []
    raw_views = doc.get("views")
    if not isinstance(raw_views, list):
        bad("missing 'views' list")
        raw_views = []
    seen_ids: set = set()
    for i, raw in enumerate(raw_views):
        view = _parse_view(raw, i, dataset, bad)
        if view is None:
            continue
        if view.id in seen_ids:
            bad(f"duplicate view id {view.id!r}")
            continue
        seen_ids.add(view.id)
        views.append(view)

    if dataset is None and not violations:
        bad("dataset could not be loaded")
    if violations:
        raise ValidationError(violations)

    views = _assign_cells(views)
    views = [_finish_view(v, dataset, bad) for v in views]
    if violations:
        raise ValidationError(violations)
    return Canvas(dataset=dataset, views=tuple(views), registry=registry)


def _parse_view(raw, index: int, dataset, bad) -> Optional[View]:
    if not isinstance(raw, dict):
        bad(f"views[{index}] must be an object")
        return None
    vid = raw.get("id")
    label = repr(vid) if isinstance(vid, str) else f"views[{index}]"
    ok = True
    if not isinstance(vid, str) or not vid:
        bad(f"views[{index}]: missing 'id'")
        ok = False
    chart = raw.get("chart")
    if chart not in CHART_TYPES:
        bad(f"view {label}: unknown chart type {chart!r}")
        ok = False
    grouping = raw.get("grouping")
    if not isinstance(grouping, str) or not grouping:
        bad(f"view {label}: missing 'grouping'")
        ok = False
    elif dataset is not None and not dataset.has_column(grouping):
        bad(f"view {label}: grouping column {grouping!r} not in dataset")
        ok = False
    composition = raw.get("composition", "single")
    if composition not in COMPOSITIONS:
        bad(f"view {label}: unknown composition {composition!r}")
        ok = False
    if not ok:
        return None

    bindings = []
    for name, spec in (raw.get("channels") or {}).items():
        binding = _parse_channel(chart, name, spec, label, dataset, bad)
        if binding is not None:
            bindings.append(binding)
    classes = [b.cls for b in bindings]
    if len(set(classes)) != len(classes):
        bad(f"view {label}: duplicate channel classes")
        return None

    series = []
    for j, s in enumerate(raw.get("series", [])):
        try:
            series.append(Series(
                label=s["label"], y_field=FieldRef.parse(s["field"]),
                color=ConstantColor(s["color"])))
        except (KeyError, TypeError, ValueError):
            bad(f"view {label}: series[{j}] needs label, field, color")
            return None
    if composition == "single" and series:
        bad(f"view {label}: single composition must not carry series")
        return None
    if composition == "mirrored" and len(series) != 2:
        bad(f"view {label}: mirrored composition requires exactly 2 series")
        return None
    if composition != "single" and not series:
        bad(f"view {label}: composed view needs series")
        return None

    cell = None
    if "cell" in raw:
        c = raw["cell"]
        try:
            cell = Cell(row=int(c["row"]), col=int(c["col"]),
                        row_span=int(c.get("rowSpan", 1)),
                        col_span=int(c.get("colSpan", 1)))
        except (KeyError, TypeError, ValueError):
            bad(f"view {label}: malformed cell")
            return None

    order = list(ChannelClass)
    bindings.sort(key=lambda b: order.index(b.cls))
    return View(id=vid, chart_type=chart, grouping=grouping,
                bindings=tuple(bindings), composition=composition,
                series=tuple(series), cell=cell or Cell(-1, -1))


def _parse_channel(chart, name, spec, label, dataset, bad):
    try:
        cls = channel_class(chart, name)
    except Exception as exc:
        bad(f"view {label}: {exc}")
        return None
    if not isinstance(spec, dict):
        bad(f"view {label}: channel {name!r} must be an object")
        return None
    mapping = DataMapping.empty()
    if spec.get("field"):
        ref = FieldRef.parse(spec["field"])
        if ref.aggregate not in AGGREGATES:
            bad(f"view {label}: channel {name!r} has a bad aggregate")
            return None
        if dataset is not None and ref.column != "*" \
                and not dataset.has_column(ref.column):
            bad(f"view {label}: channel {name!r} references unknown "
                f"column {ref.column!r}")
            return None
        mapping = DataMapping.mapped(ref)
    domain = None
    if "domain" in spec:
        domain = _parse_domain(spec["domain"], label, name, bad)
        if domain is None:
            return None
    visual = None
    if cls not in _POSITIONAL:
        visual = _parse_visual(spec.get("visual"), label, name, bad)
        if visual is None:
            return None
    return ChannelBinding(raw_channel=name, cls=cls, mapping=mapping,
                          domain=domain, visual=visual)


def _parse_domain(raw, label, name, bad):
    if isinstance(raw, dict) and "min" in raw and "max" in raw:
        try:
            return QuantitativeDomain(float(raw["min"]), float(raw["max"]))
        except (TypeError, ValueError):
            pass
    if isinstance(raw, dict) and isinstance(raw.get("values"), list):
        try:
            return CategoricalDomain(tuple(raw["values"]))
        except ValueError:
            pass
    bad(f"view {label}: channel {name!r} has a malformed domain")
    return None


def _parse_visual(raw, label, name, bad):
    try:
        if isinstance(raw, dict) and "constant" in raw:
            return ConstantColor(raw["constant"])
        if isinstance(raw, dict) and "scheme" in raw:
            s = raw["scheme"]
            return ColorScheme(
                scheme_id=s["id"], kind=s["kind"],
                assignment=tuple((k, v) for k, v in s["assignment"]))
        if isinstance(raw, dict) and "sizeRange" in raw:
            lo, hi = raw["sizeRange"]
            return SizeRange(float(lo), float(hi))
    except (KeyError, TypeError, ValueError):
        pass
    bad(f"view {label}: channel {name!r} needs a visual output "
        f"(constant, scheme, or sizeRange)")
    return None


def _assign_cells(views: list) -> list:
    out = []
    auto = 0
    for v in views:
        if v.cell == Cell(-1, -1):
            cell = Cell(row=auto // GRID_WIDTH, col=auto % GRID_WIDTH)
            auto += 1
            out.append(View(id=v.id, chart_type=v.chart_type,
                            grouping=v.grouping, bindings=v.bindings,
                            composition=v.composition, series=v.series,
                            cell=cell))
        else:
            out.append(v)
    return out


def _finish_view(view: View, dataset: Dataset, bad) -> View:
    """Fill missing domains from the data and derive positional visuals."""
    finished = view
    for b in view.bindings:
        domain, visual = b.domain, b.visual
        if domain is None and not b.mapping.is_empty:
            try:
                domain = compute_domain(dataset, view, b)
            except Exception as exc:
                bad(f"view {view.id!r}: channel {b.raw_channel!r}: {exc}")
                continue
        if b.cls in _POSITIONAL:
            if domain is None:
                bad(f"view {view.id!r}: positional channel "
                    f"{b.raw_channel!r} needs a field or a domain")
                continue
            visual = _position_visual(domain)
        nb = ChannelBinding(raw_channel=b.raw_channel, cls=b.cls,
                            mapping=b.mapping, domain=domain, visual=visual)
        finished = finished.with_binding(nb)
    return finished


# --- serialization -----------------------------------------------------------

def serialize_canvas(canvas: Canvas) -> str:
    """Deterministic document text: fixed key order, 2-space indent."""
    doc = {
        "version": DOCUMENT_VERSION,
        "dataset": {
            "source": canvas.dataset.name,
            "columns": [{"name": c.name, "type": c.type}
                        for c in canvas.dataset.columns],
        },
        "equivalences": [
            {"a": c.a, "b": c.b, "status": c.status}
            for c in sorted(canvas.registry.confirmations,
                            key=lambda c: (c.a, c.b))
        ],
        "views": [_view_doc(v) for v in canvas.views],
    }
    return json.dumps(doc, indent=2) + "\n"


def _view_doc(view: View) -> dict:
    channels = {}
    for b in view.bindings:
        spec: dict = {}
        if not b.mapping.is_empty:
            spec["field"] = b.mapping.field.canonical()
        if b.domain is not None:
            spec["domain"] = _domain_doc(b.domain)
        if b.cls not in _POSITIONAL and b.visual is not None:
            spec["visual"] = _visual_doc(b.visual)
        channels[b.raw_channel] = spec
    doc = {
        "id": view.id,
        "chart": view.chart_type,
        "grouping": view.grouping,
        "composition": view.composition,
        "cell": {"row": view.cell.row, "col": view.cell.col,
                 "rowSpan": view.cell.row_span, "colSpan": view.cell.col_span},
        "channels": channels,
    }
    if view.series:
        doc["series"] = [{"label": s.label, "field": s.y_field.canonical(),
                          "color": s.color.hex} for s in view.series]
    return doc


def _domain_doc(domain) -> dict:
    if isinstance(domain, QuantitativeDomain):
        return {"min": domain.min, "max": domain.max}
    return {"values": list(domain.values)}


def _visual_doc(visual) -> dict:
    if isinstance(visual, ConstantColor):
        return {"constant": visual.hex}
    if isinstance(visual, ColorScheme):
        return {"scheme": {"id": visual.scheme_id, "kind": visual.kind,
                           "assignment": [[k, v]
                                          for k, v in visual.assignment]}}
    return {"sizeRange": [visual.min, visual.max]}


# --- lint report -------------------------------------------------------------

_MESSAGES = {
    "R1": "full redundancy: the views show the same data on every channel",
    "R2": "partial redundancy: one view shows a subset of the other",
    "R3a": "multiples: same grouping showing different data",
    "R3b": "multiples: different groupings showing the same data over "
           "different domains",
    "R4": "hallucinator: the same data is shown in different ways",
    "R5": "confuser: different data is shown the same way",
}

_SUGGESTED = {
    "R1": ["delete"],
    "R2": ["delete", "integrate: transfer"],
    "R3a": ["homogenize data", "integrate"],
    "R3b": ["homogenize data"],
    "R4": ["homogenize style"],
    "R5": ["differentiate"],
}


def _report_entries(relation_set) -> list:
    from .operations import QUESTION_TEMPLATE
    entries = []
    for inst in sorted(relation_set.instances,
                       key=lambda r: (r.kind.code, r.view_ids)):
        channel = inst.witnesses[0].channel_class.value
        message = _MESSAGES[inst.kind.code]
        question = None
        if inst.conditional and inst.pending_confirmations:
            a, b = inst.pending_confirmations[0]
            question = QUESTION_TEMPLATE.format(a=a, b=b)
        entries.append({
            "code": inst.kind.code,
            "viewIds": list(inst.view_ids),
            "channel": channel,
            "message": message,
            "conditional": inst.conditional,
            "question": question,
            "suggestedOperations": _SUGGESTED[inst.kind.code],
        })
    return entries


def format_lint_report(relation_set, style: str = "text") -> str:
    entries = _report_entries(relation_set)
    if style == "json":
        return json.dumps({"entries": entries}, indent=2) + "\n"
    if not entries:
        return "no relations found\n"
    lines = []
    for e in entries:
        suffix = " (needs confirmation)" if e["conditional"] else ""
        lines.append(f"{e['code']} [{e['viewIds'][0]},{e['viewIds'][1]}] "
                     f"{e['channel']}: {e['message']}{suffix}")
    return "\n".join(lines) + "\n"
