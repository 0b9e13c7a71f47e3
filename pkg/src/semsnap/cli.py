"""Command line entry point: lint, ops, apply, render, serve.

Plans are content-addressed, so `ops` and `apply` compose across separate
invocations as long as the canvas file is unchanged. The input file is never
mutated; rewritten documents go to -o.
"""
from __future__ import annotations

import json
import os
import sys

import click

from .config import load_config
from .errors import (
    ConfirmationDenied,
    MissingConfirmation,
    SemSnapError,
    StalePlan,
    UnknownView,
)
from .operations import apply_operation, plan_operations, semantic_position
from .relations import find_relations
from .render import render_canvas
from .specio import format_lint_report, parse_canvas, serialize_canvas

EXIT_CLEAN = 0
EXIT_RELATIONS = 1
EXIT_USAGE = 2
EXIT_APPLY = 3


def _fail(code: int, message: str):
    click.echo(message, err=True)
    sys.exit(code)


def _load(path: str, quiet: bool):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(EXIT_USAGE, f"cannot read {path}: {exc}")
    try:
        return parse_canvas(text, base_path=os.path.dirname(path) or ".")
    except SemSnapError as exc:
        _fail(EXIT_USAGE, f"invalid canvas: {exc}")


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="Config file (weights, palette); SEMSNAP_CONFIG works too.")
@click.option("--quiet", is_flag=True, default=False)
@click.pass_context
def main(ctx, config_path, quiet):
    """Lint multi-view canvases and rewrite them toward consistency."""
    ctx.ensure_object(dict)
    try:
        ctx.obj["config"] = load_config(config_path)
    except (OSError, ValueError, KeyError) as exc:
        _fail(EXIT_USAGE, f"bad config: {exc}")
    ctx.obj["quiet"] = quiet


@main.command("lint")
@click.argument("canvas_path", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--fail-on-conditional", is_flag=True, default=False)
@click.pass_context
def cmd_lint(ctx, canvas_path, fmt, fail_on_conditional):
    """Report inter-view relations; exit 1 when any are found."""
    canvas = _load(canvas_path, ctx.obj["quiet"])
    relations = find_relations(canvas)
    if not ctx.obj["quiet"]:
        click.echo(format_lint_report(relations, style=fmt), nl=False)
    firm = [r for r in relations.instances if not r.conditional]
    dirty = relations.instances if fail_on_conditional else firm
    sys.exit(EXIT_RELATIONS if dirty else EXIT_CLEAN)


@main.command("ops")
@click.argument("canvas_path", type=click.Path())
@click.option("--view", "view_id", required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.pass_context
def cmd_ops(ctx, canvas_path, view_id, fmt):
    """List the operation plans available from one view."""
    canvas = _load(canvas_path, ctx.obj["quiet"])
    relations = find_relations(canvas)
    try:
        plans = plan_operations(canvas, relations, view_id,
                                ctx.obj["config"])
    except UnknownView as exc:
        _fail(EXIT_USAGE, str(exc))
    if fmt == "json":
        click.echo(json.dumps({"plans": [_plan_doc(p) for p in plans]},
                              indent=2))
        sys.exit(EXIT_CLEAN)
    for p in plans:
        click.echo(f"{p.id}  [{p.kind.label}]  {p.description}")
        if p.question:
            click.echo(f"    ? {p.question}")
    sys.exit(EXIT_CLEAN)


def _plan_doc(plan) -> dict:
    return {
        "id": plan.id,
        "kind": plan.kind.label,
        "category": plan.category,
        "targetViewIds": list(plan.target_view_ids),
        "sourceViewId": plan.source_view_id,
        "resolvesRelationId": plan.resolves_relation_id,
        "params": dict(plan.params),
        "requiredConfirmations": [list(pair)
                                  for pair in plan.required_confirmations],
        "description": plan.description,
        "question": plan.question,
    }


def _parse_confirm(raw: str):
    # "sum(Europe)=sum(North America):same"
    body, _, answer = raw.rpartition(":")
    if answer not in ("same", "different") or "=" not in body:
        _fail(EXIT_USAGE,
              f"bad --confirm {raw!r}; expected 'a=b:same|different'")
    a, _, b = body.partition("=")
    return (a.strip(), b.strip()), answer


@main.command("apply")
@click.argument("canvas_path", type=click.Path())
@click.option("--op", "plan_id", required=True)
@click.option("--confirm", "confirms", multiple=True,
              help="Answer a confirmation: 'a=b:same|different'.")
@click.option("-o", "out_path", required=True, type=click.Path())
@click.pass_context
def cmd_apply(ctx, canvas_path, plan_id, confirms, out_path):
    """Apply a plan from `ops` and write the rewritten document."""
    canvas = _load(canvas_path, ctx.obj["quiet"])
    relations = find_relations(canvas)
    answers = dict(_parse_confirm(c) for c in confirms)
    plan = None
    for view in canvas.views:
        for p in plan_operations(canvas, relations, view.id,
                                 ctx.obj["config"]):
            if p.id == plan_id:
                plan = p
                break
        if plan:
            break
    if plan is None:
        _fail(EXIT_APPLY, f"no plan {plan_id!r} on this canvas (stale?)")
    try:
        result = apply_operation(canvas, plan, answers, ctx.obj["config"])
    except (StalePlan, MissingConfirmation, ConfirmationDenied) as exc:
        _fail(EXIT_APPLY, str(exc))
    except SemSnapError as exc:
        _fail(EXIT_APPLY, str(exc))
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(serialize_canvas(result))
    except OSError as exc:
        _fail(EXIT_USAGE, f"cannot write {out_path}: {exc}")
    if not ctx.obj["quiet"]:
        position = semantic_position(find_relations(result),
                                     ctx.obj["config"].weights)
        click.echo(f"applied {plan.kind.label}; position "
                   f"({position.compactness:g}, {position.consistency:g})")
    sys.exit(EXIT_CLEAN)


@main.command("render")
@click.argument("canvas_path", type=click.Path())
@click.option("-o", "out_dir", required=True, type=click.Path())
@click.pass_context
def cmd_render(ctx, canvas_path, out_dir):
    """Write one RenderSpec JSON per view plus an index with grid cells."""
    canvas = _load(canvas_path, ctx.obj["quiet"])
    try:
        entries = render_canvas(canvas)
    except SemSnapError as exc:
        _fail(EXIT_USAGE, str(exc))
    os.makedirs(out_dir, exist_ok=True)
    index = []
    for spec, cell in entries:
        name = f"{spec.view_id}.render.json"
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
            json.dump(spec.to_doc(), fh, indent=2)
            fh.write("\n")
        index.append({"viewId": spec.view_id, "file": name,
                      "cell": {"row": cell.row, "col": cell.col,
                               "rowSpan": cell.row_span,
                               "colSpan": cell.col_span}})
    with open(os.path.join(out_dir, "index.json"), "w",
              encoding="utf-8") as fh:
        json.dump({"views": index}, fh, indent=2)
        fh.write("\n")
    sys.exit(EXIT_CLEAN)


@main.command("serve")
@click.argument("canvas_path", type=click.Path())
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.pass_context
def cmd_serve(ctx, canvas_path, port, host):
    """Host the interactive session for this canvas."""
    import uvicorn

    from .service import create_app

    canvas = _load(canvas_path, ctx.obj["quiet"])
    app = create_app(canvas, config=ctx.obj["config"],
                     canvas_path=canvas_path)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        _fail(EXIT_USAGE, f"cannot serve: {exc}")
    sys.exit(EXIT_CLEAN)


if __name__ == "__main__":
    main()
