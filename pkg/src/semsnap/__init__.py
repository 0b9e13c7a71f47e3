"""semsnap: lint multi-view visualization canvases for inter-view
inconsistencies and rewrite them with guided operations."""

from .config import Config, load_config
from .model import Canvas, View
from .operations import (
    CanvasHistory,
    OperationPlan,
    SemanticPosition,
    apply_operation,
    plan_operations,
    semantic_position,
)
from .relations import RelationSet, find_relations
from .render import RenderSpec, render_canvas, render_view
from .specio import format_lint_report, parse_canvas, serialize_canvas

__version__ = "0.1.0"

__all__ = [
    "Canvas",
    "CanvasHistory",
    "Config",
    "OperationPlan",
    "RelationSet",
    "RenderSpec",
    "SemanticPosition",
    "View",
    "apply_operation",
    "find_relations",
    "format_lint_report",
    "load_config",
    "parse_canvas",
    "plan_operations",
    "render_canvas",
    "render_view",
    "semantic_position",
    "serialize_canvas",
    "__version__",
]
