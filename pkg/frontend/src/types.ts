/** Shapes of the service JSON payloads the UI consumes. */

export interface PlanDoc {
  id: string;
  kind: string;
  category: string;
  targetViewIds: string[];
  sourceViewId: string | null;
  resolvesRelationId: string;
  params: Record<string, unknown>;
  requiredConfirmations: [string, string][];
  description: string;
  question: string | null;
}

export interface OperationsPayload {
  viewId: string;
  counts: Record<string, number>;
  plans: PlanDoc[];
}

export interface RelationEntry {
  code: string;
  viewIds: string[];
  channel: string;
  message: string;
  conditional: boolean;
  question: string | null;
  suggestedOperations: string[];
}

export interface RelationsPayload {
  entries: RelationEntry[];
}

export interface AxisDoc {
  title: string;
  domain: { min: number; max: number } | { values: (string | number)[] };
  kind: "quantitative" | "categorical" | "temporal";
}

export interface SeriesMarkDoc {
  label: string;
  points: [string | number, number][];
  color: string;
}

export interface RenderSpecDoc {
  viewId: string;
  markType: "bar" | "line" | "point" | "area" | "stream" | "arc";
  seriesMarks: SeriesMarkDoc[];
  axes: { x: AxisDoc | null; y: AxisDoc | null };
  legend: [string, string][];
  mirror: boolean;
}

export interface CellDoc {
  row: number;
  col: number;
  rowSpan: number;
  colSpan: number;
}

export interface RenderPayload {
  views: { spec: RenderSpecDoc; cell: CellDoc }[];
}

export interface PositionDoc {
  compactness: number;
  consistency: number;
}

export interface PositionPayload {
  current: PositionDoc;
  trail: PositionDoc[];
}

/** The canvas document; the UI treats it as opaque except for view ids. */
export interface CanvasDoc {
  version: number;
  dataset: unknown;
  equivalences: unknown[];
  views: { id: string; [key: string]: unknown }[];
}

export interface MutationResponse {
  applied?: boolean;
  detail?: string;
  canvas: CanvasDoc;
  relations: RelationsPayload;
  position: PositionDoc;
  pending: boolean;
}

export interface ErrorPayload {
  error: string;
  detail: string;
}

/** One full read of the session, as fetched after any mutation. */
export interface Snapshot {
  canvas: CanvasDoc;
  relations: RelationsPayload;
  render: RenderPayload;
  position: PositionPayload;
  views: Record<string, OperationsPayload>;
}
