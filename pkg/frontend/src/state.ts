import type {
  CanvasDoc,
  MutationResponse,
  PositionPayload,
  RelationsPayload,
  RenderPayload,
  Snapshot,
} from "./types.js";

/** The whole screen is a pure function of this state, which in turn is a
 * pure function of the last service responses. */
export interface AppState {
  canvas: CanvasDoc;
  relations: RelationsPayload;
  render: RenderPayload;
  position: PositionPayload;
  pending: boolean;
  selectedViewId: string | null;
  busy: boolean;
}

export function initialState(snapshot: Snapshot): AppState {
  return {
    canvas: snapshot.canvas,
    relations: snapshot.relations,
    render: snapshot.render,
    position: snapshot.position,
    pending: false,
    selectedViewId: null,
    busy: false,
  };
}

/** Fold a mutation response (apply / undo / keep) plus the re-fetched render
 * and position into the state. */
export function applyMutation(
  state: AppState,
  response: MutationResponse,
  render: RenderPayload,
  position: PositionPayload,
): AppState {
  return {
    ...state,
    canvas: response.canvas,
    relations: response.relations,
    render,
    position,
    pending: response.pending,
    busy: false,
  };
}

export function selectView(state: AppState, viewId: string | null): AppState {
  return { ...state, selectedViewId: viewId };
}

export function setBusy(state: AppState, busy: boolean): AppState {
  return { ...state, busy };
}
