import type {
  CanvasDoc,
  MutationResponse,
  OperationsPayload,
  PositionPayload,
  RelationsPayload,
  RenderPayload,
  Snapshot,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public error: string,
    public detail: string,
  ) {
    super(`${error}: ${detail}`);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, init);
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, body.error ?? "Error",
      body.detail ?? response.statusText);
  }
  return body as T;
}

function post<T>(path: string, body?: unknown): Promise<T> {
  return request<T>(path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body ?? {}),
  });
}

export class ApiClient {
  canvas(): Promise<CanvasDoc> {
    return request("/api/canvas");
  }

  relations(): Promise<RelationsPayload> {
    return request("/api/relations");
  }

  render(): Promise<RenderPayload> {
    return request("/api/render");
  }

  position(): Promise<PositionPayload> {
    return request("/api/position");
  }

  operations(viewId: string): Promise<OperationsPayload> {
    return request(`/api/views/${encodeURIComponent(viewId)}/operations`);
  }

  apply(planId: string,
        confirmations: Record<string, "same" | "different"> = {},
  ): Promise<MutationResponse> {
    return post(`/api/operations/${encodeURIComponent(planId)}/apply`,
      { confirmations });
  }

  undo(): Promise<MutationResponse> {
    return post("/api/history/undo");
  }

  keep(): Promise<MutationResponse> {
    return post("/api/history/keep");
  }

  recordEquivalence(a: string, b: string, same: boolean):
      Promise<{ canvas: CanvasDoc; relations: RelationsPayload }> {
    return post("/api/equivalences", { a, b, same });
  }

  save(): Promise<{ saved: string }> {
    return request("/api/canvas", { method: "PUT" });
  }

  async snapshot(viewIds: string[]): Promise<Snapshot> {
    const [canvas, relations, render, position] = await Promise.all([
      this.canvas(), this.relations(), this.render(), this.position(),
    ]);
    const views: Snapshot["views"] = {};
    for (const id of viewIds) views[id] = await this.operations(id);
    return { canvas, relations, render, position, views };
  }
}
