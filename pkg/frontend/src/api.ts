/** Typed client for the knotverify HTTP API. */

export interface PolygonJson {
  closed: boolean;
  control_points: number[][];
}

export interface SessionSummary {
  id: string;
  version: number;
  rounds: number;
  closed: boolean;
  original_vertex_count: number;
  control_point_count: number;
  degree: number;
  polygon_simple: boolean;
  arc?: { alpha: number; radius_start: number; radius_end: number };
  sweep?: SweepReport;
}

export interface SweepReport {
  steps: number;
  min_distance: number;
  certified: boolean;
  lipschitz_bound: number;
  theta_step: number;
  alpha: number;
}

export interface AlexanderJson {
  base_exp: number;
  coeffs: number[];
}

export interface CrossingJson {
  t1: number;
  t2: number;
  point2d: [number, number];
  p3d_1: [number, number, number];
  p3d_2: [number, number, number];
  residual: number;
}

export interface AnalysisReportJson {
  curve_id: string;
  crossings: CrossingJson[];
  gauss_code: string;
  alexander: AlexanderJson | null;
  alexander_coeffs: string | null;
  verdict: string;
  polygon_simple: boolean;
  sweep: SweepReport | null;
  oracle_crossing_count: number | null;
  oracle_agrees: boolean | null;
  notes: string[];
  tolerances: Record<string, number>;
}

export interface CrossingAnnotation {
  id: number;
  point: [number, number];
  t_first: number;
  t_second: number;
  over_is_first: boolean;
  z_first: number;
  z_second: number;
}

export interface RenderPayload {
  curve2d: [number, number][];
  curve3d: [number, number, number][];
  polygon: PolygonJson;
  original_polygon: PolygonJson;
  crossings: CrossingAnnotation[];
  samples: number;
  verdict: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`API error ${status}: ${JSON.stringify(detail)}`);
  }
}

/** Injected by tests to intercept and reorder traffic. */
export interface Transport {
  request(method: string, path: string, body?: unknown): Promise<unknown>;
}

export const fetchTransport = (baseUrl: string): Transport => ({
  async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const response = await fetch(baseUrl + path, {
      method,
      headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      throw new ApiError(response.status, (payload as { detail?: unknown })?.detail ?? payload);
    }
    return payload;
  },
});

export class KnotApi {
  constructor(private readonly transport: Transport) {}

  async createCurve(polygon: PolygonJson, rounds: number): Promise<string> {
    const out = (await this.transport.request("POST", "/api/curves", { polygon, rounds })) as {
      id: string;
    };
    return out.id;
  }

  summary(id: string): Promise<SessionSummary> {
    return this.transport.request("GET", `/api/curves/${id}`) as Promise<SessionSummary>;
  }

  moveVertex(
    id: string,
    vertexIndex: number,
    position: [number, number, number],
    sweep: boolean,
  ): Promise<SessionSummary> {
    return this.transport.request("POST", `/api/curves/${id}/vertex`, {
      original_vertex_index: vertexIndex,
      position,
      sweep,
    }) as Promise<SessionSummary>;
  }

  analysis(id: string): Promise<AnalysisReportJson> {
    return this.transport.request("GET", `/api/curves/${id}/analysis`) as Promise<AnalysisReportJson>;
  }

  render(id: string, samples: number): Promise<RenderPayload> {
    return this.transport.request("GET", `/api/curves/${id}/render?samples=${samples}`) as Promise<RenderPayload>;
  }
}
