/** Typed client for the session service HTTP/WebSocket API. */

export interface AngleDoc {
  rational: string;
  float: number;
  display: string;
}

export interface VertexRow {
  index: number;
  kind: "interior" | "boundary";
  config: number[];
  angle_sum: AngleDoc;
  defect?: AngleDoc;
  excess?: AngleDoc;
  turning?: AngleDoc;
}

export interface Report {
  counts: { vertices: number; edges: number; faces: number };
  euler_characteristic: number;
  closed: boolean;
  orientable: boolean;
  genus: number | null;
  total_defect: AngleDoc;
  descartes: "holds" | "fails" | "not-closed";
  boundary_loops: { slots: [number, number][]; total_turning: AngleDoc }[];
  vertices: VertexRow[];
}

export interface Frame {
  positions: [number, number, number][];
  springs: [number, number, number][];
  faces: { id: number; sides: number; nodes: number[] }[];
}

export interface LiveEvent {
  event: string;
  report: Report;
  frame: Frame | null;
}

export interface RelaxStats {
  status: string;
  iterations: number;
  final_energy: number;
  max_edge_residual: number;
  gradient_norm: number;
  converged: boolean;
}

export class ServiceError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

async function unwrap<T>(resp: Response): Promise<T> {
  const body = (await resp.json()) as Record<string, unknown>;
  if (!resp.ok || body["status"] === "error") {
    throw new ServiceError(
      String(body["code"] ?? "error"),
      String(body["message"] ?? resp.statusText),
      resp.status,
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async post<T>(path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchFn(`${this.base}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return unwrap<T>(resp);
  }

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(`${this.base}${path}`);
    return unwrap<T>(resp);
  }

  async createSession(): Promise<string> {
    const body = await this.post<{ id: string }>("/sessions");
    return body.id;
  }

  async addFace(
    sid: string,
    sides: number,
    edgeLength = "1",
  ): Promise<{ face: number; report: Report }> {
    return this.post(`/sessions/${sid}/faces`, {
      sides,
      edge_length: edgeLength,
    });
  }

  async glue(
    sid: string,
    a: [number, number],
    b: [number, number],
    flip = false,
  ): Promise<{ report: Report }> {
    return this.post(`/sessions/${sid}/glue`, { a, b, flip });
  }

  async undo(sid: string): Promise<{ report: Report }> {
    return this.post(`/sessions/${sid}/undo`);
  }

  async report(sid: string): Promise<Report> {
    const body = await this.get<{ report: Report }>(`/sessions/${sid}/report`);
    return body.report;
  }

  async spec(sid: string): Promise<string> {
    const body = await this.get<{ spec: string }>(`/sessions/${sid}/spec`);
    return body.spec;
  }

  async loadSpec(sid: string, spec: string): Promise<{ report: Report }> {
    return this.post(`/sessions/${sid}/spec`, { spec });
  }

  async relax(
    sid: string,
    iters = 2000,
    tol = 1e-8,
    seed = 0,
  ): Promise<RelaxStats> {
    return this.post(`/sessions/${sid}/relax`, { iters, tol, seed });
  }

  async embedding(sid: string): Promise<Frame | null> {
    const body = await this.get<{ frame: Frame | null }>(
      `/sessions/${sid}/embedding`,
    );
    return body.frame;
  }

  liveUrl(sid: string): string {
    return `${this.base.replace(/^http/, "ws")}/sessions/${sid}/live`;
  }
}
