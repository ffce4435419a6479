/** Typed client for the lk design service. */

export type EdgeRef = [number, number];

export interface LkmDocument {
  vertices: number[][];
  faces: number[][];
  twists: { edge: EdgeRef; t: number }[];
  null_sides: { face: number; edge: EdgeRef; occurrence: number }[];
  revision?: number;
}

export interface StrandsDocument {
  components: { kind: "cycle" | "path"; slots: [number, number][]; length: number }[];
  count: number;
  revision: number;
}

export interface GeometryDocument {
  components: { id: number; closed: boolean; points: number[][] }[];
  revision: number;
}

export interface ReportDocument {
  count: number;
  components: { id: number; kind: string; length: number }[];
  closed_component_ids: number[];
  linking_matrix: number[][] | null;
  warnings: string[];
  revision: number;
}

export interface LabelEdit {
  edge: EdgeRef;
  t: number;
}

export interface NullEdit {
  face: number;
  edge: EdgeRef;
  occurrence?: number;
  null?: boolean;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const message = (body as { error?: string }).error ?? response.statusText;
    throw new ApiError(response.status, message);
  }
  return body as T;
}

export class Client {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async createSession(lkm: object): Promise<{ session: string; revision: number }> {
    const response = await fetch(this.url("/session"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ lkm }),
    });
    return asJson(response);
  }

  async getMesh(session: string): Promise<LkmDocument> {
    return asJson(await fetch(this.url(`/session/${session}/mesh`)));
  }

  async patchLabels(
    session: string,
    edits: LabelEdit[],
    nulls: NullEdit[] = [],
  ): Promise<{ revision: number }> {
    const response = await fetch(this.url(`/session/${session}/labels`), {
      method: "PATCH",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ edits, nulls }),
    });
    return asJson(response);
  }

  async getStrands(session: string, rev?: number): Promise<StrandsDocument> {
    const q = rev === undefined ? "" : `?rev=${rev}`;
    return asJson(await fetch(this.url(`/session/${session}/strands${q}`)));
  }

  async getGeometry(
    session: string,
    rev?: number,
    params?: { inset?: number; radius?: number },
  ): Promise<GeometryDocument> {
    const query = new URLSearchParams();
    if (rev !== undefined) query.set("rev", String(rev));
    if (params?.inset !== undefined) query.set("inset", String(params.inset));
    if (params?.radius !== undefined) query.set("radius", String(params.radius));
    const q = query.toString() ? `?${query}` : "";
    return asJson(await fetch(this.url(`/session/${session}/geometry${q}`)));
  }

  async getReport(session: string, rev?: number): Promise<ReportDocument> {
    const q = rev === undefined ? "" : `?rev=${rev}`;
    return asJson(await fetch(this.url(`/session/${session}/report${q}`)));
  }
}
