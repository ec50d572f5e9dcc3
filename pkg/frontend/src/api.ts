/** Thin typed client for the rollcall HTTP API.
 *
 * Every call goes through the server; the client holds no state beyond
 * the bearer token. Errors carry the server's machine code and, for
 * validation failures, the offending field name.
 */

import type { CropBox } from "./autocrop.js";

export type RecordKind = "employees" | "students";

export interface ValidationMeta {
  text_bounds: Record<string, number>;
  blood_groups: string[];
  semester_range: [number, number];
  fields: Record<RecordKind, string[]>;
  optional_fields: string[];
  max_photo_bytes: number;
}

export interface ListPage {
  items: Record<string, unknown>[];
  total: number;
  page: number;
  limit: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
    public field?: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function raiseFor(resp: Response): Promise<Response> {
  if (resp.ok) return resp;
  let code = "http_error";
  let detail = resp.statusText;
  let field: string | undefined;
  try {
    const body = await resp.json();
    code = body.code ?? code;
    detail = body.detail ?? detail;
    field = body.field;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(resp.status, code, detail, field);
}

export class ApiClient {
  private token: string | null = null;

  constructor(public baseUrl: string = "") {}

  private headers(extra: Record<string, string> = {}): Record<string, string> {
    const h: Record<string, string> = { ...extra };
    if (this.token) h["Authorization"] = `Bearer ${this.token}`;
    return h;
  }

  async login(user: string, password: string): Promise<void> {
    const resp = await raiseFor(
      await fetch(`${this.baseUrl}/api/login`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ user, password }),
      }),
    );
    this.token = (await resp.json()).token;
  }

  get authenticated(): boolean {
    return this.token !== null;
  }

  async health(): Promise<{ status: string; schema_version: number }> {
    const resp = await raiseFor(await fetch(`${this.baseUrl}/healthz`));
    return resp.json();
  }

  async validationMeta(): Promise<ValidationMeta> {
    const resp = await raiseFor(
      await fetch(`${this.baseUrl}/api/meta/validation`, { headers: this.headers() }),
    );
    return resp.json();
  }

  async autocropEcho(w: number, h: number, aspectW = 3, aspectH = 4): Promise<CropBox> {
    const q = `w=${w}&h=${h}&aspect_w=${aspectW}&aspect_h=${aspectH}`;
    const resp = await raiseFor(
      await fetch(`${this.baseUrl}/api/meta/autocrop?${q}`, { headers: this.headers() }),
    );
    return resp.json();
  }

  async createRecord(kind: RecordKind, body: Record<string, unknown>): Promise<void> {
    await raiseFor(
      await fetch(`${this.baseUrl}/api/${kind}`, {
        method: "POST",
        headers: this.headers({ "Content-Type": "application/json" }),
        body: JSON.stringify(body),
      }),
    );
  }

  async getRecord(kind: RecordKind, id: number): Promise<Record<string, unknown>> {
    const resp = await raiseFor(
      await fetch(`${this.baseUrl}/api/${kind}/${id}`, { headers: this.headers() }),
    );
    return resp.json();
  }

  async updateRecord(
    kind: RecordKind,
    id: number,
    body: Record<string, unknown>,
  ): Promise<void> {
    await raiseFor(
      await fetch(`${this.baseUrl}/api/${kind}/${id}`, {
        method: "PUT",
        headers: this.headers({ "Content-Type": "application/json" }),
        body: JSON.stringify(body),
      }),
    );
  }

  async deleteRecord(kind: RecordKind, id: number): Promise<void> {
    await raiseFor(
      await fetch(`${this.baseUrl}/api/${kind}/${id}`, {
        method: "DELETE",
        headers: this.headers(),
      }),
    );
  }

  async listRecords(
    kind: RecordKind,
    opts: { page?: number; limit?: number; filters?: Record<string, string> } = {},
  ): Promise<ListPage> {
    const params = new URLSearchParams(opts.filters ?? {});
    params.set("page", String(opts.page ?? 1));
    params.set("limit", String(opts.limit ?? 20));
    const resp = await raiseFor(
      await fetch(`${this.baseUrl}/api/${kind}?${params}`, { headers: this.headers() }),
    );
    return resp.json();
  }

  async uploadPhoto(
    kind: RecordKind,
    id: number,
    bytes: Blob | ArrayBuffer,
    box?: CropBox,
  ): Promise<{ width: number; height: number }> {
    let url = `${this.baseUrl}/api/${kind}/${id}/photo`;
    if (box) {
      url += `?box_x=${box.x}&box_y=${box.y}&box_w=${box.width}&box_h=${box.height}`;
    }
    const resp = await raiseFor(
      await fetch(url, {
        method: "PUT",
        headers: this.headers({ "Content-Type": "application/octet-stream" }),
        body: bytes,
      }),
    );
    return resp.json();
  }

  async fetchPhoto(kind: RecordKind, id: number): Promise<ArrayBuffer> {
    const resp = await raiseFor(
      await fetch(`${this.baseUrl}/api/${kind}/${id}/photo`, { headers: this.headers() }),
    );
    return resp.arrayBuffer();
  }

  async fetchIdCard(kind: RecordKind, id: number): Promise<ArrayBuffer> {
    const resp = await raiseFor(
      await fetch(`${this.baseUrl}/api/${kind}/${id}/idcard.png`, {
        headers: this.headers(),
      }),
    );
    return resp.arrayBuffer();
  }
}
