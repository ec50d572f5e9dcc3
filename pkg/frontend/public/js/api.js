/** Thin typed client for the rollcall HTTP API.
 *
 * Every call goes through the server; the client holds no state beyond
 * the bearer token. Errors carry the server's machine code and, for
 * validation failures, the offending field name.
 */
export class ApiError extends Error {
    constructor(status, code, detail, field) {
        super(`${code}: ${detail}`);
        this.status = status;
        this.code = code;
        this.detail = detail;
        this.field = field;
    }
}
async function raiseFor(resp) {
    if (resp.ok)
        return resp;
    let code = "http_error";
    let detail = resp.statusText;
    let field;
    try {
        const body = await resp.json();
        code = body.code ?? code;
        detail = body.detail ?? detail;
        field = body.field;
    }
    catch {
        // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, code, detail, field);
}
export class ApiClient {
    constructor(baseUrl = "") {
        this.baseUrl = baseUrl;
        this.token = null;
    }
    headers(extra = {}) {
        const h = { ...extra };
        if (this.token)
            h["Authorization"] = `Bearer ${this.token}`;
        return h;
    }
    async login(user, password) {
        const resp = await raiseFor(await fetch(`${this.baseUrl}/api/login`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ user, password }),
        }));
        this.token = (await resp.json()).token;
    }
    get authenticated() {
        return this.token !== null;
    }
    async health() {
        const resp = await raiseFor(await fetch(`${this.baseUrl}/healthz`));
        return resp.json();
    }
    async validationMeta() {
        const resp = await raiseFor(await fetch(`${this.baseUrl}/api/meta/validation`, { headers: this.headers() }));
        return resp.json();
    }
    async autocropEcho(w, h, aspectW = 3, aspectH = 4) {
        const q = `w=${w}&h=${h}&aspect_w=${aspectW}&aspect_h=${aspectH}`;
        const resp = await raiseFor(await fetch(`${this.baseUrl}/api/meta/autocrop?${q}`, { headers: this.headers() }));
        return resp.json();
    }
    async createRecord(kind, body) {
        await raiseFor(await fetch(`${this.baseUrl}/api/${kind}`, {
            method: "POST",
            headers: this.headers({ "Content-Type": "application/json" }),
            body: JSON.stringify(body),
        }));
    }
    async getRecord(kind, id) {
        const resp = await raiseFor(await fetch(`${this.baseUrl}/api/${kind}/${id}`, { headers: this.headers() }));
        return resp.json();
    }
    async updateRecord(kind, id, body) {
        await raiseFor(await fetch(`${this.baseUrl}/api/${kind}/${id}`, {
            method: "PUT",
            headers: this.headers({ "Content-Type": "application/json" }),
            body: JSON.stringify(body),
        }));
    }
    async deleteRecord(kind, id) {
        await raiseFor(await fetch(`${this.baseUrl}/api/${kind}/${id}`, {
            method: "DELETE",
            headers: this.headers(),
        }));
    }
    async listRecords(kind, opts = {}) {
        const params = new URLSearchParams(opts.filters ?? {});
        params.set("page", String(opts.page ?? 1));
        params.set("limit", String(opts.limit ?? 20));
        const resp = await raiseFor(await fetch(`${this.baseUrl}/api/${kind}?${params}`, { headers: this.headers() }));
        return resp.json();
    }
    async uploadPhoto(kind, id, bytes, box) {
        let url = `${this.baseUrl}/api/${kind}/${id}/photo`;
        if (box) {
            url += `?box_x=${box.x}&box_y=${box.y}&box_w=${box.width}&box_h=${box.height}`;
        }
        const resp = await raiseFor(await fetch(url, {
            method: "PUT",
            headers: this.headers({ "Content-Type": "application/octet-stream" }),
            body: bytes,
        }));
        return resp.json();
    }
    async fetchPhoto(kind, id) {
        const resp = await raiseFor(await fetch(`${this.baseUrl}/api/${kind}/${id}/photo`, { headers: this.headers() }));
        return resp.arrayBuffer();
    }
    async fetchIdCard(kind, id) {
        const resp = await raiseFor(await fetch(`${this.baseUrl}/api/${kind}/${id}/idcard.png`, {
            headers: this.headers(),
        }));
        return resp.arrayBuffer();
    }
}
//# sourceMappingURL=api.js.map