/** Typed client for the lk design service. */
export class ApiError extends Error {
    status;
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
async function asJson(response) {
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
        const message = body.error ?? response.statusText;
        throw new ApiError(response.status, message);
    }
    return body;
}
export class Client {
    baseUrl;
    constructor(baseUrl) {
        this.baseUrl = baseUrl;
    }
    url(path) {
        return this.baseUrl.replace(/\/$/, "") + path;
    }
    async createSession(lkm) {
        const response = await fetch(this.url("/session"), {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ lkm }),
        });
        return asJson(response);
    }
    async getMesh(session) {
        return asJson(await fetch(this.url(`/session/${session}/mesh`)));
    }
    async patchLabels(session, edits, nulls = []) {
        const response = await fetch(this.url(`/session/${session}/labels`), {
            method: "PATCH",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ edits, nulls }),
        });
        return asJson(response);
    }
    async getStrands(session, rev) {
        const q = rev === undefined ? "" : `?rev=${rev}`;
        return asJson(await fetch(this.url(`/session/${session}/strands${q}`)));
    }
    async getGeometry(session, rev, params) {
        const query = new URLSearchParams();
        if (rev !== undefined)
            query.set("rev", String(rev));
        if (params?.inset !== undefined)
            query.set("inset", String(params.inset));
        if (params?.radius !== undefined)
            query.set("radius", String(params.radius));
        const q = query.toString() ? `?${query}` : "";
        return asJson(await fetch(this.url(`/session/${session}/geometry${q}`)));
    }
    async getReport(session, rev) {
        const q = rev === undefined ? "" : `?rev=${rev}`;
        return asJson(await fetch(this.url(`/session/${session}/report${q}`)));
    }
}
