/** Thin typed client for the service API; fetch is injectable for tests. */
export class ApiError extends Error {
    constructor(status, message, diagnostics = []) {
        super(message);
        this.status = status;
        this.diagnostics = diagnostics;
    }
}
export class ApiClient {
    constructor(baseUrl = "", fetchFn = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async request(method, path, body) {
        const resp = await this.fetchFn(this.baseUrl + path, {
            method,
            headers: body === undefined ? {} : { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        const payload = await resp.json().catch(() => ({}));
        if (!resp.ok) {
            const detail = typeof payload.detail === "string" ? payload.detail : `HTTP ${resp.status}`;
            throw new ApiError(resp.status, detail, payload.diagnostics ?? []);
        }
        return payload;
    }
    health() {
        return this.request("GET", "/api/health");
    }
    getPortfolio() {
        return this.request("GET", "/api/portfolio");
    }
    putPortfolio(doc) {
        return this.request("PUT", "/api/portfolio", doc);
    }
    putConfig(doc) {
        return this.request("PUT", "/api/config", doc);
    }
    pit(metric) {
        return this.request("POST", "/api/pit", { metric });
    }
    whatif(req) {
        return this.request("POST", "/api/whatif", req);
    }
}
