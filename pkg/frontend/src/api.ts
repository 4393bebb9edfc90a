/** Thin typed client for the service API; fetch is injectable for tests. */

import type {
  Diagnostic,
  PitDoc,
  PortfolioDoc,
  SimConfigDoc,
  WhatIfRequest,
  WhatIfResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
    public diagnostics: Diagnostic[] = [],
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      const detail =
        typeof payload.detail === "string" ? payload.detail : `HTTP ${resp.status}`;
      throw new ApiError(resp.status, detail, payload.diagnostics ?? []);
    }
    return payload as T;
  }

  health(): Promise<{ status: string; version: string }> {
    return this.request("GET", "/api/health");
  }

  getPortfolio(): Promise<{ portfolio: PortfolioDoc; config: SimConfigDoc }> {
    return this.request("GET", "/api/portfolio");
  }

  putPortfolio(doc: PortfolioDoc): Promise<{ ok: boolean; projects: number }> {
    return this.request("PUT", "/api/portfolio", doc);
  }

  putConfig(doc: Partial<SimConfigDoc>): Promise<{ ok: boolean; config: SimConfigDoc }> {
    return this.request("PUT", "/api/config", doc);
  }

  pit(metric: string): Promise<{ pit: PitDoc }> {
    return this.request("POST", "/api/pit", { metric });
  }

  whatif(req: WhatIfRequest): Promise<WhatIfResponse> {
    return this.request("POST", "/api/whatif", req);
  }
}
