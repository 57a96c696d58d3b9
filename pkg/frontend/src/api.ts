import type {
  Health,
  InfillRequest,
  InfillResponse,
  TokenizeResponse,
  VocabSummary,
} from "./types.js";

/** Error carrying the HTTP status so callers can branch on 422/409. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export interface ApiClient {
  tokenize(name: string): Promise<TokenizeResponse>;
  infill(request: InfillRequest): Promise<InfillResponse>;
  vocab(): Promise<VocabSummary>;
  health(): Promise<Health>;
}

async function call<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(`${base}/api/v1${path}`, init);
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body: keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function createClient(base: string): ApiClient {
  const post = { method: "POST", headers: { "content-type": "application/json" } };
  return {
    tokenize: (name) =>
      call(base, "/tokenize", { ...post, body: JSON.stringify({ name }) }),
    infill: (request) =>
      call(base, "/infill", { ...post, body: JSON.stringify(request) }),
    vocab: () => call(base, "/vocab"),
    health: () => call(base, "/health"),
  };
}
