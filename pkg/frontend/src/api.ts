import type { DocRecord, Facets, Recipe, SearchResponse, SearchState } from './types.js';

export class GatewayError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly code: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function getJson<T>(fetchFn: FetchLike, url: string, signal?: AbortSignal): Promise<T> {
  // Every gateway call is a plain GET; the UI never mutates server state.
  const res = await fetchFn(url, { signal });
  if (!res.ok) {
    let code = 'gateway_error';
    let message = `${res.status} for ${url}`;
    try {
      const body = (await res.json()) as { code?: string; message?: string };
      if (body.code) code = body.code;
      if (body.message) message = body.message;
    } catch {
      // non-JSON error body: keep the defaults
    }
    throw new GatewayError(message, res.status, code);
  }
  return (await res.json()) as T;
}

export class Gateway {
  constructor(
    private readonly base = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  search(state: SearchState, k = 20, signal?: AbortSignal): Promise<SearchResponse> {
    const params = new URLSearchParams();
    if (state.query.trim()) params.set('q', state.query.trim());
    if (state.material) params.set('material', state.material);
    if (state.morphology) params.set('morphology', state.morphology);
    params.set('k', String(k));
    return getJson(this.fetchFn, `${this.base}/api/search?${params}`, signal);
  }

  document(docId: string, signal?: AbortSignal): Promise<DocRecord> {
    return getJson(this.fetchFn, `${this.base}/api/docs/${encodeURIComponent(docId)}`, signal);
  }

  recipe(docId: string, signal?: AbortSignal): Promise<Recipe> {
    return getJson(this.fetchFn, `${this.base}/api/docs/${encodeURIComponent(docId)}/recipe`, signal);
  }

  facets(signal?: AbortSignal): Promise<Facets> {
    return getJson(this.fetchFn, `${this.base}/api/facets`, signal);
  }
}

/**
 * At most one search request in flight: firing a new one aborts the
 * previous, so a slow old response can never overwrite a newer one.
 */
export class SearchController {
  private inflight: AbortController | null = null;

  constructor(private readonly gateway: Gateway) {}

  async search(state: SearchState, k = 20): Promise<SearchResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      return await this.gateway.search(state, k, controller.signal);
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }
}
