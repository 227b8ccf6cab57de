/** Typed client over the workbench HTTP API.
 *
 * Every verifier action maps to exactly one documented request; the
 * server is authoritative, so errors carry its payload verbatim for the
 * retry banner.
 */

import type {
  AssignmentPayload,
  BfPayload,
  BipartitePayload,
  ComparePayload,
  ItemPayload,
  RunPayload,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public serverError: string,
    public detail: string,
  ) {
    super(`${serverError}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = '',
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { Accept: 'application/json' } };
    if (body !== undefined) {
      init.headers = { ...init.headers, 'Content-Type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let error = `HTTP ${response.status}`;
      let detail = response.statusText;
      try {
        const payload = await response.json();
        error = payload.error ?? error;
        detail = payload.detail ?? JSON.stringify(payload);
      } catch {
        /* non-JSON error body; keep the status line */
      }
      throw new ApiError(response.status, error, detail);
    }
    return (await response.json()) as T;
  }

  listItems(): Promise<{ items: ItemPayload[] }> {
    return this.request('GET', '/items');
  }

  getItem(itemId: string): Promise<ItemPayload> {
    return this.request('GET', `/items/${itemId}`);
  }

  splitItem(itemId: string, parts: string[], partition: boolean): Promise<{ children: ItemPayload[] }> {
    return this.request('POST', `/items/${itemId}/split`, { parts, partition });
  }

  listBfs(): Promise<{ facts: BfPayload[] }> {
    return this.request('GET', '/bfs');
  }

  addBf(text: string, keyTerms: string[], originItem?: string): Promise<BfPayload> {
    return this.request('POST', '/bfs', {
      text,
      key_terms: keyTerms,
      origin_item: originItem ?? null,
    });
  }

  suggestBfs(itemId: string): Promise<{ suggestions: BfPayload[] }> {
    return this.request('GET', `/items/${itemId}/bf-suggestions`);
  }

  assignBfs(itemId: string, bfIds: string[], baseVersion?: number): Promise<AssignmentPayload> {
    return this.request('POST', `/items/${itemId}/assign-bfs`, {
      bf_ids: bfIds,
      base_version: baseVersion ?? null,
    });
  }

  startRun(itemId: string, bfVersion: number, nRuns: number): Promise<RunPayload> {
    return this.request('POST', `/items/${itemId}/runs`, {
      bf_version: bfVersion,
      n_runs: nRuns,
    });
  }

  getRun(runId: string): Promise<RunPayload> {
    return this.request('GET', `/runs/${runId}`);
  }

  bypassFact(runId: string, ordinal: number, category: string, note: string): Promise<RunPayload> {
    return this.request('POST', `/runs/${runId}/facts/${ordinal}/bypass`, {
      category,
      note,
    });
  }

  acceptItem(itemId: string, runId: string): Promise<{ item_id: string; run_id: string; graph_triples: number }> {
    return this.request('POST', `/items/${itemId}/accept`, { run_id: runId });
  }

  compareRuns(itemId: string, runA: string, runB: string): Promise<ComparePayload> {
    const params = new URLSearchParams({ item: itemId, run_a: runA, run_b: runB });
    return this.request('GET', `/metrics/compare?${params}`);
  }

  fetchBipartite(scenario: string, min: number): Promise<BipartitePayload> {
    const params = new URLSearchParams({ scenario, min: String(min), format: 'json' });
    return this.request('GET', `/graph/bipartite?${params}`);
  }

  async fetchMergedTurtle(): Promise<string> {
    const response = await this.fetchImpl(this.baseUrl + '/graph/merged.ttl', {
      method: 'GET',
      headers: { Accept: 'text/turtle' },
    });
    if (!response.ok) {
      throw new ApiError(response.status, `HTTP ${response.status}`, response.statusText);
    }
    return response.text();
  }
}
