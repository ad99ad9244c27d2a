import type { PreferenceResponse, RadarGrid, Selection, UploadResponse } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorName: string,
    detail: string,
  ) {
    super(`${errorName}: ${detail}`);
  }
}

async function raiseFor(response: Response): Promise<never> {
  let name = `HTTP ${response.status}`;
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { error?: string; detail?: string };
    if (body.error) name = body.error;
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body: keep the status line
  }
  throw new ApiError(response.status, name, detail);
}

/** Thin client for the three service endpoints. The fetch function is
 * injectable so tests can stub the server. */
export class Client {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = globalThis.fetch.bind(globalThis),
  ) {}

  async uploadDataset(
    body: string,
    contentType: "text/csv" | "application/json",
  ): Promise<UploadResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/datasets`, {
      method: "POST",
      headers: { "content-type": contentType },
      body,
    });
    if (response.status !== 201) await raiseFor(response);
    return (await response.json()) as UploadResponse;
  }

  async radarGrid(id: string): Promise<RadarGrid> {
    const response = await this.fetchFn(`${this.baseUrl}/datasets/${id}/radar-grid`);
    if (!response.ok) await raiseFor(response);
    return (await response.json()) as RadarGrid;
  }

  async preference(
    id: string,
    selection: Selection,
    signal?: AbortSignal,
  ): Promise<PreferenceResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/datasets/${id}/preference`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(selection),
      signal,
    });
    if (!response.ok) await raiseFor(response);
    return (await response.json()) as PreferenceResponse;
  }
}
