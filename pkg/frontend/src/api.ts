/** Typed client for the adjudication service. The UI talks to the service
 * exclusively through this module; tests inject a fake fetch. */

import type {
  ProgressInfo,
  ResolutionJson,
  ResolutionRequest,
  SentenceDetail,
  SentenceSummary,
  SessionInfo,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function throwFrom(response: Response): Promise<never> {
  let code = "HTTP_ERROR";
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body && typeof body.code === "string") {
      code = body.code;
      message = body.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiError(code, response.status, message);
}

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(fetchFn?: FetchLike, readonly base: string = "") {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) await throwFrom(response);
    return (await response.json()) as T;
  }

  session(): Promise<SessionInfo> {
    return this.json("/api/session");
  }

  sentences(only?: "disagreeing"): Promise<SentenceSummary[]> {
    const query = only ? `?only=${only}` : "";
    return this.json(`/api/sentences${query}`);
  }

  sentence(index: number): Promise<SentenceDetail> {
    return this.json(`/api/sentences/${index}`);
  }

  progress(): Promise<ProgressInfo> {
    return this.json("/api/progress");
  }

  postResolution(index: number, request: ResolutionRequest): Promise<ResolutionJson> {
    return this.json(`/api/sentences/${index}/resolutions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  deleteResolution(index: number, tokenId: number): Promise<unknown> {
    return this.json(`/api/sentences/${index}/resolutions/${tokenId}`, {
      method: "DELETE",
    });
  }

  async exportGold(allowPartial: boolean): Promise<string> {
    const response = await this.fetchFn(
      `${this.base}/api/export?allow_partial=${allowPartial}`);
    if (!response.ok) await throwFrom(response);
    return response.text();
  }
}
