/**
 * Typed client for the gensearch HTTP API.
 *
 * The server identifies a session by the X-Session-Id header: it mints one on
 * first contact and echoes it back, so the client just remembers whatever the
 * last response carried and resends it.
 */

export interface ResultItem {
  image_id: string;
  score: number;
  description: string;
  source: "corpus" | "generated";
  uri: string;
}

export interface SearchResponse {
  session_id: string;
  query_token: string;
  offset: number;
  exhausted: boolean;
  items: ResultItem[];
}

export interface SuggestionItem {
  query: string;
  explanation: string;
  previews: ResultItem[];
}

export interface SuggestResponse {
  session_id: string;
  explanation: string;
  non_conforming: boolean;
  suggestions: SuggestionItem[];
}

/** Run-length encoded bitmap; size is [height, width], runs start with zeros. */
export interface RleMask {
  size: [number, number];
  counts: number[];
}

export interface SegmentItem {
  segment_id: string;
  area: number;
  rle: RleMask;
}

export interface SegmentsResponse {
  image_id: string;
  width: number;
  height: number;
  segments: SegmentItem[];
}

export interface MaskResponse {
  mask_id: string;
  image_id: string;
  selected_segment_ids: string[];
  area: number;
}

export interface GenerateResponse {
  session_id: string;
  image_id: string;
  parent_image_id: string;
  mode: "reference" | "keywords";
  backend_id: string;
  elapsed: number;
  uri: string;
  width: number;
  height: number;
  description: string;
}

export interface KeywordsResponse {
  session_id: string;
  explanation: string;
  aligned: string[];
  diversified: string[];
  short: boolean;
}

export interface SaveResponse {
  session_id: string;
  saved: string[];
}

export interface SessionEvent {
  session_id: string;
  seq: number;
  ts: string;
  kind: string;
  [key: string]: unknown;
}

export interface PatternReport {
  counts: Record<string, number>;
  transitions: Record<string, { with_gen: number; without_gen: number }>;
  search_by_generation_rate: number;
  saved_via_generation_rate: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly errorName: string,
    detail: string,
  ) {
    super(`${errorName}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  sessionId: string | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.sessionId) headers["X-Session-Id"] = this.sessionId;
    const init: RequestInit = { method, headers };
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const echoed = response.headers.get("X-Session-Id");
    if (echoed) this.sessionId = echoed;
    if (!response.ok) {
      let name = "HttpError";
      let detail = response.statusText;
      try {
        const payload = (await response.json()) as { error?: string; detail?: string };
        if (payload.error) name = payload.error;
        if (payload.detail) detail = payload.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, name, detail);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string; images: number; dimension: number }> {
    return this.request("GET", "/health");
  }

  search(q: string, offset = 0): Promise<SearchResponse> {
    return this.request("GET", `/search?q=${encodeURIComponent(q)}&offset=${offset}`);
  }

  similar(imageId: string, offset = 0): Promise<SearchResponse> {
    return this.request("GET", `/similar?image_id=${encodeURIComponent(imageId)}&offset=${offset}`);
  }

  more(token: string): Promise<SearchResponse> {
    return this.request("GET", `/more?token=${encodeURIComponent(token)}`);
  }

  suggest(q: string): Promise<SuggestResponse> {
    return this.request("GET", `/suggest?q=${encodeURIComponent(q)}`);
  }

  segments(imageId: string): Promise<SegmentsResponse> {
    return this.request("GET", `/segments?image_id=${encodeURIComponent(imageId)}`);
  }

  createMask(imageId: string, segmentIds: string[]): Promise<MaskResponse> {
    return this.request("POST", "/mask", { image_id: imageId, segment_ids: segmentIds });
  }

  generateReference(imageId: string, maskId: string, referenceImageId: string): Promise<GenerateResponse> {
    return this.request("POST", "/generate/reference", {
      image_id: imageId,
      mask_id: maskId,
      reference_image_id: referenceImageId,
    });
  }

  generateKeywords(imageId: string, maskId: string, keywords: string[]): Promise<GenerateResponse> {
    return this.request("POST", "/generate/keywords", {
      image_id: imageId,
      mask_id: maskId,
      keywords,
    });
  }

  keywords(imageId: string): Promise<KeywordsResponse> {
    return this.request("GET", `/keywords?image_id=${encodeURIComponent(imageId)}`);
  }

  save(imageId: string): Promise<SaveResponse> {
    return this.request("POST", "/save", { image_id: imageId });
  }

  unsave(imageId: string): Promise<SaveResponse> {
    return this.request("DELETE", `/save?image_id=${encodeURIComponent(imageId)}`);
  }

  report(): Promise<PatternReport> {
    return this.request("GET", "/session/report");
  }

  events(): Promise<{ session_id: string; events: SessionEvent[] }> {
    return this.request("GET", "/session/events");
  }

  /** Log a client-only gesture (the server rejects kinds it logs itself). */
  logEvent(kind: string, data: Record<string, unknown>): Promise<{ session_id: string; seq: number }> {
    return this.request("POST", "/event", { kind, data });
  }

  imageUrl(imageId: string): string {
    return `${this.baseUrl}/images/${encodeURIComponent(imageId)}`;
  }
}
