/** Typed fetch client for the dictionary service. */

import type {
  ApiEntry,
  ChangeSet,
  DictionaryKind,
  EntryDraft,
  ErrorBody,
  Health,
  KeyboardLayout,
  Listing,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ErrorBody,
  ) {
    super(body.message || body.error || `HTTP ${status}`);
  }
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    headers?: Record<string, string>,
  ): Promise<T> {
    const init: RequestInit = { method, headers: { ...headers } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      (init.headers as Record<string, string>)["Content-Type"] = "application/json";
    }
    const response = await fetch(this.base + path, init);
    const text = await response.text();
    let parsed: unknown = null;
    try {
      parsed = text ? JSON.parse(text) : null;
    } catch {
      parsed = { error: "BadResponse", message: text };
    }
    if (!response.ok) {
      throw new ApiError(response.status, (parsed ?? { error: `HTTP ${response.status}` }) as ErrorBody);
    }
    return parsed as T;
  }

  health(): Promise<Health> {
    return this.request("GET", "/api/health");
  }

  listEntries(kind: DictionaryKind, prefix = "", offset = 0, limit = 200): Promise<Listing> {
    const query = new URLSearchParams({
      kind,
      prefix,
      offset: String(offset),
      limit: String(limit),
    });
    return this.request("GET", `/api/entries?${query}`);
  }

  getEntry(kind: DictionaryKind, key: string): Promise<ApiEntry> {
    return this.request("GET", `/api/entries/${kind}/${encodeURIComponent(key)}`);
  }

  /**
   * Upsert one record. Pass the revision the client last saw to get a
   * 409 instead of silently overwriting someone else's edit; revision 0
   * means "create only".
   */
  putEntry(kind: DictionaryKind, draft: EntryDraft, ifMatch?: number): Promise<ChangeSet> {
    const headers: Record<string, string> = {};
    if (ifMatch !== undefined) {
      headers["If-Match"] = String(ifMatch);
    }
    return this.request(
      "PUT",
      `/api/entries/${kind}/${encodeURIComponent(draft.headword)}`,
      { kind, ...draft },
      headers,
    );
  }

  deleteEntry(kind: DictionaryKind, key: string): Promise<ChangeSet> {
    return this.request("DELETE", `/api/entries/${kind}/${encodeURIComponent(key)}`);
  }

  /** Preview which reverse headwords a Sindhi meaning will generate. */
  tokenize(text: string): Promise<{ tokens: string[] }> {
    return this.request("POST", "/api/tokenize", { text });
  }

  keyboard(): Promise<KeyboardLayout> {
    return this.request("GET", "/api/keyboard");
  }
}
