import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

type Call = { url: string; init: RequestInit };

function mockFetch(status: number, body: unknown): Call[] {
  const calls: Call[] = [];
  vi.stubGlobal(
    "fetch",
    async (url: string, init: RequestInit = {}) => {
      calls.push({ url, init });
      return new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
      });
    },
  );
  return calls;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("builds listing queries", async () => {
    const calls = mockFetch(200, { kind: "s2e", words: [] });
    await new ApiClient("http://h").listEntries("s2e", "پا", 10, 25);
    expect(calls[0].url).toBe("http://h/api/entries?kind=s2e&prefix=%D9%BE%D8%A7&offset=10&limit=25");
    expect(calls[0].init.method).toBe("GET");
  });

  it("percent-encodes keys in entry URLs", async () => {
    const calls = mockFetch(200, {});
    await new ApiClient().getEntry("s2e", "پاڻي");
    expect(calls[0].url).toBe("/api/entries/s2e/%D9%BE%D8%A7%DA%BB%D9%8A");
  });

  it("puts drafts with kind and optional If-Match", async () => {
    const calls = mockFetch(200, { created: [], updated: [], deleted: [] });
    const draft = {
      headword: "water",
      pronunciation: "",
      grammar: "",
      sindhi_glosses: ["پاڻي"],
      english_glosses: [],
    };
    const client = new ApiClient();
    await client.putEntry("e2s", draft);
    expect((calls[0].init.headers as Record<string, string>)["If-Match"]).toBeUndefined();
    expect(JSON.parse(calls[0].init.body as string)).toEqual({ kind: "e2s", ...draft });

    await client.putEntry("e2s", draft, 3);
    expect((calls[1].init.headers as Record<string, string>)["If-Match"]).toBe("3");
  });

  it("raises typed errors with the response body", async () => {
    mockFetch(409, { error: "RevisionConflict", current_revision: 5 });
    const client = new ApiClient();
    const draft = {
      headword: "water",
      pronunciation: "",
      grammar: "",
      sindhi_glosses: [],
      english_glosses: [],
    };
    const failure = await client.putEntry("e2s", draft, 1).catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(409);
    expect(failure.body.current_revision).toBe(5);
  });

  it("posts tokenize previews", async () => {
    const calls = mockFetch(200, { tokens: ["a", "b"] });
    const result = await new ApiClient().tokenize("درسگاهه، اسڪول");
    expect(result.tokens).toEqual(["a", "b"]);
    expect(calls[0].url).toBe("/api/tokenize");
    expect(JSON.parse(calls[0].init.body as string)).toEqual({ text: "درسگاهه، اسڪول" });
  });
});
