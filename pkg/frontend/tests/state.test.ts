import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { AdjudicationStore, unresolvedTokenIds, type ServiceApi } from "../src/state.js";
import type {
  ProgressInfo,
  ResolutionJson,
  ResolutionRequest,
  SentenceDetail,
  SentenceSummary,
  SessionInfo,
  TokenJson,
} from "../src/types.js";

function token(id: number, form: string, head: number, deprel: string): TokenJson {
  return {
    id, form, lemma: form, upos: "NOUN", xpos: null, feats: [],
    head, deprel, deps: "_", misc: [["Lang", "fy"]], lang: "fy",
  };
}

/** Hand-scripted service double: sentence 0 clean, sentence 1 disagreeing. */
function makeFake() {
  const resolutions: ResolutionJson[] = [];
  const calls: string[] = [];

  const detailClean: SentenceDetail = {
    index: 0, sent_id: "u1", text: "wurd", record_count: 0, resolved_count: 0,
    tokens_a: [token(1, "wurd", 0, "root")],
    tokens_b: [token(1, "wurd", 0, "root")],
    records: [], resolutions: [],
  };
  const detailDisagreeing = (): SentenceDetail => ({
    index: 1, sent_id: "u2", text: "Jan dy rint",
    record_count: 2, resolved_count: resolutions.length,
    tokens_a: [token(1, "Jan", 3, "nsubj"), token(2, "dy", 3, "det"),
               token(3, "rint", 0, "root")],
    tokens_b: [token(1, "Jan", 3, "nsubj"), token(2, "dy", 3, "expl"),
               token(3, "rint", 0, "root")],
    records: [
      { sent_id: "u2", token_id: 2, fields: ["deprel"], a: { deprel: "det" }, b: { deprel: "expl" } },
      { sent_id: "u2", token_id: 3, fields: ["upos"], a: { upos: "NOUN" }, b: { upos: "VERB" } },
    ],
    resolutions: [...resolutions],
  });

  const api: ServiceApi = {
    async session(): Promise<SessionInfo> {
      calls.push("session");
      return { annotators: ["ann1", "ann2"], sentence_count: 2,
               record_count: 2, resolved_count: resolutions.length };
    },
    async sentences(): Promise<SentenceSummary[]> {
      calls.push("sentences");
      return [
        { index: 0, sent_id: "u1", text: "wurd", record_count: 0, resolved_count: 0 },
        { index: 1, sent_id: "u2", text: "Jan dy rint", record_count: 2,
          resolved_count: resolutions.length },
      ];
    },
    async sentence(index: number): Promise<SentenceDetail> {
      calls.push(`sentence:${index}`);
      return index === 0 ? detailClean : detailDisagreeing();
    },
    async progress(): Promise<ProgressInfo> {
      calls.push("progress");
      return {
        resolved: resolutions.length, total: 2,
        provisional: { pos: 100, uas: 100, las: 100, total_tokens: 4,
                       pos_matches: 4, head_matches: 4, labeled_matches: 4 },
      };
    },
    async postResolution(_index: number, request: ResolutionRequest): Promise<ResolutionJson> {
      calls.push(`post:${request.token_id}:${request.choice}`);
      const stored: ResolutionJson = {
        sent_id: "u2", token_id: request.token_id, choice: request.choice,
        custom_values: request.custom_values ?? null, note: request.note ?? null,
        timestamp: "2026-08-09T00:00:00+00:00",
      };
      const existing = resolutions.findIndex((r) => r.token_id === request.token_id);
      if (existing >= 0) resolutions[existing] = stored;
      else resolutions.push(stored);
      return stored;
    },
    async deleteResolution(_index: number, tokenId: number): Promise<unknown> {
      calls.push(`delete:${tokenId}`);
      const at = resolutions.findIndex((r) => r.token_id === tokenId);
      if (at < 0) throw new ApiError("UNKNOWN_RECORD", 404, "no resolution");
      resolutions.splice(at, 1);
      return {};
    },
    async exportGold(): Promise<string> {
      calls.push("export");
      return "gold";
    },
  };
  return { api, calls, resolutions };
}

describe("AdjudicationStore", () => {
  it("init jumps to the first disagreeing sentence", async () => {
    const { api } = makeFake();
    const store = new AdjudicationStore(api);
    await store.init();
    expect(store.state.sentenceIndex).toBe(1);
    expect(store.state.detail?.sent_id).toBe("u2");
    expect(store.state.session?.annotators).toEqual(["ann1", "ann2"]);
  });

  it("only tokens with a record are selectable", async () => {
    const { api } = makeFake();
    const store = new AdjudicationStore(api);
    await store.init();
    store.select(1);
    expect(store.state.selection).toBeNull();
    store.select(2);
    expect(store.state.selection).toBe(2);
  });

  it("filters sentence rows", async () => {
    const { api } = makeFake();
    const store = new AdjudicationStore(api);
    await store.init();
    store.setFilter("all");
    expect(store.visibleSentences()).toHaveLength(2);
    store.setFilter("disagreeing");
    expect(store.visibleSentences().map((s) => s.sent_id)).toEqual(["u2"]);
    store.setFilter("unresolved");
    expect(store.visibleSentences().map((s) => s.sent_id)).toEqual(["u2"]);
  });

  it("re-fetches state after a mutation instead of patching locally", async () => {
    const { api, calls } = makeFake();
    const store = new AdjudicationStore(api);
    await store.init();
    store.select(2);
    calls.length = 0;
    const ok = await store.submitResolution("take_b");
    expect(ok).toBe(true);
    expect(calls[0]).toBe("post:2:take_b");
    expect(calls).toContain("sentence:1");
    expect(calls).toContain("progress");
    expect(store.state.detail?.resolutions).toHaveLength(1);
    expect(store.state.detail?.resolutions[0].choice).toBe("take_b");
    expect(store.state.pendingRequest).toBe(false);
  });

  it("allows only one in-flight mutation", async () => {
    const { api, calls } = makeFake();
    let release!: () => void;
    const gate = new Promise<void>((resolve) => { release = resolve; });
    const slow: ServiceApi = {
      ...api,
      async postResolution(index, request) {
        await gate;
        return api.postResolution(index, request);
      },
    };
    const store = new AdjudicationStore(slow);
    await store.init();
    store.select(2);
    const first = store.submitResolution("take_a");
    expect(store.state.pendingRequest).toBe(true);
    const second = await store.submitResolution("take_b"); // rejected client-side
    expect(second).toBe(false);
    release();
    expect(await first).toBe(true);
    expect(calls.filter((c) => c.startsWith("post:"))).toEqual(["post:2:take_a"]);
  });

  it("surfaces ApiError code and message inline", async () => {
    const { api } = makeFake();
    const failing: ServiceApi = {
      ...api,
      async postResolution(): Promise<ResolutionJson> {
        throw new ApiError("INVALID_CUSTOM_HEAD", 422, "head 99 is not valid");
      },
    };
    const store = new AdjudicationStore(failing);
    await store.init();
    store.select(2);
    const ok = await store.submitResolution("custom", { upos: null, head: 99, deprel: "expl" });
    expect(ok).toBe(false);
    expect(store.state.error).toEqual(
      { code: "INVALID_CUSTOM_HEAD", message: "head 99 is not valid" });
    expect(store.state.pendingRequest).toBe(false);
  });

  it("nextUnresolved walks within and across sentences", async () => {
    const { api } = makeFake();
    const store = new AdjudicationStore(api);
    await store.init();
    await store.nextUnresolved();
    expect(store.state.selection).toBe(2);
    await store.nextUnresolved();
    expect(store.state.selection).toBe(3);
    await store.submitResolution("take_a");
    await store.removeResolution(3); // leave both unresolved again, selection kept
    store.select(3);
    await store.nextUnresolved(); // wraps around to the same sentence
    expect(store.state.sentenceIndex).toBe(1);
    expect(store.state.selection).toBe(2);
  });

  it("unresolvedTokenIds reflects resolutions", async () => {
    const { api } = makeFake();
    const store = new AdjudicationStore(api);
    await store.init();
    expect(unresolvedTokenIds(store.state.detail!)).toEqual([2, 3]);
    store.select(2);
    await store.submitResolution("take_b");
    expect(unresolvedTokenIds(store.state.detail!)).toEqual([3]);
  });
});
