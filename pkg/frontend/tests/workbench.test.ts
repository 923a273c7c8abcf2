import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { Workbench } from "../src/workbench";
import type { Candidate, ModelGraph, SessionState, TheorySummary } from "../src/types";
import { fakeFetch, fixture } from "./helpers";

const theory = fixture<TheorySummary>("post_theory");
const session = fixture<SessionState>("post_session");
const contractResponse = fixture<{ candidates: Candidate[] }>(
  "contract_exec_token",
);
const afterSelect = fixture<SessionState>("select_c1");
const serverSession = fixture<SessionState>("session_after_select");
const modelAfterSelect = fixture<ModelGraph>("model_after_select");
const modelInitial = fixture<ModelGraph>("model_initial");
const undone = fixture<SessionState>("undo");
const malformed = fixture<{ status: number; body: { error: string } }>(
  "malformed_law_error",
);

describe("candidate round-trip", () => {
  it("adopting a card makes the server session equal that candidate", async () => {
    const { fetch, calls } = fakeFetch([
      { body: theory },
      { body: session },
      { body: modelInitial },
      { body: contractResponse },
      { body: afterSelect },
      { body: modelAfterSelect },
    ]);
    const bench = new Workbench(new ApiClient("", fetch));
    await bench.loadTheory("theory coffee ...");
    await bench.requestChange("contract", "exec token => <buy>");
    expect(bench.state.pendingCandidates).toHaveLength(3);

    await bench.selectCandidate("c1");
    expect(calls.at(-2)).toMatchObject({
      method: "POST",
      path: `/api/sessions/${session.id}/select`,
      body: { candidateId: "c1" },
    });
    // the recorded server session's current theory equals the chosen card's
    const chosen = contractResponse.candidates.find((c) => c.id === "c1")!;
    expect(serverSession.currentTheory).toEqual(chosen.theory);
    // and the client mirrors it without recomputing anything
    expect(bench.state.currentTheory).toEqual(chosen.theory);
    expect(bench.state.timeline).toHaveLength(1);
    expect(bench.canUndo()).toBe(true);
    // the refreshed model view is the recorded contracted graph
    expect(bench.state.model).toEqual(modelAfterSelect);
    expect(modelAfterSelect.kind).toBe("contracted");
  });

  it("undo shortens the timeline and restores the theory", async () => {
    const { fetch } = fakeFetch([
      { body: theory },
      { body: session },
      { body: modelInitial },
      { body: contractResponse },
      { body: afterSelect },
      { body: modelAfterSelect },
      { body: undone },
      { body: modelInitial },
    ]);
    const bench = new Workbench(new ApiClient("", fetch));
    await bench.loadTheory("theory coffee ...");
    await bench.requestChange("contract", "exec token => <buy>");
    await bench.selectCandidate("c1");
    expect(bench.state.timeline).toHaveLength(1);
    await bench.undo();
    expect(bench.state.timeline).toHaveLength(0);
    expect(bench.state.currentTheory).toEqual(session.currentTheory);
    expect(bench.canUndo()).toBe(false);
  });

  it("a stale candidate id prompts a refresh instead of failing hard", async () => {
    const { fetch } = fakeFetch([
      { body: theory },
      { body: session },
      { body: modelInitial },
      { body: contractResponse },
      { status: 409, body: { error: "stale candidate id c9" } },
    ]);
    const bench = new Workbench(new ApiClient("", fetch));
    await bench.loadTheory("theory coffee ...");
    await bench.requestChange("contract", "exec token => <buy>");
    await bench.selectCandidate("c9");
    expect(bench.state.staleCandidates).toBe(true);
    expect(bench.state.error).toContain("stale");
  });

  it("surfaces the parser's message on a malformed law", async () => {
    const { fetch } = fakeFetch([
      { body: theory },
      { body: session },
      { body: modelInitial },
      { status: malformed.status, body: malformed.body },
    ]);
    const bench = new Workbench(new ApiClient("", fetch));
    await bench.loadTheory("theory coffee ...");
    await bench.requestChange("contract", "exec token =>");
    expect(bench.state.error).toBe(malformed.body.error);
    expect(bench.state.pendingCandidates).toHaveLength(0);
  });

  it("a revision shows a single card for a unique minimal result", async () => {
    const revise = fixture<{ candidates: Candidate[] }>("revise_effect");
    expect(revise.candidates).toHaveLength(1);
    expect(revise.candidates[0].modelGraph.kind).toBe("revised");
  });
});

describe("persistence round-trip", () => {
  it("resuming a session after a server restart replays its state", async () => {
    const { fetch } = fakeFetch([
      { body: serverSession },
      { body: modelAfterSelect },
    ]);
    const bench = new Workbench(new ApiClient("", fetch));
    await bench.resumeSession(serverSession.id);
    expect(bench.state.currentTheory).toEqual(serverSession.currentTheory);
    expect(bench.state.timeline).toHaveLength(serverSession.history.length);
    expect(bench.state.model).toEqual(modelAfterSelect);
  });
});
