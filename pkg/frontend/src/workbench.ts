// Session state management: mirrors the server session, never mutates laws
// client-side. Every transition round-trips through the API.

import { ApiClient, ApiError } from "./api.js";
import type {
  Candidate,
  ChangeKind,
  ModelGraph,
  SessionState,
  TheoryJson,
} from "./types.js";

export interface TimelineEntry {
  kind: ChangeKind;
  law: string;
  selected: string;
  timestamp: string;
}

export interface WorkbenchState {
  sessionId: string | null;
  theoryId: string | null;
  theoryText: string;
  currentTheory: TheoryJson | null;
  pendingCandidates: Candidate[];
  pendingKind: ChangeKind | null;
  timeline: TimelineEntry[];
  model: ModelGraph | null;
  baseModel: ModelGraph | null; // the "before" side of candidate graphs
  error: string | null;
  staleCandidates: boolean;
}

export function initialState(): WorkbenchState {
  return {
    sessionId: null,
    theoryId: null,
    theoryText: "",
    currentTheory: null,
    pendingCandidates: [],
    pendingKind: null,
    timeline: [],
    model: null,
    baseModel: null,
    error: null,
    staleCandidates: false,
  };
}

function timelineOf(session: SessionState): TimelineEntry[] {
  return session.history.map((step) => ({
    kind: step.request.kind,
    law: step.request.law,
    selected: step.selected,
    timestamp: step.timestamp,
  }));
}

export class Workbench {
  state: WorkbenchState = initialState();

  constructor(
    private api: ApiClient,
    private onChange: (state: WorkbenchState) => void = () => {},
  ) {}

  private emit(): void {
    this.onChange(this.state);
  }

  async loadTheory(text: string): Promise<void> {
    this.state.error = null;
    try {
      const summary = await this.api.postTheory(text);
      const session = await this.api.openSession(summary.id);
      this.state.theoryId = summary.id;
      this.state.theoryText = text;
      this.state.sessionId = session.id;
      this.state.currentTheory = session.currentTheory;
      this.state.timeline = timelineOf(session);
      this.state.pendingCandidates = [];
      this.state.pendingKind = null;
      await this.refreshModel();
      if (!summary.modular) {
        this.state.error =
          "not modular; implicit laws: " + summary.implicitLaws.join(", ");
      }
    } catch (err) {
      this.state.error = err instanceof Error ? err.message : String(err);
    }
    this.emit();
  }

  async resumeSession(sessionId: string): Promise<void> {
    const session = await this.api.getSession(sessionId);
    this.state.sessionId = session.id;
    this.state.theoryId = session.theoryId;
    this.state.currentTheory = session.currentTheory;
    this.state.timeline = timelineOf(session);
    this.state.pendingCandidates = session.pending?.candidates ?? [];
    this.state.pendingKind = session.pending?.kind ?? null;
    await this.refreshModel();
    this.emit();
  }

  async requestChange(kind: ChangeKind, law: string): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.error = null;
    this.state.staleCandidates = false;
    try {
      const res = await this.api.requestChange(this.state.sessionId, kind, law);
      this.state.baseModel = this.state.model;
      this.state.pendingCandidates = res.candidates;
      this.state.pendingKind = kind;
    } catch (err) {
      // 400/422 carry the parser's line/column message verbatim
      this.state.error = err instanceof Error ? err.message : String(err);
      this.state.pendingCandidates = [];
      this.state.pendingKind = null;
    }
    this.emit();
  }

  async selectCandidate(candidateId: string): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.error = null;
    try {
      const session = await this.api.select(this.state.sessionId, candidateId);
      this.state.currentTheory = session.currentTheory;
      this.state.timeline = timelineOf(session);
      this.state.pendingCandidates = [];
      this.state.pendingKind = null;
      this.state.staleCandidates = false;
      await this.refreshModel();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.state.staleCandidates = true;
        this.state.error = "candidates are stale; refresh the request";
      } else {
        this.state.error = err instanceof Error ? err.message : String(err);
      }
    }
    this.emit();
  }

  async undo(): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.error = null;
    try {
      const session = await this.api.undo(this.state.sessionId);
      this.state.currentTheory = session.currentTheory;
      this.state.timeline = timelineOf(session);
      this.state.pendingCandidates = [];
      this.state.pendingKind = null;
      await this.refreshModel();
    } catch (err) {
      this.state.error = err instanceof Error ? err.message : String(err);
    }
    this.emit();
  }

  canUndo(): boolean {
    return this.state.timeline.length > 0;
  }

  private async refreshModel(): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.model = await this.api.getModel(this.state.sessionId);
  }
}
