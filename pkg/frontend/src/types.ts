// Payload shapes of the session service API. The UI renders these verbatim;
// it never derives logical content on its own.

export interface TheoryJson {
  name: string;
  atoms: string[];
  actions: string[];
  static: string[];
  effect: { pre: string; action: string; post: string }[];
  exec: { pre: string; action: string }[];
}

export interface TheorySummary {
  id: string;
  modular: boolean;
  implicitLaws: string[];
}

export interface StoredTheory extends TheorySummary {
  text: string;
  theory: TheoryJson;
}

export interface DiffEntry {
  before: string;
  after: string;
}

export interface Diff {
  added: string[];
  removed: string[];
  modified: DiffEntry[];
}

export interface ModelJson {
  worlds: string[][];
  relations: Record<string, [number, number][]>;
}

export interface ModelGraph {
  kind: "canonical" | "biggest" | "contracted" | "revised";
  model: ModelJson;
}

export interface Provenance {
  context?: string;
  piPrime?: string;
  kernels?: string[][];
  note?: string;
}

export interface Candidate {
  id: string;
  theory: TheoryJson;
  theoryText: string;
  diff: Diff;
  modelGraph: ModelGraph;
  provenance: Provenance;
}

export interface HistoryStep {
  request: { kind: "contract" | "revise"; law: string };
  candidates: string[];
  selected: string;
  timestamp: string;
  previousTheory: TheoryJson;
  resultTheory: TheoryJson;
  modelGraph?: ModelGraph;
}

export interface SessionState {
  id: string;
  theoryId: string;
  currentTheory: TheoryJson;
  history: HistoryStep[];
  pending: {
    kind: "contract" | "revise";
    law: string;
    candidates: Candidate[];
  } | null;
}

export type ChangeKind = "contract" | "revise";
