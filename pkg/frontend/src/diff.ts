// Law-level diff rows for a candidate card. "modified" pairs render amber
// (a weakened law), additions green, removals red; the statuses double as
// CSS class names.

import type { Diff } from "./types.js";

export type DiffStatus = "added" | "removed" | "weakened";

export interface DiffRow {
  status: DiffStatus;
  text: string;
  before?: string;
}

export function diffRows(diff: Diff): DiffRow[] {
  const rows: DiffRow[] = [];
  for (const entry of diff.modified) {
    rows.push({ status: "weakened", text: entry.after, before: entry.before });
  }
  for (const law of diff.removed) {
    rows.push({ status: "removed", text: law });
  }
  for (const law of diff.added) {
    rows.push({ status: "added", text: law });
  }
  return rows;
}

export function diffSummary(diff: Diff): string {
  const parts: string[] = [];
  if (diff.modified.length) parts.push(`${diff.modified.length} weakened`);
  if (diff.added.length) parts.push(`${diff.added.length} added`);
  if (diff.removed.length) parts.push(`${diff.removed.length} removed`);
  return parts.length ? parts.join(", ") : "no law changes";
}
