import { describe, expect, it } from "vitest";

import { diffRows, diffSummary } from "../src/diff";
import type { Candidate } from "../src/types";
import { fixture } from "./helpers";

const contractResponse = fixture<{ candidates: Candidate[] }>(
  "contract_exec_token",
);

describe("law-level diffs", () => {
  it("executability contraction cards differ only in the excluded context", () => {
    const cands = contractResponse.candidates;
    expect(cands).toHaveLength(3);
    const contexts = new Set<string>();
    for (const cand of cands) {
      const rows = diffRows(cand.diff);
      expect(rows).toHaveLength(1);
      expect(rows[0].status).toBe("weakened");
      expect(rows[0].before).toBe("exec token => <buy>");
      contexts.add(cand.provenance.context ?? "");
    }
    expect(contexts.size).toBe(3);
  });

  it("summarizes counts per change status", () => {
    expect(
      diffSummary({ added: ["x"], removed: [], modified: [] }),
    ).toBe("1 added");
    expect(diffSummary({ added: [], removed: [], modified: [] })).toBe(
      "no law changes",
    );
    expect(
      diffSummary({
        added: ["a"],
        removed: ["b"],
        modified: [{ before: "x", after: "y" }],
      }),
    ).toBe("1 weakened, 1 added, 1 removed");
  });

  it("orders rows: weakened, removed, added", () => {
    const rows = diffRows({
      added: ["new law"],
      removed: ["old law"],
      modified: [{ before: "b", after: "a" }],
    });
    expect(rows.map((r) => r.status)).toEqual(["weakened", "removed", "added"]);
  });
});
