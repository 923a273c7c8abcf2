import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  const raw = readFileSync(join(here, "fixtures", `${name}.json`), "utf-8");
  return JSON.parse(raw) as T;
}

export interface RecordedCall {
  method: string;
  path: string;
  body?: unknown;
}

/** A fetch stub that replays queued responses and records every call. */
export function fakeFetch(
  script: { status?: number; body: unknown }[],
): { fetch: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const queue = [...script];
  const fetch: FetchLike = async (input, init) => {
    calls.push({
      method: init?.method ?? "GET",
      path: input,
      body: init?.body ? JSON.parse(init.body) : undefined,
    });
    const next = queue.shift();
    if (!next) throw new Error(`unexpected request ${input}`);
    return {
      status: next.status ?? 200,
      json: async () => next.body,
    };
  };
  return { fetch, calls };
}
