// Layered-circle layout and SVG rendering for model graphs. Nodes and edges
// come one-for-one from the model JSON; the layout only assigns coordinates.

import type { ModelJson } from "./types.js";

export interface GraphNode {
  index: number;
  label: string;
  literals: string[];
  x: number;
  y: number;
  highlighted: boolean;
}

export interface GraphEdge {
  from: number;
  to: number;
  action: string;
  highlighted: boolean;
}

export interface GraphLayout {
  nodes: GraphNode[];
  edges: GraphEdge[];
  empty: boolean;
}

export interface Highlight {
  worlds?: number[];
  arrows?: { action: string; from: number; to: number }[];
}

export function nodeLabel(literals: string[]): string {
  const positives = literals.filter((l) => !l.startsWith("~"));
  return positives.length ? positives.join(", ") : "(none)";
}

export function layoutModel(
  model: ModelJson,
  highlight: Highlight = {},
  radius = 150,
): GraphLayout {
  const n = model.worlds.length;
  const highlightWorlds = new Set(highlight.worlds ?? []);
  const arrowKey = (action: string, from: number, to: number) =>
    `${action}:${from}->${to}`;
  const highlightArrows = new Set(
    (highlight.arrows ?? []).map((a) => arrowKey(a.action, a.from, a.to)),
  );
  const nodes: GraphNode[] = model.worlds.map((literals, index) => {
    const angle = (2 * Math.PI * index) / Math.max(n, 1) + Math.PI / 2;
    return {
      index,
      label: nodeLabel(literals),
      literals,
      x: Math.round(radius * Math.cos(angle) * 100) / 100,
      y: Math.round(radius * Math.sin(angle) * 100) / 100,
      highlighted: highlightWorlds.has(index),
    };
  });
  const edges: GraphEdge[] = [];
  for (const action of Object.keys(model.relations).sort()) {
    for (const [from, to] of model.relations[action]) {
      edges.push({
        action,
        from,
        to,
        highlighted: highlightArrows.has(arrowKey(action, from, to)),
      });
    }
  }
  return { nodes, edges, empty: n === 0 };
}

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderSvg(layout: GraphLayout, size = 380): string {
  const half = size / 2;
  const parts: string[] = [
    `<svg viewBox="0 0 ${size} ${size}" xmlns="http://www.w3.org/2000/svg">`,
    `<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto"><path d="M0,0 L7,3 L0,6 z"/></marker></defs>`,
  ];
  if (layout.empty) {
    parts.push(
      `<text x="${half}" y="${half}" text-anchor="middle" class="empty-notice">` +
        "empty model (theory inconsistent or vacuous)</text>",
    );
    parts.push("</svg>");
    return parts.join("\n");
  }
  const actions = [...new Set(layout.edges.map((e) => e.action))].sort();
  const color = (action: string) =>
    COLORS[actions.indexOf(action) % COLORS.length];
  for (const edge of layout.edges) {
    const a = layout.nodes[edge.from];
    const b = layout.nodes[edge.to];
    const cls = edge.highlighted ? "edge highlighted" : "edge";
    if (edge.from === edge.to) {
      const x = a.x + half;
      const y = a.y + half;
      parts.push(
        `<path class="${cls}" data-action="${esc(edge.action)}" data-from="${edge.from}" data-to="${edge.to}" ` +
          `d="M ${x - 8} ${y - 26} C ${x - 26} ${y - 60}, ${x + 26} ${y - 60}, ${x + 8} ${y - 26}" ` +
          `fill="none" stroke="${color(edge.action)}" marker-end="url(#arrow)"/>`,
      );
      parts.push(
        `<text x="${x}" y="${y - 56}" text-anchor="middle" fill="${color(edge.action)}" class="edge-label">${esc(edge.action)}</text>`,
      );
      continue;
    }
    const x1 = a.x + half;
    const y1 = a.y + half;
    const x2 = b.x + half;
    const y2 = b.y + half;
    const mx = (x1 + x2) / 2 + (y2 - y1) * 0.12;
    const my = (y1 + y2) / 2 - (x2 - x1) * 0.12;
    parts.push(
      `<path class="${cls}" data-action="${esc(edge.action)}" data-from="${edge.from}" data-to="${edge.to}" ` +
        `d="M ${x1} ${y1} Q ${mx} ${my} ${x2} ${y2}" fill="none" ` +
        `stroke="${color(edge.action)}" marker-end="url(#arrow)"/>`,
    );
    parts.push(
      `<text x="${mx}" y="${my}" text-anchor="middle" fill="${color(edge.action)}" class="edge-label">${esc(edge.action)}</text>`,
    );
  }
  for (const node of layout.nodes) {
    const x = node.x + half;
    const y = node.y + half;
    const cls = node.highlighted ? "node highlighted" : "node";
    parts.push(
      `<circle class="${cls}" data-index="${node.index}" cx="${x}" cy="${y}" r="24"/>`,
    );
    parts.push(
      `<text class="node-label" data-index="${node.index}" x="${x}" y="${y + 3}" text-anchor="middle">${esc(node.label)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}
