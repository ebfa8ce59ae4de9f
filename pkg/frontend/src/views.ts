/** Pure view models: everything the DOM layer shows is computed here from
 * server responses, which keeps the rendering testable without a browser. */

import { ArticleView, Consistency, RenderedEntry, TaxonomyNode } from "./api.js";

export interface EntryLine {
  id: string;
  sentences: string[];
  badge: string | null; // "ambiguous" | "excluded" | "unsupported" | "invalid" | null
  detail: string | null;
  links: string[];
  answers: string[] | null;
}

export function entryLine(entry: RenderedEntry): EntryLine {
  let badge: string | null = null;
  if (entry.status === "invalid") badge = "invalid";
  else if (entry.status === "excluded") badge = "excluded";
  else if (entry.status === "unsupported") badge = "unsupported";
  else if (entry.ambiguous) badge = "ambiguous";
  let detail = entry.reason;
  if (entry.ambiguous && entry.bracketed.length > 0) {
    detail = entry.bracketed.join("  |  ");
  }
  return {
    id: entry.id,
    sentences: entry.texts,
    badge,
    detail,
    links: entry.links,
    answers: entry.answers,
  };
}

export function articleLines(view: ArticleView): EntryLine[] {
  return view.entries.map(entryLine);
}

export function consistencyBanner(report: Consistency): string | null {
  if (report.status === "consistent") return null;
  if (report.status === "inconsistent") {
    return `the knowledge base is inconsistent; conflicting entries: ${report.conflicts.join(", ")}`;
  }
  return "reasoning did not finish; answers unavailable";
}

export interface TaxonomyLine {
  text: string;
  depth: number;
}

/** Indented tree listing of the class hierarchy (roots first). */
export function taxonomyLines(nodes: TaxonomyNode[]): TaxonomyLine[] {
  const byName = new Map(nodes.map((n) => [n.name, n]));
  const children = new Map<string, string[]>();
  const roots: string[] = [];
  for (const node of nodes) {
    const parent = node.parents[0];
    if (parent === undefined || !byName.has(parent)) {
      roots.push(node.name);
    } else {
      const bucket = children.get(parent) ?? [];
      bucket.push(node.name);
      children.set(parent, bucket);
    }
  }
  const lines: TaxonomyLine[] = [];
  const emit = (name: string, depth: number) => {
    const node = byName.get(name);
    if (!node) return;
    const label = node.label ? `${node.label} (${name})` : name;
    const eq = node.equivalents.length > 0 ? ` = ${node.equivalents.join(" = ")}` : "";
    lines.push({ text: label + eq, depth });
    for (const child of (children.get(name) ?? []).sort()) emit(child, depth + 1);
  };
  for (const root of roots.sort()) emit(root, 0);
  return lines;
}
