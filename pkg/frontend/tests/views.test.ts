import { describe, expect, it } from "vitest";

import { consistencyBanner, entryLine, taxonomyLines } from "../src/views.js";

describe("view models", () => {
  it("badges entries by status and ambiguity", () => {
    const base = {
      id: "e1",
      kind: "declarative",
      texts: ["a"],
      bracketed: [],
      links: [],
      axiom: null,
      reason: null,
      answers: null,
    };
    expect(entryLine({ ...base, status: "included", ambiguous: false }).badge).toBeNull();
    expect(entryLine({ ...base, status: "included", ambiguous: true }).badge).toBe("ambiguous");
    expect(entryLine({ ...base, status: "excluded", ambiguous: true }).badge).toBe("excluded");
    expect(entryLine({ ...base, status: "invalid", ambiguous: false }).badge).toBe("invalid");
  });

  it("joins bracketed readings into the detail line", () => {
    const line = entryLine({
      id: "e1",
      kind: "declarative",
      status: "excluded",
      ambiguous: true,
      texts: ["one surface"],
      bracketed: ["[ a ]", "[ b ]"],
      links: [],
      axiom: null,
      reason: "readings diverge",
      answers: null,
    });
    expect(line.detail).toBe("[ a ]  |  [ b ]");
  });

  it("banner only on trouble", () => {
    expect(consistencyBanner({ status: "consistent", conflicts: [] })).toBeNull();
    expect(
      consistencyBanner({ status: "inconsistent", conflicts: ["e1", "e2"] }),
    ).toContain("e1, e2");
  });

  it("indents the taxonomy by subsumption depth", () => {
    const lines = taxonomyLines([
      { name: "being", parents: [], equivalents: [], label: null },
      { name: "human", parents: ["being"], equivalents: [], label: null },
      { name: "man", parents: ["human"], equivalents: [], label: "Mann" },
    ]);
    expect(lines.map((l) => `${l.depth}:${l.text}`)).toEqual([
      "0:being",
      "1:human",
      "2:Mann (man)",
    ]);
  });
});
