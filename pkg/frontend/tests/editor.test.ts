import { beforeEach, describe, expect, it } from "vitest";

import { WikiApi } from "../src/api.js";
import { EditorState } from "../src/editor.js";
import { FakeServer, ASYMMETRY_ACE } from "./fakeserver.js";

describe("predictive editor", () => {
  let server: FakeServer;
  let editor: EditorState;

  beforeEach(async () => {
    server = new FakeServer();
    editor = new EditorState(new WikiApi("", server.fetch), "Geography", "ace");
    await editor.refresh();
  });

  it("runs twenty scripted interactions without ever committing an illegal token", async () => {
    // interleaves legal commits, illegal attempts, filtering and deletion
    const script: Array<
      | { do: "commit"; token: string; accepted: boolean }
      | { do: "filter"; text: string; expectVisible: string[] }
      | { do: "delete" }
    > = [
      { do: "commit", token: "borders", accepted: false }, // 1: not a sentence start
      { do: "commit", token: "every", accepted: true }, // 2
      { do: "commit", token: "Germany", accepted: false }, // 3: not after "every"
      { do: "filter", text: "cou", expectVisible: ["country"] }, // 4
      { do: "commit", token: "country", accepted: true }, // 5
      { do: "commit", token: "country", accepted: false }, // 6: no double noun
      { do: "commit", token: "borders", accepted: true }, // 7
      { do: "commit", token: "France", accepted: true }, // 8
      { do: "commit", token: "?", accepted: false }, // 9: statements end with "."
      { do: "commit", token: ".", accepted: true }, // 10
      { do: "commit", token: ".", accepted: false }, // 11: sentence finished
      { do: "delete" }, // 12
      { do: "commit", token: ".", accepted: true }, // 13: back at the end
      { do: "delete" }, // 14
      { do: "delete" }, // 15
      { do: "filter", text: "Fra", expectVisible: ["France"] }, // 16
      { do: "filter", text: "xyz", expectVisible: [] }, // 17
      { do: "commit", token: "xyz", accepted: false }, // 18: filter text is not a token
      { do: "commit", token: "France", accepted: true }, // 19
      { do: "commit", token: ".", accepted: true }, // 20
    ];
    let steps = 0;
    for (const step of script) {
      steps += 1;
      if (step.do === "commit") {
        const before = [...editor.committed];
        expect(editor.canCommit(step.token), `step ${steps}`).toBe(step.accepted);
        const done = await editor.commit(step.token);
        expect(done, `step ${steps}`).toBe(step.accepted);
        if (!step.accepted) {
          expect(editor.committed).toEqual(before);
        } else {
          expect(editor.committed[editor.committed.length - 1]).toBe(step.token);
        }
      } else if (step.do === "filter") {
        editor.filter = step.text;
        expect(editor.visible(), `step ${steps}`).toEqual(step.expectVisible);
      } else {
        await editor.deleteLast();
      }
    }
    expect(steps).toBe(20);
    expect(editor.committed).toEqual(["every", "country", "borders", "France", "."]);
    expect(editor.submittable).toBe(true);
  });

  it("only terminated sentences are submittable", async () => {
    expect(editor.submittable).toBe(false);
    for (const token of ASYMMETRY_ACE.split(" ")) {
      expect(await editor.commit(token)).toBe(true);
    }
    expect(editor.submittable).toBe(false);
    expect(editor.completions).toEqual(["."]);
    await editor.commit(".");
    expect(editor.submittable).toBe(true);
    const result = await editor.submit();
    expect(result.kind).toBe("saved");
    expect(editor.committed).toEqual([]);
  });

  it("surfaces a disambiguation choice exactly when the parse is ambiguous", async () => {
    const sentence = "Germany contains a country that borders a country that contains a lake .";
    for (const token of sentence.split(" ")) {
      expect(await editor.commit(token)).toBe(true);
    }
    const result = await editor.submit();
    expect(result.kind).toBe("ambiguous");
    if (result.kind !== "ambiguous") return;
    expect(result.choice.readings).toHaveLength(2);
    expect(result.choice.readings[0]!.bracketed).not.toBe(result.choice.readings[1]!.bracketed);
    // picking one reading saves a singleton
    const saved = await editor.choose(result.choice, result.choice.readings[0]!);
    expect(saved.trees).toHaveLength(1);
    // an unambiguous sentence never asks
    for (const token of "Germany is a country .".split(" ")) {
      await editor.commit(token);
    }
    const plain = await editor.submit();
    expect(plain.kind).toBe("saved");
  });

  it("keep-all preserves the ambiguous entry untouched", async () => {
    const sentence = "Germany contains a country that borders a country that contains a lake .";
    for (const token of sentence.split(" ")) await editor.commit(token);
    const result = await editor.submit();
    if (result.kind !== "ambiguous") throw new Error("expected ambiguity");
    const kept = await editor.choose(result.choice, null);
    expect(kept.ambiguous).toBe(true);
    expect(kept.trees).toHaveLength(2);
  });

  it("goes read-only while the server is unreachable", async () => {
    server.unreachable = true;
    await editor.refresh();
    expect(editor.offline).toBe(true);
    expect(editor.canCommit("every")).toBe(false);
    expect(await editor.commit("every")).toBe(false);
    server.unreachable = false;
    await editor.refresh();
    expect(editor.offline).toBe(false);
    expect(editor.canCommit("every")).toBe(true);
  });

  it("language switch resets the committed prefix", async () => {
    await editor.commit("every");
    await editor.setLanguage("ger");
    expect(editor.committed).toEqual([]);
    expect(editor.canCommit("jedes")).toBe(true);
    expect(editor.canCommit("every")).toBe(false);
  });
});
