// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { App } from "../src/app.js";
import { WikiApi } from "../src/api.js";
import { FakeServer, ASYMMETRY_ACE, ASYMMETRY_GER } from "./fakeserver.js";

const flush = () => new Promise((resolve) => setTimeout(resolve, 0));

describe("wiki application", () => {
  let server: FakeServer;
  let app: App;
  let root: HTMLElement;

  beforeEach(async () => {
    server = new FakeServer();
    root = document.createElement("div");
    document.body.replaceChildren(root);
    app = new App(new WikiApi("", server.fetch), root);
    await app.start();
    await flush();
  });

  it("shows the article in the selected language and switches on demand", async () => {
    expect(root.textContent).toContain(ASYMMETRY_ACE);
    expect(root.textContent).not.toContain(ASYMMETRY_GER);
    await app.setLanguage("ger");
    await flush();
    expect(root.textContent).toContain(ASYMMETRY_GER);
    expect(root.textContent).not.toContain(ASYMMETRY_ACE);
    // question answers render too
    expect(root.textContent).toContain("welches Land begrenzt Frankreich");
  });

  it("lists only server-provided completions as buttons", async () => {
    const labels = [...root.querySelectorAll("button.completion")].map(
      (b) => b.textContent,
    );
    // exactly the sentence openers of the fixture language, nothing else
    expect(labels.sort()).toEqual(["France", "Germany", "every", "if", "which"]);
  });

  async function clickToken(token: string): Promise<void> {
    const button = [...root.querySelectorAll<HTMLButtonElement>("button.completion")]
      .find((b) => b.textContent === token);
    expect(button, `no completion button for ${token}`).toBeDefined();
    button!.click();
    await flush();
    await flush();
  }

  async function typeSentenceAndSubmit(sentence: string): Promise<void> {
    for (const token of sentence.split(" ")) {
      await clickToken(token);
    }
    const submit = root.querySelector<HTMLButtonElement>("button.submit")!;
    expect(submit.disabled).toBe(false);
    submit.click();
    await flush();
    await flush();
  }

  it("opens the disambiguation dialog only for ambiguous sentences", async () => {
    await typeSentenceAndSubmit("Germany is a country .");
    expect(document.querySelector(".dialog")).toBeNull();

    await typeSentenceAndSubmit(
      "Germany contains a country that borders a country that contains a lake .",
    );
    const dialog = document.querySelector(".dialog");
    expect(dialog).not.toBeNull();
    const readings = [...dialog!.querySelectorAll("button")].map((b) => b.textContent);
    expect(readings.filter((r) => r && r.startsWith("[ Germany ]"))).toHaveLength(2);
    // choosing the first reading saves a singleton and closes the dialog
    [...dialog!.querySelectorAll("button")]
      .find((b) => b.textContent!.startsWith("[ Germany ]"))!
      .click();
    await flush();
    await flush();
    expect(document.querySelector(".dialog")).toBeNull();
  });

  it("cannot submit an unterminated sentence through the form", async () => {
    await clickToken("Germany");
    await clickToken("is");
    const submit = root.querySelector<HTMLButtonElement>("button.submit")!;
    expect(submit.disabled).toBe(true);
  });

  it("shows lexicon diagnostics inline and keeps the page on 422", async () => {
    const api = new WikiApi("", server.fetch);
    await expect(api.putLexicon("ger", "broken")).rejects.toMatchObject({
      status: 422,
    });
  });
});
