/** Wiki single-page application: article list, predictive editor,
 * disambiguation dialog, lexicon editing, reasoning panel, language menu. */

import { ApiError, ArticleView, WikiApi } from "./api.js";
import { clear, el } from "./dom.js";
import { DisambiguationChoice, EditorState } from "./editor.js";
import { articleLines, consistencyBanner, taxonomyLines } from "./views.js";

export class App {
  private lang = "ace";
  private article = "Geography";
  private editor: EditorState;

  constructor(
    private readonly api: WikiApi,
    private readonly root: HTMLElement,
  ) {
    this.editor = new EditorState(api, this.article, this.lang);
  }

  async start(): Promise<void> {
    const langs = await this.api.languages();
    this.lang = langs[0] ?? "ace";
    await this.editor.setLanguage(this.lang);
    await this.render();
  }

  async setLanguage(lang: string): Promise<void> {
    this.lang = lang;
    await this.editor.setLanguage(lang);
    await this.render();
  }

  async openArticle(name: string): Promise<void> {
    this.article = name;
    this.editor = new EditorState(this.api, name, this.lang);
    await this.editor.refresh();
    await this.render();
  }

  private async render(): Promise<void> {
    clear(this.root);
    const [langs, articles] = await Promise.all([
      this.api.languages(),
      this.api.articles(),
    ]);
    const sidebar = el("div", { class: "sidebar" });
    const langMenu = el("select", { class: "lang" });
    for (const lang of langs) {
      const option = el("option", { value: lang }, [lang]);
      if (lang === this.lang) option.selected = true;
      langMenu.append(option);
    }
    langMenu.addEventListener("change", () => void this.setLanguage(langMenu.value));
    sidebar.append(el("div", {}, ["language: ", langMenu]));
    const list = el("ul", { class: "articles" });
    for (const a of articles) {
      const link = el("a", { href: "#" }, [`${a.name} [${a.kind}]`]);
      link.addEventListener("click", (e) => {
        e.preventDefault();
        void this.openArticle(a.name);
      });
      list.append(el("li", {}, [link]));
    }
    sidebar.append(list);
    this.root.append(sidebar);

    const main = el("div", { class: "main" });
    this.root.append(main);
    let view: ArticleView;
    try {
      view = await this.api.article(this.article, this.lang);
    } catch (err) {
      main.append(el("p", { class: "error" }, [String(err)]));
      return;
    }
    main.append(el("h1", {}, [view.name]));
    if (view.kind === "grammar-module") {
      this.renderModuleEditor(main, view);
      return;
    }
    this.renderEntries(main, view);
    this.renderEditor(main);
    await this.renderReasoning(main);
  }

  private renderEntries(main: HTMLElement, view: ArticleView): void {
    const list = el("ul", { class: "entries" });
    for (const line of articleLines(view)) {
      const item = el("li", { "data-entry": line.id });
      for (const sentence of line.sentences) {
        item.append(el("div", { class: "sentence" }, [sentence]));
      }
      if (line.badge) item.append(el("span", { class: `badge ${line.badge}` }, [line.badge]));
      if (line.detail) item.append(el("div", { class: "detail" }, [line.detail]));
      if (line.answers) {
        item.append(el("div", { class: "answers" }, ["= " + line.answers.join(", ")]));
      }
      const remove = el("a", { href: "#", class: "remove" }, ["x"]);
      remove.addEventListener("click", (e) => {
        e.preventDefault();
        void this.api.deleteEntry(line.id).then(() => this.render());
      });
      item.append(remove);
      list.append(item);
    }
    main.append(list);
  }

  private renderEditor(main: HTMLElement): void {
    const editor = this.editor;
    const box = el("div", { class: "editor" });
    const chips = el("span", { class: "chips" });
    const redraw = () => {
      clear(chips);
      for (const token of editor.committed) {
        chips.append(el("span", { class: "chip" }, [token]));
      }
      clear(completions);
      for (const token of editor.visible()) {
        const button = el("button", { class: "completion" }, [token]);
        button.addEventListener("click", () => {
          void editor.commit(token).then(redraw);
        });
        completions.append(button);
      }
      submit.disabled = !editor.submittable;
      banner.textContent = editor.offline ? "server unreachable; editing disabled" : "";
    };
    const input = el("input", { type: "text", placeholder: "filter tokens" });
    input.addEventListener("input", () => {
      editor.filter = input.value;
      redraw();
    });
    input.addEventListener("keydown", (event) => {
      if (event.key === "Backspace" && input.value === "") {
        void editor.deleteLast().then(redraw);
      }
      if (event.key === "Enter") {
        const [first] = editor.visible();
        if (first !== undefined) {
          input.value = "";
          editor.filter = "";
          void editor.commit(first).then(redraw);
        }
      }
    });
    const completions = el("div", { class: "completions" });
    const submit = el("button", { class: "submit" }, ["add sentence"]);
    const banner = el("div", { class: "banner" });
    submit.addEventListener("click", () => {
      void this.editor.submit().then(async (result) => {
        if (result.kind === "ambiguous") {
          // the dialog owns the next render (on choose / keep-all)
          this.showDisambiguation(result.choice);
          return;
        }
        if (result.kind === "rejected") {
          banner.textContent = result.message;
          return;
        }
        await this.render();
      });
    });
    box.append(chips, input, completions, submit, banner);
    main.append(box);
    redraw();
  }

  private showDisambiguation(choice: DisambiguationChoice): void {
    const dialog = el("div", { class: "dialog" });
    dialog.append(el("p", {}, ["The sentence has several readings:"]));
    for (const reading of choice.readings) {
      const pick = el("button", {}, [reading.bracketed]);
      pick.addEventListener("click", () => {
        void this.editor.choose(choice, reading).then(() => {
          dialog.remove();
          void this.render();
        });
      });
      dialog.append(el("div", {}, [pick]));
    }
    const keep = el("button", { class: "keep" }, ["keep all readings"]);
    keep.addEventListener("click", () => {
      dialog.remove();
      void this.render();
    });
    dialog.append(keep);
    this.root.append(dialog);
  }

  private renderModuleEditor(main: HTMLElement, view: ArticleView): void {
    const area = el("textarea", { rows: "24", cols: "80" });
    area.value = view.source ?? "";
    const save = el("button", {}, ["save module"]);
    const problems = el("pre", { class: "problems" });
    save.addEventListener("click", () => {
      const lang = view.name.startsWith("Lexicon")
        ? view.name.replace("Lexicon", "").toLowerCase()
        : null;
      const put = lang
        ? this.api.putLexicon(lang, area.value)
        : Promise.reject(new Error("only lexicon modules are editable here"));
      void put
        .then(() => this.render())
        .catch((err) => {
          if (err instanceof ApiError && err.status === 422) {
            const detail = err.detail as { diagnostics?: string[] };
            problems.textContent = (detail.diagnostics ?? []).join("\n");
          } else {
            problems.textContent = String(err);
          }
        });
    });
    main.append(area, save, problems);
  }

  private async renderReasoning(main: HTMLElement): Promise<void> {
    const panel = el("div", { class: "reasoning" });
    main.append(panel);
    try {
      const consistency = await this.api.consistency();
      const banner = consistencyBanner(consistency);
      if (banner) {
        const warning = el("div", { class: "warning" }, [banner + " "]);
        for (const id of consistency.conflicts) {
          const link = el("a", { href: `#${id}`, class: "conflict" }, [id]);
          warning.append(link, " ");
        }
        panel.append(warning);
        return;
      }
      const taxonomy = await this.api.taxonomy(this.lang);
      const pre = el("pre", { class: "taxonomy" });
      pre.textContent = taxonomyLines(taxonomy.nodes)
        .map((line) => "  ".repeat(line.depth) + line.text)
        .join("\n");
      panel.append(el("h2", {}, ["classes"]), pre);
    } catch (err) {
      panel.append(el("div", { class: "warning" }, [String(err)]));
    }
  }
}

export function mount(root: HTMLElement, base = ""): App {
  const app = new App(new WikiApi(base), root);
  void app.start();
  return app;
}
