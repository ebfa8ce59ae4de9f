/** Predictive sentence editor: a row of committed token chips plus the
 * list of legal continuations fetched from the server after every change.
 * A token can only ever be committed from that list, so the committed
 * prefix is a valid sentence prefix by construction. */

import { ApiError, EntrySummary, Reading, WikiApi } from "./api.js";

export const TERMINATORS = [".", "?"];

export interface DisambiguationChoice {
  entry: EntrySummary;
  readings: Reading[];
}

export type SubmitResult =
  | { kind: "saved"; entry: EntrySummary }
  | { kind: "ambiguous"; choice: DisambiguationChoice }
  | { kind: "rejected"; message: string; completions: string[] };

export class EditorState {
  committed: string[] = [];
  completions: string[] = [];
  filter = "";
  offline = false;
  busy = false;

  constructor(
    private readonly api: WikiApi,
    readonly article: string,
    public lang: string,
  ) {}

  /** Continuations shown to the user: server list narrowed by typed text. */
  visible(): string[] {
    const needle = this.filter.toLowerCase();
    return this.completions.filter((t) => t.toLowerCase().startsWith(needle));
  }

  canCommit(token: string): boolean {
    return !this.offline && this.completions.includes(token);
  }

  get submittable(): boolean {
    const last = this.committed[this.committed.length - 1];
    return last !== undefined && TERMINATORS.includes(last);
  }

  async refresh(): Promise<void> {
    try {
      this.completions = await this.api.complete(this.lang, this.committed);
      this.offline = false;
    } catch (err) {
      if (err instanceof ApiError) throw err;
      this.offline = true; // server unreachable: read-only until it returns
      this.completions = [];
    }
  }

  /** Commit one token; refuses anything outside the server's list. */
  async commit(token: string): Promise<boolean> {
    if (!this.canCommit(token)) return false;
    this.committed.push(token);
    this.filter = "";
    await this.refresh();
    return true;
  }

  async deleteLast(): Promise<void> {
    if (this.committed.length === 0) return;
    this.committed.pop();
    await this.refresh();
  }

  async setLanguage(lang: string): Promise<void> {
    this.lang = lang;
    this.committed = [];
    this.filter = "";
    await this.refresh();
  }

  /** Submit the finished sentence.  An ambiguous parse comes back as a
   * disambiguation choice; the caller either keeps all readings or picks
   * one (which replaces the entry's tree set with a singleton). */
  async submit(): Promise<SubmitResult> {
    if (!this.submittable) {
      return { kind: "rejected", message: "finish the sentence first", completions: [] };
    }
    this.busy = true;
    try {
      const entry = await this.api.createEntry(this.article, this.lang, this.committed);
      this.committed = [];
      await this.refresh();
      if (entry.ambiguous) {
        return { kind: "ambiguous", choice: { entry, readings: entry.readings } };
      }
      return { kind: "saved", entry };
    } catch (err) {
      if (err instanceof ApiError && err.status === 400) {
        const detail = err.detail as { message?: string; completions?: string[] };
        return {
          kind: "rejected",
          message: detail?.message ?? "rejected",
          completions: detail?.completions ?? [],
        };
      }
      throw err;
    } finally {
      this.busy = false;
    }
  }

  /** Resolve a pending disambiguation: pick one reading or keep them all. */
  async choose(choice: DisambiguationChoice, reading: Reading | null): Promise<EntrySummary> {
    if (reading === null) return choice.entry; // ambiguity preserved
    return this.api.disambiguate(choice.entry.id, reading.tree);
  }
}
