/** Typed client for the wiki service.  The UI keeps no grammar logic of its
 * own: every completion, rendering and semantic judgement comes from here. */

export interface Reading {
  tree: string;
  text: string;
  bracketed: string;
}

export interface EntrySummary {
  id: string;
  article: string;
  kind: string;
  status: string;
  ambiguous: boolean;
  trees: string[];
  axiom: string | null;
  readings: Reading[];
}

export interface RenderedEntry {
  id: string;
  kind: string;
  status: string;
  ambiguous: boolean;
  texts: string[];
  bracketed: string[];
  links: string[];
  axiom: string | null;
  reason: string | null;
  answers: string[] | null;
}

export interface ArticleView {
  name: string;
  kind: string;
  lang: string;
  entries: RenderedEntry[];
  source: string | null;
}

export interface ArticleSummary {
  name: string;
  kind: string;
}

export interface UnparsableDetail {
  message: string;
  longest_prefix: string[];
  completions: string[];
}

export interface RevalidationReport {
  ok: boolean;
  diagnostics: string[];
  translation_gaps: Record<string, string[]>;
  entries: { entry_id: string; outcome: string }[];
}

export interface TaxonomyNode {
  name: string;
  parents: string[];
  equivalents: string[];
  label: string | null;
}

export interface Consistency {
  status: string;
  conflicts: string[];
}

export interface QueryResult {
  individuals: string[];
  expression: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`api error ${status}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class WikiApi {
  constructor(
    private readonly base: string = "",
    private readonly fetcher: FetchLike = (u, i) => fetch(u, i),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetcher(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const body = response.status === 204 ? null : await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, (body as { detail?: unknown })?.detail ?? body);
    }
    return body as T;
  }

  languages(): Promise<string[]> {
    return this.request("/languages");
  }

  complete(lang: string, prefix: string[]): Promise<string[]> {
    return this.request<{ tokens: string[] }>("/complete", {
      method: "POST",
      body: JSON.stringify({ lang, prefix }),
    }).then((r) => r.tokens);
  }

  articles(): Promise<ArticleSummary[]> {
    return this.request("/articles");
  }

  article(name: string, lang: string): Promise<ArticleView> {
    return this.request(`/articles/${encodeURIComponent(name)}?lang=${lang}`);
  }

  createEntry(article: string, lang: string, tokens: string[]): Promise<EntrySummary> {
    return this.request("/entries", {
      method: "POST",
      body: JSON.stringify({ article, lang, tokens }),
    });
  }

  deleteEntry(id: string): Promise<null> {
    return this.request(`/entries/${id}`, { method: "DELETE" });
  }

  disambiguate(id: string, tree: string): Promise<EntrySummary> {
    return this.request(`/entries/${id}/disambiguate`, {
      method: "POST",
      body: JSON.stringify({ tree }),
    });
  }

  lexicon(lang: string): Promise<string> {
    return this.request<{ source: string }>(`/lexicon/${lang}`).then((r) => r.source);
  }

  putLexicon(lang: string, source: string): Promise<RevalidationReport> {
    return this.request(`/lexicon/${lang}`, {
      method: "PUT",
      body: JSON.stringify({ source }),
    });
  }

  taxonomy(lang: string): Promise<{ status: string; nodes: TaxonomyNode[] }> {
    return this.request(`/reasoner/taxonomy?lang=${lang}`);
  }

  consistency(): Promise<Consistency> {
    return this.request("/reasoner/consistency");
  }

  query(lang: string, tokens: string[]): Promise<QueryResult> {
    return this.request("/reasoner/query", {
      method: "POST",
      body: JSON.stringify({ lang, tokens }),
    });
  }
}
