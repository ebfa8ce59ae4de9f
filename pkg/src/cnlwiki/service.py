"""HTTP API over the wiki.

Language is always a request parameter, never server state; read endpoints
work on immutable snapshots, writes are serialized by the wiki's single
writer.  Error mapping: 400 unparsable input (with longest viable prefix
and its completions), 404 unknown article/entry, 409 inconsistent
knowledge base, 422 rejected grammar edit, 503 reasoner budget exhausted.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from pydantic import BaseModel, Field

from cnlwiki import semantics
from cnlwiki.grammar.errors import LinearizationError
from cnlwiki.lexicon import entity_name
from cnlwiki.trees import Tree
from cnlwiki.wiki import (
    ReadOnlyModule, RenderedEntry, UnknownArticle, UnknownEntry,
    UnparsableSentence, Wiki, WikiError, WikiState,
)


# -- request/response models ----------------------------------------------------

class CompleteRequest(BaseModel):
    lang: str
    prefix: list[str] = Field(default_factory=list)


class CompleteResponse(BaseModel):
    tokens: list[str]


class EntryCreate(BaseModel):
    article: str
    lang: str | None = None
    tokens: list[str] | None = None
    comment: str | None = None


class Reading(BaseModel):
    tree: str
    text: str
    bracketed: str


class EntrySummary(BaseModel):
    id: str
    article: str
    kind: str
    status: str
    ambiguous: bool
    trees: list[str]
    axiom: str | None
    readings: list[Reading]


class RenderedEntryModel(BaseModel):
    id: str
    kind: str
    status: str
    ambiguous: bool
    texts: list[str]
    bracketed: list[str]
    links: list[str]
    axiom: str | None
    reason: str | None
    answers: list[str] | None = None


class ArticleSummary(BaseModel):
    name: str
    kind: str


class ArticleView(BaseModel):
    name: str
    kind: str
    lang: str
    entries: list[RenderedEntryModel] = Field(default_factory=list)
    source: str | None = None  # grammar-module articles


class DisambiguateRequest(BaseModel):
    tree: str


class LexiconUpdate(BaseModel):
    source: str


class LexiconView(BaseModel):
    lang: str
    source: str


class EntryOutcomeModel(BaseModel):
    entry_id: str
    outcome: str
    missing: list[str] = Field(default_factory=list)
    changes: list[dict] = Field(default_factory=list)


class RevalidationModel(BaseModel):
    ok: bool
    diagnostics: list[str] = Field(default_factory=list)
    translation_gaps: dict[str, list[str]] = Field(default_factory=dict)
    entries: list[EntryOutcomeModel] = Field(default_factory=list)


class TaxonomyNodeModel(BaseModel):
    name: str
    parents: list[str]
    equivalents: list[str]
    label: str | None = None


class TaxonomyResponse(BaseModel):
    status: str
    nodes: list[TaxonomyNodeModel]


class ConsistencyResponse(BaseModel):
    status: str
    conflicts: list[str] = Field(default_factory=list)


class QueryRequest(BaseModel):
    lang: str
    tokens: list[str]


class QueryResponse(BaseModel):
    individuals: list[str]
    expression: str


# -- helpers -----------------------------------------------------------------------

def _wiki(request: Request) -> Wiki:
    return request.app.state.wiki


def _check_lang(state: WikiState, lang: str) -> None:
    if lang not in state.languages:
        raise HTTPException(400, f"unknown language {lang!r}")


def _render_individual(state: WikiState, lang: str, individual: str) -> str:
    for identifier, cat in state.grammar.abstract.lexical_functions().items():
        if cat == "PN" and entity_name(identifier) == individual:
            try:
                tokens = state.grammar.concrete(lang).linearize_free(Tree(identifier))
                return " ".join(tokens)
            except LinearizationError:
                break
    return individual


def _render_class(state: WikiState, lang: str, name: str) -> str | None:
    for identifier, cat in state.grammar.abstract.lexical_functions().items():
        if cat == "N" and entity_name(identifier) == name:
            try:
                tokens = state.grammar.concrete(lang).linearize_free(Tree(identifier))
                return " ".join(tokens)
            except LinearizationError:
                return None
    return None


def _rendered_model(state: WikiState, rendered: RenderedEntry, lang: str) -> RenderedEntryModel:
    answers = None
    if rendered.kind == "question" and rendered.status == "included":
        raw = state.question_answer(rendered.entry_id)
        if raw is not None:
            answers = [_render_individual(state, lang, a) for a in raw]
    return RenderedEntryModel(
        id=rendered.entry_id, kind=rendered.kind, status=rendered.status,
        ambiguous=rendered.ambiguous, texts=list(rendered.texts),
        bracketed=list(rendered.bracketed), links=list(rendered.links),
        axiom=rendered.axiom, reason=rendered.reason, answers=answers,
    )


def _entry_summary(state: WikiState, entry_id: str, lang: str) -> EntrySummary:
    from cnlwiki.morpho import detokenize
    from cnlwiki.trees import format_tree

    entry = state.entries[entry_id]
    status = state.statuses[entry_id]
    readings = []
    if entry.kind in ("declarative", "question") and status.status != "invalid":
        for tree in entry.trees:
            try:
                text = detokenize(state.grammar.linearize(lang, tree))
                bracketed = detokenize(state.grammar.linearize_bracketed(lang, tree))
            except LinearizationError:
                text = format_tree(tree)
                bracketed = text
            readings.append(Reading(tree=format_tree(tree), text=text,
                                    bracketed=bracketed))
    axiom = str(status.axiom) if status.axiom else (
        str(status.query) if status.query else None)
    return EntrySummary(
        id=entry.id, article=entry.article, kind=entry.kind, status=status.status,
        ambiguous=len(entry.trees) > 1,
        trees=[format_tree(t) for t in entry.trees],
        axiom=axiom, readings=readings,
    )


def _revalidation_model(report) -> RevalidationModel:
    return RevalidationModel(
        ok=report.ok,
        diagnostics=list(report.diagnostics),
        translation_gaps={k: list(v) for k, v in report.translation_gaps.items()},
        entries=[
            EntryOutcomeModel(
                entry_id=o.entry_id, outcome=o.outcome, missing=list(o.missing),
                changes=[{"lang": lang, "old": list(a), "new": list(b)}
                         for lang, a, b in o.changes],
            )
            for o in report.entries
        ],
    )


# -- app ---------------------------------------------------------------------------

def create_app(store: str | Path | None = None, seed_demo: bool = True,
               ui_dir: str | Path | None = None) -> FastAPI:
    store = store or os.environ.get("CNLWIKI_STORE")
    if not store:
        raise ValueError("no store directory: pass store= or set CNLWIKI_STORE")
    app = FastAPI(title="cnlwiki", version="0.1.0")
    app.state.wiki = Wiki(store, seed_demo=seed_demo)
    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.get("/languages")
    def languages(request: Request) -> list[str]:
        return _wiki(request).state.languages

    @app.post("/complete")
    def complete(request: Request, body: CompleteRequest) -> CompleteResponse:
        state = _wiki(request).state
        _check_lang(state, body.lang)
        return CompleteResponse(tokens=sorted(state.grammar.complete(body.lang,
                                                                     tuple(body.prefix))))

    @app.post("/entries", status_code=201)
    def create_entry(request: Request, body: EntryCreate) -> EntrySummary:
        wiki = _wiki(request)
        if body.comment is not None:
            entry = wiki.add_comment(body.article, body.comment)
            return _entry_summary(wiki.state, entry.id, body.lang or "ace")
        if body.lang is None or body.tokens is None:
            raise HTTPException(400, "need lang and tokens (or comment)")
        _check_lang(wiki.state, body.lang)
        try:
            entry = wiki.add_entry(body.article, body.lang, tuple(body.tokens))
        except UnparsableSentence as e:
            raise HTTPException(400, detail={
                "message": str(e),
                "longest_prefix": list(e.prefix),
                "completions": list(e.completions),
            }) from None
        except WikiError as e:
            raise HTTPException(400, str(e)) from None
        return _entry_summary(wiki.state, entry.id, body.lang)

    @app.delete("/entries/{entry_id}", status_code=204)
    def delete_entry(request: Request, entry_id: str) -> None:
        try:
            _wiki(request).remove_entry(entry_id)
        except UnknownEntry:
            raise HTTPException(404, f"no entry {entry_id}") from None

    @app.post("/entries/{entry_id}/disambiguate")
    def disambiguate(request: Request, entry_id: str,
                     body: DisambiguateRequest) -> EntrySummary:
        wiki = _wiki(request)
        try:
            entry = wiki.disambiguate(entry_id, body.tree)
        except UnknownEntry:
            raise HTTPException(404, f"no entry {entry_id}") from None
        except WikiError as e:
            raise HTTPException(400, str(e)) from None
        return _entry_summary(wiki.state, entry.id, entry.source_language or "ace")

    @app.get("/articles")
    def articles(request: Request) -> list[ArticleSummary]:
        wiki = _wiki(request)
        state = wiki.state
        out = [ArticleSummary(name=a.name, kind=a.kind)
               for a in sorted(state.articles.values(), key=lambda a: a.name)]
        out.extend(ArticleSummary(name=n, kind="grammar-module")
                   for n in wiki.grammar_module_names())
        return out

    @app.get("/articles/{name}")
    def article(request: Request, name: str, lang: str = "ace") -> ArticleView:
        wiki = _wiki(request)
        state = wiki.state
        _check_lang(state, lang)
        stored = state.articles.get(name)
        if stored is not None:
            entries = [_rendered_model(state, state.render_entry(eid, lang), lang)
                       for eid in stored.entry_ids]
            return ArticleView(name=name, kind=stored.kind, lang=lang, entries=entries)
        try:
            source = wiki.grammar_module_source(name)
        except UnknownArticle:
            raise HTTPException(404, f"no article {name}") from None
        return ArticleView(name=name, kind="grammar-module", lang=lang, source=source)

    @app.get("/lexicon/{lang}")
    def lexicon(request: Request, lang: str) -> LexiconView:
        state = _wiki(request).state
        _check_lang(state, lang)
        return LexiconView(lang=lang, source=state.lexicon_sources.get(lang, ""))

    @app.put("/lexicon/{lang}")
    def put_lexicon(request: Request, lang: str, body: LexiconUpdate) -> RevalidationModel:
        wiki = _wiki(request)
        _check_lang(wiki.state, lang)
        report = wiki.edit_lexicon(lang, body.source)
        if not report.ok:
            raise HTTPException(422, detail={"diagnostics": list(report.diagnostics)})
        return _revalidation_model(report)

    @app.put("/grammar/{module}")
    def put_grammar(request: Request, module: str, body: LexiconUpdate) -> RevalidationModel:
        wiki = _wiki(request)
        try:
            report = wiki.edit_grammar_module(module, body.source)
        except ReadOnlyModule as e:
            raise HTTPException(403, str(e)) from None
        except UnknownArticle:
            raise HTTPException(404, f"no module {module}") from None
        if not report.ok:
            raise HTTPException(422, detail={"diagnostics": list(report.diagnostics)})
        return _revalidation_model(report)

    @app.get("/reasoner/consistency")
    def consistency(request: Request) -> ConsistencyResponse:
        report = _wiki(request).state.reasoner.consistency
        if report.status == "unknown":
            raise HTTPException(503, "reasoning did not finish within the node budget")
        return ConsistencyResponse(status=report.status, conflicts=list(report.conflicts))

    @app.get("/reasoner/taxonomy")
    def taxonomy(request: Request, lang: str | None = None) -> TaxonomyResponse:
        state = _wiki(request).state
        report = state.reasoner.consistency
        if report.status == "unknown":
            raise HTTPException(503, "reasoning did not finish within the node budget")
        if report.status == "inconsistent":
            raise HTTPException(409, detail={"conflicts": list(report.conflicts)})
        nodes = [
            TaxonomyNodeModel(
                name=n.name, parents=list(n.parents), equivalents=list(n.equivalents),
                label=_render_class(state, lang, n.name) if lang else None,
            )
            for n in state.reasoner.taxonomy
        ]
        return TaxonomyResponse(status=report.status, nodes=nodes)

    @app.post("/reasoner/query")
    def query(request: Request, body: QueryRequest) -> QueryResponse:
        state = _wiki(request).state
        _check_lang(state, body.lang)
        report = state.reasoner.consistency
        if report.status == "unknown":
            raise HTTPException(503, "reasoning did not finish within the node budget")
        if report.status == "inconsistent":
            raise HTTPException(409, detail={"conflicts": list(report.conflicts)})
        tokens = tuple(body.tokens)
        if tokens and tokens[-1] == "?":
            tokens = tokens[:-1]
        trees = {t for t in state.grammar.parse(body.lang, tokens)
                 if state.grammar.abstract.category_of(t) == "Q"}
        if not trees:
            from cnlwiki.grammar.chart import longest_prefix
            alive, nexts = longest_prefix(state.grammar.concrete(body.lang),
                                          tuple(body.tokens))
            raise HTTPException(400, detail={
                "message": f"not a question in {body.lang}",
                "longest_prefix": list(body.tokens[:alive]),
                "completions": sorted(nexts),
            })
        exprs = set()
        for tree in trees:
            try:
                exprs.add(semantics.tree_to_query(tree))
            except semantics.UnsupportedTree as e:
                raise HTTPException(400, f"unsupported question: {e}") from None
        if len(exprs) > 1:
            raise HTTPException(400, "ambiguous question with diverging readings")
        expr = exprs.pop()
        individuals = sorted(state.reasoner.answer_query(expr))
        return QueryResponse(
            individuals=[_render_individual(state, body.lang, i) for i in individuals],
            expression=str(expr),
        )

    return app
