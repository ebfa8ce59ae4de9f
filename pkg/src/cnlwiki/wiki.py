"""Wiki data model and lifecycle.

Content is stored as abstract syntax trees, never as surface strings;
display text is re-linearized on demand.  The grammar (concrete modules
and lexicons) lives in the store as editable source pages.  Every write
produces a fresh immutable snapshot (grammar, entries, knowledge base
share one generation counter) that readers pick up atomically; a rejected
grammar edit leaves the store untouched.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path

from cnlwiki import semantics, shipped
from cnlwiki.grammar.abstract import TreeTypeError
from cnlwiki.grammar.chart import longest_prefix
from cnlwiki.grammar.compile import compile_grammar
from cnlwiki.grammar.errors import GrammarError, LinearizationError
from cnlwiki.grammar.pmcfg import CompiledGrammar
from cnlwiki.lexicon import compile_lexicon, entity_name
from cnlwiki.morpho import detokenize
from cnlwiki.reasoner import KnowledgeBase, Reasoner
from cnlwiki.trees import Tree, TreeSyntaxError, format_tree, parse_tree

TERMINATORS = {".": "S", "?": "Q"}
KIND_OF_CAT = {"S": "declarative", "Q": "question"}


class WikiError(Exception):
    pass


class UnknownArticle(WikiError):
    pass


class UnknownEntry(WikiError):
    pass


class ReadOnlyModule(WikiError):
    pass


class UnparsableSentence(WikiError):
    def __init__(self, message: str, prefix: tuple[str, ...], completions: tuple[str, ...]):
        super().__init__(message)
        self.prefix = prefix
        self.completions = completions


@dataclass(frozen=True)
class Entry:
    id: str
    article: str
    kind: str  # declarative | question | comment
    trees: tuple[Tree, ...]
    source_language: str
    comment: str = ""


@dataclass(frozen=True)
class EntryStatus:
    status: str  # included | excluded | unsupported | invalid | comment
    axiom: semantics.Axiom | None = None
    query: semantics.ClassExpr | None = None
    missing: tuple[str, ...] = ()
    reason: str | None = None


@dataclass(frozen=True)
class Article:
    name: str
    kind: str  # entity | free
    entry_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class RenderedEntry:
    entry_id: str
    kind: str
    status: str
    ambiguous: bool
    texts: tuple[str, ...]
    bracketed: tuple[str, ...]
    links: tuple[str, ...]
    axiom: str | None
    reason: str | None


@dataclass(frozen=True)
class EntryOutcome:
    entry_id: str
    outcome: str  # unchanged | invalidated | ambiguity-changed
    missing: tuple[str, ...] = ()
    changes: tuple[tuple[str, tuple[int, ...], tuple[int, ...]], ...] = ()


@dataclass(frozen=True)
class RevalidationReport:
    ok: bool
    diagnostics: tuple[str, ...] = ()
    translation_gaps: dict[str, list[str]] = field(default_factory=dict)
    entries: tuple[EntryOutcome, ...] = ()


class WikiState:
    """One immutable snapshot of the whole wiki."""

    def __init__(self, generation: int, grammar_sources: dict[str, str],
                 lexicon_sources: dict[str, str], grammar: CompiledGrammar,
                 articles: dict[str, Article], entries: dict[str, Entry]):
        self.generation = generation
        self.grammar_sources = grammar_sources
        self.lexicon_sources = lexicon_sources
        self.grammar = grammar
        self.articles = articles
        self.entries = entries
        self.statuses: dict[str, EntryStatus] = {
            eid: _entry_status(grammar, entry) for eid, entry in entries.items()
        }
        self.parse_counts: dict[str, dict[str, tuple[int, ...]]] = {
            eid: _parse_counts(grammar, entry) for eid, entry in entries.items()
        }
        self.kb = self._build_kb()
        self.reasoner = Reasoner(self.kb)
        self._answers: dict[str, list[str] | None] = {}
        self._answer_lock = threading.Lock()

    def _build_kb(self) -> KnowledgeBase:
        axioms: list[tuple[semantics.Axiom, str]] = []
        for eid, status in sorted(self.statuses.items()):
            if status.status == "included" and status.axiom is not None:
                axioms.append((status.axiom, eid))
        classes, roles, individuals = set(), set(), set()
        for identifier, cat in self.grammar.abstract.lexical_functions().items():
            name = entity_name(identifier)
            {"N": classes, "V2": roles, "PN": individuals}[cat].add(name)
        return KnowledgeBase.build(axioms, classes, roles, individuals,
                                   generation=self.generation)

    # -- queries ---------------------------------------------------------------

    @property
    def languages(self) -> list[str]:
        return self.grammar.languages

    def question_answer(self, entry_id: str) -> list[str] | None:
        """Individuals answering a question entry; None when unavailable."""
        status = self.statuses.get(entry_id)
        if status is None or status.query is None:
            return None
        with self._answer_lock:
            if entry_id in self._answers:
                return self._answers[entry_id]
        if not self.reasoner.is_consistent():
            answer: list[str] | None = None
        else:
            try:
                answer = sorted(self.reasoner.answer_query(status.query))
            except Exception:
                answer = None
        with self._answer_lock:
            self._answers[entry_id] = answer
        return answer

    def render_entry(self, entry_id: str, lang: str) -> RenderedEntry:
        entry = self.entries.get(entry_id)
        if entry is None:
            raise UnknownEntry(entry_id)
        status = self.statuses[entry_id]
        if entry.kind == "comment":
            return RenderedEntry(entry.id, entry.kind, "comment", False,
                                 (entry.comment,), (), (), None, None)
        links = tuple(sorted(
            f for t in entry.trees for f in t.functions()
            if f in self.grammar.abstract.lexical_functions()
        ))
        axiom_text = str(status.axiom) if status.axiom is not None else (
            str(status.query) if status.query is not None else None)
        if status.status == "invalid":
            texts = tuple(format_tree(t) for t in entry.trees)
            return RenderedEntry(entry.id, entry.kind, status.status, False,
                                 texts, (), links, None,
                                 "uses removed functions: " + ", ".join(status.missing))
        texts: list[str] = []
        missing = False
        for tree in entry.trees:
            try:
                texts.append(detokenize(self.grammar.linearize(lang, tree)))
            except LinearizationError:
                texts.append(format_tree(tree))
                missing = True
        unique: list[str] = []
        for t in texts:
            if t not in unique:
                unique.append(t)
        ambiguous = len(entry.trees) > 1
        bracketed: tuple[str, ...] = ()
        if ambiguous and len(unique) == 1 and not missing:
            bracketed = tuple(
                detokenize(self.grammar.linearize_bracketed(lang, t))
                for t in entry.trees
            )
        reason = status.reason
        if missing:
            reason = f"not translated to {lang}"
        return RenderedEntry(entry.id, entry.kind, status.status, ambiguous,
                             tuple(unique), bracketed, links, axiom_text, reason)


def _entry_status(grammar: CompiledGrammar, entry: Entry) -> EntryStatus:
    if entry.kind == "comment":
        return EntryStatus("comment")
    known = grammar.abstract.functions
    missing = tuple(sorted(
        f for t in entry.trees for f in t.functions() if f not in known
    ))
    if missing:
        return EntryStatus("invalid", missing=missing)
    for tree in entry.trees:
        try:
            grammar.abstract.category_of(tree)
        except TreeTypeError as e:
            return EntryStatus("invalid", missing=(), reason=str(e))
    if entry.kind == "question":
        query, reason = semantics.query_semantics(entry.trees)
        if query is not None:
            return EntryStatus("included", query=query)
        return EntryStatus("excluded" if reason == "readings diverge" else "unsupported",
                           reason=reason)
    sem = semantics.entry_semantics(entry.trees)
    return EntryStatus(sem.status, axiom=sem.axiom, reason=sem.reason)


def _parse_counts(grammar: CompiledGrammar, entry: Entry) -> dict[str, tuple[int, ...]]:
    """Ambiguity probe: per language, parse counts of each tree's linearization."""
    if entry.kind == "comment":
        return {}
    counts: dict[str, tuple[int, ...]] = {}
    for lang in grammar.languages:
        per_tree: list[int] = []
        for tree in entry.trees:
            try:
                tokens = grammar.linearize(lang, tree)
            except LinearizationError:
                per_tree.append(-1)  # not linearizable in this language
                continue
            per_tree.append(len(grammar.parse(lang, tokens)))
        counts[lang] = tuple(per_tree)
    return counts


def _compile_sources(grammar_sources: dict[str, str],
                     lexicon_sources: dict[str, str]) -> CompiledGrammar:
    items = {
        lang: compile_lexicon(shipped.LEXICON_MODULES.get(lang, f"Lexicon_{lang}"),
                              lang, text)
        for lang, text in lexicon_sources.items()
    }
    return compile_grammar(grammar_sources, items)


class Wiki:
    """Store-backed wiki with a single writer and snapshot readers."""

    def __init__(self, store: str | Path, seed_demo: bool = True):
        self.store = Path(store)
        self._lock = threading.RLock()
        if not (self.store / "meta.json").exists():
            self._seed(seed_demo)
        self._next_entry_id = 1
        self._state = self._load()

    # -- snapshots ----------------------------------------------------------------

    @property
    def state(self) -> WikiState:
        return self._state

    # -- bootstrap ------------------------------------------------------------------

    def _seed(self, demo: bool) -> None:
        grammar_dir = self.store / "grammar"
        articles_dir = self.store / "articles"
        grammar_dir.mkdir(parents=True, exist_ok=True)
        articles_dir.mkdir(parents=True, exist_ok=True)
        for name, text in shipped.grammar_sources().items():
            (grammar_dir / f"{name}.gfs").write_text(text, "utf-8")
        for lang, text in shipped.lexicon_sources().items():
            (grammar_dir / f"{shipped.LEXICON_MODULES[lang]}.gfs").write_text(text, "utf-8")
        (self.store / "meta.json").write_text(
            json.dumps({"generation": 0, "next_entry_id": 1}), "utf-8")
        if demo:
            self._next_entry_id = 1
            self._state = self._load()
            for sentence in (
                "Germany is a country .",
                "France is a country .",
                "Germany borders France .",
                "John is a person .",
                "John likes Germany .",
                "if X contains Y then Y does not contain X .",
                "which country borders France ?",
            ):
                self.add_entry("Geography", "ace", tuple(sentence.split()))

    # -- persistence -------------------------------------------------------------------

    def _load(self) -> WikiState:
        meta = json.loads((self.store / "meta.json").read_text("utf-8"))
        self._next_entry_id = meta.get("next_entry_id", 1)
        grammar_sources: dict[str, str] = {}
        lexicon_sources: dict[str, str] = {}
        lexicon_names = {v: k for k, v in shipped.LEXICON_MODULES.items()}
        for path in sorted((self.store / "grammar").glob("*.gfs")):
            name = path.stem
            if name in lexicon_names:
                lexicon_sources[lexicon_names[name]] = path.read_text("utf-8")
            else:
                grammar_sources[name] = path.read_text("utf-8")
        grammar = _compile_sources(grammar_sources, lexicon_sources)
        articles: dict[str, Article] = {}
        entries: dict[str, Entry] = {}
        for path in sorted((self.store / "articles").glob("*.json")):
            data = json.loads(path.read_text("utf-8"))
            ids = []
            for raw in data.get("entries", []):
                entry = Entry(
                    id=raw["id"],
                    article=data["name"],
                    kind=raw["kind"],
                    trees=tuple(parse_tree(t) for t in raw.get("trees", [])),
                    source_language=raw.get("sourceLanguage", ""),
                    comment=raw.get("comment", ""),
                )
                entries[entry.id] = entry
                ids.append(entry.id)
            articles[data["name"]] = Article(data["name"], data.get("kind", "free"),
                                             tuple(ids))
        state = WikiState(meta.get("generation", 0), grammar_sources,
                          lexicon_sources, grammar, articles, entries)
        self._ensure_entity_articles(state)
        return state

    def _ensure_entity_articles(self, state: WikiState) -> None:
        changed = False
        for identifier in state.grammar.abstract.lexical_functions():
            if identifier not in state.articles:
                state.articles[identifier] = Article(identifier, "entity", ())
                self._write_article(state, identifier)
                changed = True
        if changed:
            self._write_meta(state.generation)

    def _write_meta(self, generation: int) -> None:
        payload = json.dumps({"generation": generation,
                              "next_entry_id": self._next_entry_id})
        path = self.store / "meta.json"
        tmp = path.with_suffix(".tmp")
        tmp.write_text(payload, "utf-8")
        os.replace(tmp, path)

    def _write_article(self, state: WikiState, name: str) -> None:
        article = state.articles[name]
        payload = {
            "name": article.name,
            "kind": article.kind,
            "entries": [
                {
                    "id": eid,
                    "kind": state.entries[eid].kind,
                    "trees": [format_tree(t) for t in state.entries[eid].trees],
                    "sourceLanguage": state.entries[eid].source_language,
                    **({"comment": state.entries[eid].comment}
                       if state.entries[eid].kind == "comment" else {}),
                }
                for eid in article.entry_ids
            ],
        }
        path = self.store / "articles" / f"{name}.json"
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=1), "utf-8")
        os.replace(tmp, path)

    def _write_grammar_module(self, filename: str, text: str) -> None:
        path = self.store / "grammar" / filename
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text, "utf-8")
        os.replace(tmp, path)

    # -- article/entry operations ---------------------------------------------------------

    def _valid_article_name(self, name: str) -> None:
        if not name or not all(c.isalnum() or c in "_-" for c in name):
            raise WikiError(f"bad article name {name!r}")

    def add_entry(self, article: str, lang: str, tokens: tuple[str, ...]) -> Entry:
        with self._lock:
            state = self._state
            self._valid_article_name(article)
            if lang not in state.languages:
                raise WikiError(f"unknown language {lang!r}")
            tokens = tuple(tokens)
            expected_cat: str | None = None
            bare = tokens
            if tokens and tokens[-1] in TERMINATORS:
                expected_cat = TERMINATORS[tokens[-1]]
                bare = tokens[:-1]
            trees = state.grammar.parse(lang, bare)
            if expected_cat is not None:
                trees = {t for t in trees
                         if state.grammar.abstract.category_of(t) == expected_cat}
            if not trees:
                alive, nexts = longest_prefix(state.grammar.concrete(lang), tokens)
                raise UnparsableSentence(
                    f"not a sentence in {lang}", tokens[:alive], tuple(sorted(nexts)))
            cats = {state.grammar.abstract.category_of(t) for t in trees}
            if len(cats) > 1:
                raise UnparsableSentence(
                    "readings mix statements and questions; add the terminator",
                    tokens, ())
            kind = KIND_OF_CAT[cats.pop()]
            entry = Entry(self._fresh_id(), article, kind,
                          tuple(sorted(trees, key=format_tree)), lang)
            self._install_entry(entry)
            return entry

    def add_comment(self, article: str, text: str) -> Entry:
        with self._lock:
            self._valid_article_name(article)
            entry = Entry(self._fresh_id(), article, "comment", (), "", comment=text)
            self._install_entry(entry)
            return entry

    def _fresh_id(self) -> str:
        eid = f"e{self._next_entry_id}"
        self._next_entry_id += 1
        return eid

    def _install_entry(self, entry: Entry) -> None:
        state = self._state
        articles = dict(state.articles)
        old = articles.get(entry.article)
        if old is None:
            articles[entry.article] = Article(entry.article, "free", (entry.id,))
        else:
            articles[entry.article] = Article(old.name, old.kind,
                                              old.entry_ids + (entry.id,))
        entries = dict(state.entries)
        entries[entry.id] = entry
        new_state = WikiState(state.generation + 1, state.grammar_sources,
                              state.lexicon_sources, state.grammar, articles, entries)
        self._write_article(new_state, entry.article)
        self._write_meta(new_state.generation)
        self._state = new_state

    def remove_entry(self, entry_id: str) -> None:
        with self._lock:
            state = self._state
            entry = state.entries.get(entry_id)
            if entry is None:
                raise UnknownEntry(entry_id)
            articles = dict(state.articles)
            article = articles[entry.article]
            articles[entry.article] = Article(
                article.name, article.kind,
                tuple(e for e in article.entry_ids if e != entry_id))
            entries = dict(state.entries)
            del entries[entry_id]
            new_state = WikiState(state.generation + 1, state.grammar_sources,
                                  state.lexicon_sources, state.grammar,
                                  articles, entries)
            self._write_article(new_state, entry.article)
            self._write_meta(new_state.generation)
            self._state = new_state

    def disambiguate(self, entry_id: str, tree_text: str) -> Entry:
        """Replace an ambiguous entry's tree set with one chosen reading."""
        with self._lock:
            state = self._state
            entry = state.entries.get(entry_id)
            if entry is None:
                raise UnknownEntry(entry_id)
            try:
                chosen = parse_tree(tree_text)
            except TreeSyntaxError as e:
                raise WikiError(str(e)) from None
            if chosen not in entry.trees:
                raise WikiError("chosen reading is not one of the entry's trees")
            new_entry = Entry(entry.id, entry.article, entry.kind, (chosen,),
                              entry.source_language)
            entries = dict(state.entries)
            entries[entry.id] = new_entry
            new_state = WikiState(state.generation + 1, state.grammar_sources,
                                  state.lexicon_sources, state.grammar,
                                  dict(state.articles), entries)
            self._write_article(new_state, entry.article)
            self._write_meta(new_state.generation)
            self._state = new_state
            return new_entry

    # -- grammar editing -------------------------------------------------------------------

    def edit_lexicon(self, lang: str, source: str) -> RevalidationReport:
        with self._lock:
            state = self._state
            if lang not in shipped.LEXICON_MODULES and lang not in state.lexicon_sources:
                raise WikiError(f"unknown language {lang!r}")
            lexicons = dict(state.lexicon_sources)
            lexicons[lang] = source
            return self._swap_grammar(state.grammar_sources, lexicons,
                                      {shipped.LEXICON_MODULES.get(lang, lang) + ".gfs": source})

    def edit_grammar_module(self, name: str, source: str) -> RevalidationReport:
        with self._lock:
            state = self._state
            if name == shipped.ABSTRACT_MODULE:
                raise ReadOnlyModule("the abstract syntax module is read-only")
            lexicon_names = {v: k for k, v in shipped.LEXICON_MODULES.items()}
            if name in lexicon_names:
                return self.edit_lexicon(lexicon_names[name], source)
            if name not in state.grammar_sources:
                raise UnknownArticle(name)
            sources = dict(state.grammar_sources)
            sources[name] = source
            return self._swap_grammar(sources, state.lexicon_sources,
                                      {f"{name}.gfs": source})

    def _swap_grammar(self, grammar_sources: dict[str, str],
                      lexicon_sources: dict[str, str],
                      files: dict[str, str]) -> RevalidationReport:
        state = self._state
        try:
            grammar = _compile_sources(grammar_sources, lexicon_sources)
        except GrammarError as e:
            return RevalidationReport(ok=False,
                                      diagnostics=tuple(str(d) for d in e.diagnostics))
        new_state = WikiState(state.generation + 1, grammar_sources, lexicon_sources,
                              grammar, dict(state.articles), dict(state.entries))
        outcomes = []
        for eid in sorted(state.entries):
            old_status = state.statuses[eid]
            new_status = new_state.statuses[eid]
            if new_status.status == "invalid" and old_status.status != "invalid":
                outcomes.append(EntryOutcome(eid, "invalidated",
                                             missing=new_status.missing))
                continue
            changes = []
            old_counts = state.parse_counts.get(eid, {})
            new_counts = new_state.parse_counts.get(eid, {})
            for lang in sorted(set(old_counts) | set(new_counts)):
                a, b = old_counts.get(lang), new_counts.get(lang)
                if a is not None and b is not None and a != b:
                    changes.append((lang, a, b))
            if changes:
                outcomes.append(EntryOutcome(eid, "ambiguity-changed",
                                             changes=tuple(changes)))
            else:
                outcomes.append(EntryOutcome(eid, "unchanged"))
        self._ensure_entity_articles(new_state)
        for filename, text in files.items():
            self._write_grammar_module(filename, text)
        self._write_meta(new_state.generation)
        self._state = new_state
        return RevalidationReport(ok=True, translation_gaps=dict(grammar.lexical_gaps),
                                  entries=tuple(outcomes))

    # -- exports ------------------------------------------------------------------------------

    def export_axioms(self) -> list[tuple[str, str]]:
        state = self._state
        out = []
        for eid in sorted(state.statuses):
            status = state.statuses[eid]
            if status.status == "included" and status.axiom is not None:
                out.append((eid, str(status.axiom)))
        return out

    def grammar_module_names(self) -> list[str]:
        state = self._state
        names = list(state.grammar_sources)
        names.extend(shipped.LEXICON_MODULES[lang] for lang in state.lexicon_sources)
        return sorted(names)

    def grammar_module_source(self, name: str) -> str:
        state = self._state
        if name in state.grammar_sources:
            return state.grammar_sources[name]
        lexicon_names = {v: k for k, v in shipped.LEXICON_MODULES.items()}
        if name in lexicon_names and lexicon_names[name] in state.lexicon_sources:
            return state.lexicon_sources[lexicon_names[name]]
        raise UnknownArticle(name)
