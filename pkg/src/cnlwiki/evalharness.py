"""Grammar evaluation: exhaustive sentence enumeration, ambiguity
measurement, round-trip checks.

Sentence enumeration works on the PMCFG itself (length-bounded derivation
search over field vectors); the tree-side enumeration (depth-layered,
streamed at the top layer) both feeds the round-trip check and serves as
an independent cross-check of the sentence enumeration.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from multiprocessing import get_context

from cnlwiki import semantics
from cnlwiki.grammar.abstract import AbstractSyntax
from cnlwiki.grammar.pmcfg import CompiledGrammar, Concrete
from cnlwiki.trees import Tree, format_tree, parse_tree

DEFAULT_SENTENCE_CAP = 10
# Derivations whose slots run a little over the requested bound are kept
# internally so that co-derived slots of unequal length cannot starve a
# shorter start slot.
_SLOT_MARGIN = 2


class EvalError(ValueError):
    pass


@dataclass
class EvalReport:
    language: str
    sentence_counts: dict[int, int] = field(default_factory=dict)
    sentences_total: int = 0
    ambiguous: int = 0
    harmless: int = 0
    ambiguity_rate: float = 0.0
    harmless_rate: float = 1.0
    round_trip_checked: int = 0
    round_trip_failures: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "language": self.language,
            "sentence_counts": {str(k): v for k, v in sorted(self.sentence_counts.items())},
            "sentences_total": self.sentences_total,
            "ambiguous": self.ambiguous,
            "harmless": self.harmless,
            "ambiguity_rate": self.ambiguity_rate,
            "harmless_rate": self.harmless_rate,
            "round_trip_checked": self.round_trip_checked,
            "round_trip_failures": self.round_trip_failures,
        }


# ---------------------------------------------------------------------------
# Sentence enumeration over the PMCFG

class _FieldVecEnumerator:
    def __init__(self, concrete: Concrete):
        self.concrete = concrete
        self.mins = concrete.min_slot_lengths()
        self.memo: dict[tuple[int, int], tuple] = {}
        self.onstack: set[tuple[int, int]] = set()

    def fieldvecs(self, cid: int, budget: int) -> tuple:
        """All derivation field vectors of cid with every slot <= budget."""
        if budget < 0:
            return ()
        if any(m > budget for m in self.mins[cid]):
            return ()
        key = (cid, budget)
        got = self.memo.get(key)
        if got is not None:
            return got
        if key in self.onstack:
            raise EvalError("grammar admits zero-progress recursion; "
                            "cannot enumerate sentences")
        self.onstack.add(key)
        out: set[tuple] = set()
        for p in self.concrete.prods_by_result.get(cid, ()):
            kid_sets = []
            feasible = True
            for i, arg in enumerate(p.args):
                gaps = []
                for seq in p.seqs:
                    if not any(type(sym) is not str and sym[0] == i for sym in seq):
                        continue
                    fixed = sum(1 for sym in seq if type(sym) is str)
                    other = sum(self.mins[p.args[sym[0]]][sym[1]]
                                for sym in seq
                                if type(sym) is not str and sym[0] != i)
                    gaps.append(fixed + other)
                kid_budget = budget - min(gaps) if gaps else budget
                kids = self.fieldvecs(arg, kid_budget)
                if not kids:
                    feasible = False
                    break
                kid_sets.append(kids)
            if not feasible:
                continue
            out.update(self._combine(p, kid_sets, budget))
        self.onstack.discard(key)
        result = tuple(out)
        self.memo[key] = result
        return result

    def _combine(self, p, kid_sets: list[tuple], budget: int):
        """Combine child field vectors, pruned by slot-length classes.

        Children are grouped by their slot-length vector; only groups whose
        lengths can still fit every result slot are expanded.
        """
        grouped = []
        for kids in kid_sets:
            by_len: dict[tuple[int, ...], list] = {}
            for vec in kids:
                by_len.setdefault(tuple(len(f) for f in vec), []).append(vec)
            grouped.append(by_len)
        fixed = [sum(1 for sym in seq if type(sym) is str) for seq in p.seqs]
        for len_combo in product(*grouped):
            ok = True
            for slot, seq in enumerate(p.seqs):
                total = fixed[slot]
                for sym in seq:
                    if type(sym) is not str:
                        total += len_combo[sym[0]][sym[1]]
                if total > budget:
                    ok = False
                    break
            if not ok:
                continue
            pools = [grouped[i][lens] for i, lens in enumerate(len_combo)]
            for combo in product(*pools):
                vec = []
                for seq in p.seqs:
                    slot: list[str] = []
                    for sym in seq:
                        if type(sym) is str:
                            slot.append(sym)
                        else:
                            slot.extend(combo[sym[0]][sym[1]])
                    vec.append(tuple(slot))
                yield tuple(vec)


def enumerate_sentences(grammar: CompiledGrammar, lang: str, max_tokens: int,
                        cap: int = DEFAULT_SENTENCE_CAP) -> list[tuple[str, ...]]:
    """Every sentence of the language with at most max_tokens tokens.

    Sentences carry their terminator token, which counts towards the bound.
    """
    if max_tokens > cap:
        raise EvalError(f"max_tokens {max_tokens} exceeds the cap {cap}")
    if max_tokens <= 0:
        return []
    concrete = grammar.concrete(lang)
    enum = _FieldVecEnumerator(concrete)
    bare = max_tokens - 1  # terminator is one token
    out: set[tuple[str, ...]] = set()
    for s in concrete.starts:
        for vec in enum.fieldvecs(s.ccat, bare + _SLOT_MARGIN):
            tokens = vec[s.slot]
            if len(tokens) <= bare:
                out.add(tokens + (s.terminator,))
    return sorted(out)


# ---------------------------------------------------------------------------
# Tree enumeration (layered by depth; top layer streamed)

class TreeEnumerator:
    """Enumerates well-typed trees by depth (leaves are depth 0)."""

    def __init__(self, abstract: AbstractSyntax):
        self.abstract = abstract
        # exact[d][cat] -> list of trees of depth exactly d
        self.exact: list[dict[str, list[Tree]]] = []
        self.upto: list[dict[str, list[Tree]]] = []

    def _materialize(self, depth: int) -> None:
        while len(self.exact) <= depth:
            d = len(self.exact)
            layer: dict[str, list[Tree]] = {c: [] for c in self.abstract.categories}
            if d == 0:
                for fun, ftype in self.abstract.functions.items():
                    if not ftype.args:
                        layer[ftype.result].append(Tree(fun))
            else:
                for fun, ftype in self.abstract.functions.items():
                    if not ftype.args:
                        continue
                    layer[ftype.result].extend(
                        Tree(fun, kids) for kids in self._combos(ftype.args, d - 1)
                    )
            self.exact.append(layer)
            prev = self.upto[-1] if self.upto else {c: [] for c in self.abstract.categories}
            self.upto.append({c: prev[c] + layer[c] for c in self.abstract.categories})

    def _combos(self, arg_cats: tuple[str, ...], top: int):
        """Child tuples whose maximum depth is exactly `top`."""
        below = self.upto[top - 1] if top > 0 else {c: [] for c in self.abstract.categories}
        at = self.upto[top]
        for pivot in range(len(arg_cats)):
            pools = []
            for j, cat in enumerate(arg_cats):
                if j < pivot:
                    pools.append(below[cat])
                elif j == pivot:
                    pools.append(self.exact[top][cat])
                else:
                    pools.append(at[cat])
            yield from product(*pools)

    def upto_depth(self, cat: str, depth: int) -> list[Tree]:
        self._materialize(depth)
        return self.upto[depth][cat]

    def iter_upto(self, cats: list[str], depth: int):
        """Stream all trees of the categories up to the depth.

        Layers below the top are materialized; the top layer is generated
        lazily so that very large top layers never live in memory at once.
        """
        if depth > 0:
            self._materialize(depth - 1)
            for cat in cats:
                yield from self.upto[depth - 1][cat]
            for fun, ftype in self.abstract.functions.items():
                if ftype.result in cats and ftype.args:
                    for kids in self._combos(ftype.args, depth - 1):
                        yield Tree(fun, kids)
        else:
            self._materialize(0)
            for cat in cats:
                yield from self.exact[0][cat]

    def count_upto(self, cats: list[str], depth: int) -> int:
        self._materialize(max(depth - 1, 0))
        total = 0
        if depth > 0:
            for cat in cats:
                total += len(self.upto[depth - 1][cat])
            for fun, ftype in self.abstract.functions.items():
                if ftype.result in cats and ftype.args:
                    at = [len(self.upto[depth - 1][c]) for c in ftype.args]
                    below = [len(self.upto[depth - 2][c]) if depth >= 2 else 0
                             for c in ftype.args]
                    whole = 1
                    for n in at:
                        whole *= n
                    inner = 1
                    for n in below:
                        inner *= n
                    total += whole - inner
        else:
            for cat in cats:
                total += len(self.exact[0][cat])
        return total


def enumerate_sentences_via_trees(grammar: CompiledGrammar, lang: str,
                                  max_tokens: int) -> list[tuple[str, ...]]:
    """Independent sentence enumeration: generate trees, linearize, filter.

    Token-budgeted recursive generation over abstract categories; the
    per-category minimum yields come from the PMCFG slot minima.
    """
    concrete = grammar.concrete(lang)
    abstract = grammar.abstract
    mins = concrete.min_slot_lengths()
    big = 10 ** 9
    cat_min: dict[str, int] = {c: big for c in abstract.categories}
    for cid, ccat in enumerate(concrete.ccats):
        m = min(mins[cid]) if mins[cid] else 0
        cat_min[ccat.cat] = min(cat_min[ccat.cat], m)

    def fun_overhead(fun: str) -> int:
        best = big
        for (f, _args), prods in concrete.prods_by_funargs.items():
            if f != fun:
                continue
            for p in prods:
                for seq in p.seqs:
                    fixed = sum(1 for sym in seq if type(sym) is str)
                    best = min(best, fixed)
        return best

    overhead = {f: fun_overhead(f) for f in abstract.functions}

    memo: dict[tuple[str, int], tuple[Tree, ...]] = {}

    def gen(cat: str, budget: int, stack: frozenset) -> tuple[Tree, ...]:
        if cat_min.get(cat, big) > budget:
            return ()
        key = (cat, budget)
        if key in memo:
            return memo[key]
        if key in stack:
            raise EvalError("zero-progress recursion in tree enumeration")
        stack = stack | {key}
        out: list[Tree] = []
        for fun, ftype in abstract.functions.items():
            if ftype.result != cat:
                continue
            over = overhead.get(fun, big)
            if over >= big:
                continue
            if not ftype.args:
                if over <= budget:
                    out.append(Tree(fun))
                continue
            need = over + sum(cat_min.get(a, big) for a in ftype.args)
            if need > budget:
                continue
            pools = []
            for i, acat in enumerate(ftype.args):
                rest = sum(cat_min.get(a, big) for j, a in enumerate(ftype.args) if j != i)
                pools.append(gen(acat, budget - over - rest, stack))
            out.extend(Tree(fun, kids) for kids in product(*pools))
        result = tuple(out)
        memo[key] = result
        return result

    bare = max_tokens - 1
    out: set[tuple[str, ...]] = set()
    lin_memo: dict = {}
    for cat, terminator in abstract.start_categories.items():
        for tree in gen(cat, bare, frozenset()):
            try:
                tokens = concrete.linearize(tree, lin_memo)
            except Exception:
                continue
            if len(tokens) <= bare:
                out.add(tokens + (terminator,))
    return sorted(out)


# ---------------------------------------------------------------------------
# Reports

def _tree_meaning(abstract: AbstractSyntax, tree: Tree):
    cat = abstract.category_of(tree)
    try:
        if cat == "Q":
            return ("query", semantics.tree_to_query(tree))
        return ("axiom", semantics.tree_to_axiom(tree))
    except semantics.UnsupportedTree:
        return None


def ambiguity_report(grammar: CompiledGrammar, lang: str, max_tokens: int,
                     cap: int = DEFAULT_SENTENCE_CAP) -> EvalReport:
    """Parse every sentence up to the bound; measure ambiguity and whether
    ambiguous sentences keep a single meaning (harmless ambiguity)."""
    report = EvalReport(language=lang)
    sentences = enumerate_sentences(grammar, lang, max_tokens, cap)
    abstract = grammar.abstract
    cat_of_term = {t: c for c, t in abstract.start_categories.items()}
    for sentence in sentences:
        report.sentence_counts[len(sentence)] = \
            report.sentence_counts.get(len(sentence), 0) + 1
        expected_cat = cat_of_term[sentence[-1]]
        trees = [t for t in grammar.parse(lang, sentence[:-1])
                 if abstract.category_of(t) == expected_cat]
        if len(trees) > 1:
            report.ambiguous += 1
            meanings = {_tree_meaning(abstract, t) for t in trees}
            if len(meanings) == 1 and None not in meanings:
                report.harmless += 1
    report.sentences_total = len(sentences)
    report.ambiguity_rate = (report.ambiguous / report.sentences_total
                             if report.sentences_total else 0.0)
    report.harmless_rate = (report.harmless / report.ambiguous
                            if report.ambiguous else 1.0)
    return report


def coverage_report(grammar: CompiledGrammar, lang: str, max_tokens: int,
                    cap: int = DEFAULT_SENTENCE_CAP) -> EvalReport:
    report = EvalReport(language=lang)
    for sentence in enumerate_sentences(grammar, lang, max_tokens, cap):
        report.sentence_counts[len(sentence)] = \
            report.sentence_counts.get(len(sentence), 0) + 1
        report.sentences_total += 1
    return report


# -- round trip ---------------------------------------------------------------

_WORKER_GRAMMAR: CompiledGrammar | None = None
_WORKER_LANGS: list[str] = []


def _roundtrip_init(grammar: CompiledGrammar, langs: list[str]) -> None:
    global _WORKER_GRAMMAR, _WORKER_LANGS
    _WORKER_GRAMMAR = grammar
    _WORKER_LANGS = langs


def _roundtrip_chunk(tree_texts: list[str]) -> tuple[int, list[str]]:
    grammar = _WORKER_GRAMMAR
    assert grammar is not None
    failures = []
    memos = {lang: {} for lang in _WORKER_LANGS}
    for text in tree_texts:
        tree = parse_tree(text)
        for lang in _WORKER_LANGS:
            concrete = grammar.concrete(lang)
            tokens = concrete.linearize(tree, memos[lang])
            if tree not in grammar.parse(lang, tokens):
                failures.append(f"{lang}: {text}")
    return len(tree_texts), failures


def round_trip_check(grammar: CompiledGrammar, lang: str | None, max_depth: int,
                     processes: int | None = None,
                     chunk_size: int = 2000) -> EvalReport:
    """parse(linearize(t)) must contain t for every start tree up to the depth.

    lang of None checks all languages.  The tree stream is partitioned
    across worker processes; results merge deterministically.
    """
    if max_depth > 5:
        raise EvalError("max_depth above 5 is not supported")
    langs = [lang] if lang else grammar.languages
    report = EvalReport(language=",".join(langs))
    enum = TreeEnumerator(grammar.abstract)
    cats = list(grammar.abstract.start_categories)
    if not cats:
        return report

    def chunks():
        buf: list[str] = []
        for tree in enum.iter_upto(cats, max_depth):
            buf.append(format_tree(tree))
            if len(buf) >= chunk_size:
                yield buf
                buf = []
        if buf:
            yield buf

    processes = processes if processes is not None else min(os.cpu_count() or 1, 8)
    if processes <= 1:
        _roundtrip_init(grammar, langs)
        results = map(_roundtrip_chunk, chunks())
        for count, failures in results:
            report.round_trip_checked += count
            report.round_trip_failures.extend(failures)
    else:
        ctx = get_context("fork")
        with ctx.Pool(processes, initializer=_roundtrip_init,
                      initargs=(grammar, langs)) as pool:
            for count, failures in pool.imap(_roundtrip_chunk, chunks()):
                report.round_trip_checked += count
                report.round_trip_failures.extend(failures)
    report.round_trip_failures.sort()
    return report
