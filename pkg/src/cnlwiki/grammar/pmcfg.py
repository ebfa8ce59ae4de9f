"""Compiled grammar: concrete categories, productions, linearization.

A concrete category pairs an abstract category with an assignment of its
inherent parameters; it owns a fixed number of string slots (one per
combination of table parameters of each string field).  A production maps
argument concrete categories to a result concrete category and gives each
result slot as a sequence of tokens and (argument, slot) references.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from cnlwiki.grammar.abstract import AbstractSyntax
from cnlwiki.grammar.errors import LinearizationError
from cnlwiki.trees import Tree

# A linearization symbol: a terminal token or an (argument, slot) reference.
Sym = str | tuple[int, int]


class Production:
    """One PMCFG production.  Identity-hashed; built once per variant."""

    __slots__ = ("fun", "args", "result", "seqs")

    def __init__(self, fun: str, args: tuple[int, ...], result: int,
                 seqs: tuple[tuple[Sym, ...], ...]):
        self.fun = fun
        self.args = args
        self.result = result
        self.seqs = seqs

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Production({self.fun}, args={self.args}, result={self.result})"


@dataclass(frozen=True)
class CCat:
    """Concrete category: abstract category + inherent parameter values."""

    cat: str
    params: tuple[tuple[str, str], ...]
    slots: tuple[tuple[str, tuple[str, ...]], ...]  # (field, table indices) per slot

    @property
    def nslots(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class StartSpec:
    cat: str
    ccat: int
    slot: int
    terminator: str


class Concrete:
    """One language's PMCFG plus linearization entry points."""

    def __init__(self, language: str, ccats: list[CCat],
                 productions: list[Production], starts: list[StartSpec]):
        self.language = language
        self.ccats = ccats
        self.productions = productions
        self.starts = starts
        self.cat_ccats: dict[str, list[int]] = {}
        for i, c in enumerate(ccats):
            self.cat_ccats.setdefault(c.cat, []).append(i)
        self.prods_by_result: dict[int, list[Production]] = {}
        self.prods_by_funargs: dict[tuple[str, tuple[int, ...]], list[Production]] = {}
        self.fun_ccat: dict[str, set[int]] = {}
        for p in productions:
            self.prods_by_result.setdefault(p.result, []).append(p)
            self.prods_by_funargs.setdefault((p.fun, p.args), []).append(p)
            self.fun_ccat.setdefault(p.fun, set()).add(p.result)
        self._min_slot_len: list[tuple[int, ...]] | None = None

    # -- derived tables ----------------------------------------------------

    @property
    def functions(self) -> set[str]:
        """Functions with at least one production in this language."""
        return set(self.fun_ccat)

    def min_slot_lengths(self) -> list[tuple[int, ...]]:
        """Least token count reachable per slot of each concrete category.

        Unreachable slots keep a large sentinel; used for search pruning.
        """
        if self._min_slot_len is not None:
            return self._min_slot_len
        big = 10 ** 9
        mins = [[big] * c.nslots for c in self.ccats]
        changed = True
        while changed:
            changed = False
            for p in self.productions:
                for slot, seq in enumerate(p.seqs):
                    total = 0
                    for sym in seq:
                        if type(sym) is str:
                            total += 1
                        else:
                            total += mins[p.args[sym[0]]][sym[1]]
                            if total >= big:
                                total = big
                                break
                    if total < mins[p.result][slot]:
                        mins[p.result][slot] = total
                        changed = True
        self._min_slot_len = [tuple(m) for m in mins]
        return self._min_slot_len

    # -- linearization -----------------------------------------------------

    def _expand(self, seq: tuple[Sym, ...],
                kids: list[tuple[str, ...]] | list) -> tuple[str, ...]:
        out: list[str] = []
        for sym in seq:
            if type(sym) is str:
                out.append(sym)
            else:
                out.extend(kids[sym[0]][sym[1]])
        return tuple(out)

    def _lin(self, tree: Tree, memo: dict) -> tuple[int, tuple[tuple[str, ...], ...]]:
        got = memo.get(tree)
        if got is not None:
            return got
        kid_fields = []
        kid_ccats = []
        for child in tree.children:
            ccat, fields = self._lin(child, memo)
            kid_ccats.append(ccat)
            kid_fields.append(fields)
        prods = self.prods_by_funargs.get((tree.root, tuple(kid_ccats)))
        if not prods:
            raise LinearizationError(
                tree.root, f"no linearization for {tree.root!r} in {self.language}"
            )
        p = prods[0]  # first listed variant is canonical
        fields = tuple(self._expand(seq, kid_fields) for seq in p.seqs)
        result = (p.result, fields)
        memo[tree] = result
        return result

    def start_for(self, ccat: int) -> StartSpec | None:
        for s in self.starts:
            if s.ccat == ccat:
                return s
        return None

    def linearize_free(self, tree: Tree) -> tuple[str, ...]:
        """First-slot linearization of a tree of any category (for labels)."""
        _, fields = self._lin(tree, {})
        return fields[0] if fields else ()

    def linearize(self, tree: Tree, memo: dict | None = None) -> tuple[str, ...]:
        """Canonical linearization (first variant everywhere) of a start tree."""
        ccat, fields = self._lin(tree, {} if memo is None else memo)
        start = self.start_for(ccat)
        if start is None:
            raise LinearizationError(
                tree.root, f"tree category {self.ccats[ccat].cat!r} is not a start category"
            )
        return fields[start.slot]

    def linearize_all(self, tree: Tree) -> set[tuple[str, ...]]:
        """All variant linearizations of a start tree."""
        ccat, all_fields = self._lin_all(tree, {})
        start = self.start_for(ccat)
        if start is None:
            raise LinearizationError(
                tree.root, f"tree category {self.ccats[ccat].cat!r} is not a start category"
            )
        return {fields[start.slot] for fields in all_fields}

    def _lin_all(self, tree: Tree, memo: dict) -> tuple[int, list[tuple[tuple[str, ...], ...]]]:
        got = memo.get(tree)
        if got is not None:
            return got
        kid_ccats = []
        kid_variants = []
        for child in tree.children:
            ccat, variants = self._lin_all(child, memo)
            kid_ccats.append(ccat)
            kid_variants.append(variants)
        prods = self.prods_by_funargs.get((tree.root, tuple(kid_ccats)))
        if not prods:
            raise LinearizationError(
                tree.root, f"no linearization for {tree.root!r} in {self.language}"
            )
        seen = set()
        results: list[tuple[tuple[str, ...], ...]] = []
        for p in prods:
            for combo in product(*kid_variants) if kid_variants else [()]:
                fields = tuple(self._expand(seq, list(combo)) for seq in p.seqs)
                if fields not in seen:
                    seen.add(fields)
                    results.append(fields)
        result = (prods[0].result, results)
        memo[tree] = result
        return result

    def linearize_bracketed(self, tree: Tree, abstract: AbstractSyntax,
                            bracket_cats: frozenset[str] = frozenset({"NP", "VP"}),
                            ) -> tuple[str, ...]:
        """Canonical linearization with grouping brackets.

        Brackets wrap every constituent of a bracketed category, and every
        embedded start-category constituent that itself embeds start-category
        arguments (nested sentences).
        """
        starts = set(abstract.start_categories)

        def rec(t: Tree, is_root: bool) -> tuple[int, tuple[tuple[str, ...], ...]]:
            kid_ccats = []
            kid_fields = []
            for child in t.children:
                ccat, fields = rec(child, False)
                kid_ccats.append(ccat)
                kid_fields.append(fields)
            prods = self.prods_by_funargs.get((t.root, tuple(kid_ccats)))
            if not prods:
                raise LinearizationError(
                    t.root, f"no linearization for {t.root!r} in {self.language}"
                )
            p = prods[0]
            fields = tuple(self._expand(seq, kid_fields) for seq in p.seqs)
            cat = self.ccats[p.result].cat
            wrap = cat in bracket_cats
            if not wrap and not is_root and cat in starts:
                fun = abstract.functions.get(t.root)
                wrap = fun is not None and any(a in starts for a in fun.args)
            if wrap:
                fields = tuple(("[",) + f + ("]",) if f else f for f in fields)
            return p.result, fields

        ccat, fields = rec(tree, True)
        start = self.start_for(ccat)
        if start is None:
            raise LinearizationError(
                tree.root, f"tree category {self.ccats[ccat].cat!r} is not a start category"
            )
        return fields[start.slot]


class CompiledGrammar:
    """Abstract syntax plus one PMCFG per language."""

    def __init__(self, abstract: AbstractSyntax, concretes: dict[str, Concrete],
                 lexical_gaps: dict[str, list[str]] | None = None):
        self.abstract = abstract
        self.concretes = concretes
        self.lexical_gaps = lexical_gaps or {}

    @property
    def languages(self) -> list[str]:
        return list(self.concretes)

    def concrete(self, lang: str) -> Concrete:
        try:
            return self.concretes[lang]
        except KeyError:
            raise KeyError(f"unknown language {lang!r}") from None

    # Thin delegating API; parse/complete live in chart.py and are attached
    # here to keep call sites uniform.

    def linearize(self, lang: str, tree: Tree) -> tuple[str, ...]:
        return self.concrete(lang).linearize(tree)

    def linearize_all(self, lang: str, tree: Tree) -> set[tuple[str, ...]]:
        return self.concrete(lang).linearize_all(tree)

    def linearize_bracketed(self, lang: str, tree: Tree) -> tuple[str, ...]:
        return self.concrete(lang).linearize_bracketed(tree, self.abstract)

    def parse(self, lang: str, tokens: list[str] | tuple[str, ...]) -> set[Tree]:
        from cnlwiki.grammar.chart import parse as chart_parse

        return chart_parse(self.concrete(lang), tuple(tokens))

    def complete(self, lang: str, prefix: list[str] | tuple[str, ...]) -> set[str]:
        from cnlwiki.grammar.chart import complete as chart_complete

        return chart_complete(self.concrete(lang), tuple(prefix))

    def translate(self, src: str, dst: str,
                  tokens: list[str] | tuple[str, ...]) -> set[tuple[str, ...]]:
        out = set()
        for tree in self.parse(src, tokens):
            out.add(self.linearize(dst, tree))
        return out
