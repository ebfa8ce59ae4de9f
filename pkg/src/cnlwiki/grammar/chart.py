"""Incremental agenda-based PMCFG chart parser.

Active items walk one slot sequence of one production, left to right.  When
an item needs slot r of argument d, that (category, slot) pair is predicted
at the current position; when a predicted item completes over a span, a
specialized category is allocated for (category, slot, start, end) and the
waiting item resumes with its argument narrowed to the specialized category.
Productions accumulated on specialized categories carry the specialized
argument vectors of their derivations, which is what keeps several slots of
one argument consistent across discontinuities.

The chart is consulted position by position, so the same machinery answers
both full parsing and next-token completion for a sentence prefix.
"""

from __future__ import annotations

from itertools import product

from cnlwiki.grammar.pmcfg import Concrete, Production
from cnlwiki.trees import Tree

# Items are plain tuples: (start, production, slot, dot, args).
# Productions hash by identity; args is a tuple of category ids.

_WRAPPER_RESULT = -1


class InfiniteAmbiguityError(Exception):
    """A parse admits unboundedly many trees (degenerate grammar)."""


class ChartState:
    """Result of feeding a token sequence to the chart."""

    def __init__(self, concrete: Concrete, tokens: tuple[str, ...], sentence_mode: bool):
        self.concrete = concrete
        self.tokens = tokens
        self.sentence_mode = sentence_mode
        self.alive = 0  # number of tokens consumed while the chart stayed alive
        self.next_tokens: set[str] = set()
        self._spec_prods: list[list[Production]] = []
        self._spec_index: dict[tuple[int, int, int, int], int] = {}
        self._base = len(concrete.ccats)
        self._run()

    # -- chart construction --------------------------------------------------

    def _prods_of(self, cat: int):
        if cat < self._base:
            return self.concrete.prods_by_result.get(cat, ())
        return self._spec_prods[cat - self._base]

    def _run(self) -> None:
        concrete = self.concrete
        tokens = self.tokens
        base = self._base
        spec_prods = self._spec_prods
        spec_keys: list[set] = []
        spec_index = self._spec_index
        predicted: dict[int, set[tuple[int, int]]] = {}
        waiting: dict[tuple[int, int, int], list] = {}
        agenda: list[tuple] = []

        if self.sentence_mode:
            for s in concrete.starts:
                wrapper = Production("_sentence", (s.ccat,), _WRAPPER_RESULT,
                                     (((0, s.slot), s.terminator),))
                agenda.append((0, wrapper, 0, 0, wrapper.args))
        else:
            for s in concrete.starts:
                ctx = predicted.setdefault(s.ccat, set())
                if (s.slot, 0) not in ctx:
                    ctx.add((s.slot, 0))
                    for p in self._prods_of(s.ccat):
                        agenda.append((0, p, s.slot, 0, p.args))

        n = len(tokens)
        for k in range(n + 1):
            seen: set[tuple] = set()
            scan_wait: dict[str, list[tuple]] = {}
            while agenda:
                item = agenda.pop()
                if item in seen:
                    continue
                seen.add(item)
                start, prod, lbl, dot, args = item
                seq = prod.seqs[lbl]
                if dot == len(seq):
                    if prod.result == _WRAPPER_RESULT:
                        continue
                    key = (prod.result, lbl, start, k)
                    nc = spec_index.get(key)
                    created = nc is None
                    if created:
                        nc = base + len(spec_prods)
                        spec_prods.append([])
                        spec_keys.append(set())
                        spec_index[key] = nc
                    pkey = (id(prod), args)
                    bucket = spec_keys[nc - base]
                    if pkey not in bucket:
                        bucket.add(pkey)
                        np = Production(prod.fun, args, nc, prod.seqs)
                        spec_prods[nc - base].append(np)
                        if not created:
                            # late variant derivations over an existing span:
                            # re-issue predictions made on this category, all
                            # of which live at the current position
                            for lbl2, pos2 in predicted.get(nc, ()):
                                agenda.append((pos2, np, lbl2, 0, np.args))
                    if created:
                        for witem, d in waiting.get((start, prod.result, lbl), ()):
                            wstart, wprod, wlbl, wdot, wargs = witem
                            nargs = wargs[:d] + (nc,) + wargs[d + 1:]
                            agenda.append((wstart, wprod, wlbl, wdot + 1, nargs))
                    continue
                sym = seq[dot]
                if type(sym) is str:
                    scan_wait.setdefault(sym, []).append(item)
                    continue
                d, r = sym
                cat = args[d]
                waiting.setdefault((k, cat, r), []).append((item, d))
                ctx = predicted.setdefault(cat, set())
                if (r, k) not in ctx:
                    ctx.add((r, k))
                    for p in self._prods_of(cat):
                        agenda.append((k, p, r, 0, p.args))
                nc = spec_index.get((cat, r, k, k))
                if nc is not None:
                    nargs = args[:d] + (nc,) + args[d + 1:]
                    agenda.append((start, prod, lbl, dot + 1, nargs))

            if k == n:
                self.alive = n
                self.next_tokens = set(scan_wait)
                return
            advancing = scan_wait.get(tokens[k])
            if not advancing:
                self.alive = k
                self.next_tokens = set(scan_wait)
                return
            for start, prod, lbl, dot, args in advancing:
                agenda.append((start, prod, lbl, dot + 1, args))

    # -- results ---------------------------------------------------------------

    @property
    def dead(self) -> bool:
        return self.alive < len(self.tokens)

    def trees(self) -> set[Tree]:
        """Trees of complete start-category derivations spanning the input."""
        if self.dead:
            return set()
        n = len(self.tokens)
        memo: dict[int, tuple[Tree, ...]] = {}
        out: set[Tree] = set()
        for s in self.concrete.starts:
            nc = self._spec_index.get((s.ccat, s.slot, 0, n))
            if nc is None:
                continue
            out.update(self._extract(nc, memo, set()))
        return out

    def _extract(self, cat: int, memo: dict[int, tuple[Tree, ...]],
                 onstack: set[int]) -> tuple[Tree, ...]:
        got = memo.get(cat)
        if got is not None:
            return got
        if cat in onstack:
            raise InfiniteAmbiguityError(
                "cyclic derivation: the parse has unboundedly many trees"
            )
        onstack.add(cat)
        found: list[Tree] = []
        seen: set[Tree] = set()
        for p in self._prods_of(cat):
            kid_lists = [self._extract(a, memo, onstack) for a in p.args]
            for combo in product(*kid_lists) if kid_lists else [()]:
                tree = Tree(p.fun, combo)
                if tree not in seen:
                    seen.add(tree)
                    found.append(tree)
        onstack.discard(cat)
        result = tuple(found)
        memo[cat] = result
        return result


def parse(concrete: Concrete, tokens: tuple[str, ...]) -> set[Tree]:
    """All trees whose linearization set contains the token sequence."""
    return ChartState(concrete, tokens, sentence_mode=False).trees()


def complete(concrete: Concrete, prefix: tuple[str, ...]) -> set[str]:
    """Tokens that extend the prefix towards a full, terminated sentence."""
    state = ChartState(concrete, prefix, sentence_mode=True)
    if state.dead:
        return set()
    return state.next_tokens


def longest_prefix(concrete: Concrete, tokens: tuple[str, ...]) -> tuple[int, set[str]]:
    """Length of the longest viable sentence prefix, with its continuations."""
    state = ChartState(concrete, tokens, sentence_mode=True)
    return state.alive, state.next_tokens
