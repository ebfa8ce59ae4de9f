"""Compilation of grammar sources into a PMCFG.

Every lin expression is partially evaluated once per combination of
argument concrete categories.  Parameters are always concrete during this
evaluation (inherent parameters come from the chosen concrete categories,
table variables are enumerated), so the result of evaluating a string
field is a sequence of tokens and argument-slot references; variants fan
out into several productions, first listed first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from cnlwiki.grammar import source as src
from cnlwiki.grammar.abstract import AbstractSyntax, FunType
from cnlwiki.grammar.errors import Diagnostic, GrammarError
from cnlwiki.grammar.pmcfg import CCat, CompiledGrammar, Concrete, Production, StartSpec

# Lexical categories are open: zero-argument functions may be added per
# language through lexicon modules, keyed by identifier suffix.
LEXICAL_SUFFIXES = {"_N": "N", "_PN": "PN", "_V2": "V2"}

MAX_VARIANT_PRODUCTIONS = 256


def lexical_category(identifier: str) -> str | None:
    for suffix, cat in LEXICAL_SUFFIXES.items():
        if identifier.endswith(suffix):
            return cat
    return None


@dataclass(frozen=True)
class LexicalItem:
    """One lexicon entry, already inflected into record form.

    fields holds nested dicts mirroring the language's lincat for the
    category: string leaves for table cells, parameter value names for
    inherent fields.
    """

    identifier: str
    category: str
    fields: dict
    module: str = "lexicon"
    line: int = 1


# ---------------------------------------------------------------------------
# Values produced by compile-time evaluation

@dataclass(frozen=True)
class VStr:
    alts: tuple[tuple, ...]  # alternatives, each a tuple of Sym


@dataclass(frozen=True)
class VParam:
    ptype: str
    value: str


@dataclass(frozen=True)
class VTable:
    ptype: str
    entries: tuple[tuple[str, object], ...]

    def get(self, value: str):
        for k, v in self.entries:
            if k == value:
                return v
        raise KeyError(value)


@dataclass(frozen=True)
class VRecord:
    fields: tuple[tuple[str, object], ...]

    def get(self, name: str):
        for k, v in self.fields:
            if k == name:
                return v
        raise KeyError(name)

    def has(self, name: str) -> bool:
        return any(k == name for k, _ in self.fields)


class _EvalError(Exception):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(message)


# ---------------------------------------------------------------------------

class _ConcreteCompiler:
    """Compiles one concrete module against the shared abstract syntax."""

    def __init__(self, module: src.ConcreteModule, abstract: AbstractSyntax,
                 structural_funs: dict[str, FunType], diags: list[Diagnostic]):
        self.module = module
        self.abstract = abstract
        self.structural_funs = structural_funs
        self.diags = diags
        self.param_values: dict[str, tuple[str, ...]] = {}
        self.value_type: dict[str, str] = {}
        self.lincats: dict[str, tuple[tuple[str, src.FieldType], ...]] = {}
        self.ccat_index: dict[tuple[str, tuple[tuple[str, str], ...]], int] = {}
        self.ccats: list[CCat] = []
        self.slot_index: dict[tuple[str, str, tuple[str, ...]], int] = {}
        self.productions: list[Production] = []

    def err(self, line: int, message: str) -> None:
        self.diags.append(Diagnostic(self.module.name, line, message))

    # -- declarations -------------------------------------------------------

    def collect_params(self) -> None:
        for p in self.module.params:
            if p.name in self.param_values:
                self.err(p.line, f"duplicate param type {p.name}")
                continue
            self.param_values[p.name] = p.values
            for v in p.values:
                if v in self.value_type:
                    self.err(p.line, f"parameter value {v} already belongs to "
                                     f"{self.value_type[v]}")
                else:
                    self.value_type[v] = p.name

    def collect_lincats(self) -> None:
        seen: set[str] = set()
        for cat, fields, line in self.module.lincats:
            if cat not in self.abstract.categories:
                self.err(line, f"lincat for unknown category {cat}")
                continue
            if cat in seen:
                self.err(line, f"duplicate lincat for {cat}")
                continue
            seen.add(cat)
            ok = True
            names = set()
            for fname, ftype in fields:
                if fname in names:
                    self.err(line, f"duplicate field {fname} in lincat {cat}")
                    ok = False
                names.add(fname)
                for pt in ftype.params:
                    if pt not in self.param_values:
                        self.err(line, f"unknown parameter type {pt} in lincat {cat}")
                        ok = False
                if ftype.inherent and ftype.inherent not in self.param_values:
                    self.err(line, f"unknown parameter type {ftype.inherent} in lincat {cat}")
                    ok = False
            if ok:
                self.lincats[cat] = fields
        for cat in self.abstract.categories:
            if cat not in seen:
                self.err(1, f"missing lincat for {cat}")

    def build_ccats(self) -> None:
        for cat in self.abstract.categories:
            fields = self.lincats.get(cat)
            if fields is None:
                continue
            inherent = [(f, t.inherent) for f, t in fields if t.inherent]
            combos = product(*(self.param_values[pt] for _, pt in inherent)) \
                if inherent else [()]
            for values in combos:
                params = tuple((f, v) for (f, _), v in zip(inherent, values))
                slots: list[tuple[str, tuple[str, ...]]] = []
                for fname, ftype in fields:
                    if ftype.inherent:
                        continue
                    for idx in product(*(self.param_values[pt] for pt in ftype.params)):
                        slots.append((fname, idx))
                ccat = CCat(cat, params, tuple(slots))
                self.ccat_index[(cat, params)] = len(self.ccats)
                self.ccats.append(ccat)
        self.ccat_slots = [
            {key: i for i, key in enumerate(ccat.slots)} for ccat in self.ccats
        ]

    # -- values for arguments ------------------------------------------------

    def arg_value(self, arg_index: int, cat: str, cid: int) -> VRecord:
        fields = self.lincats[cat]
        ccat = self.ccats[cid]
        params = dict(ccat.params)
        out: list[tuple[str, object]] = []
        for fname, ftype in fields:
            if ftype.inherent:
                out.append((fname, VParam(ftype.inherent, params[fname])))
            else:
                out.append((fname, self._table_of_refs(arg_index, cid, fname,
                                                       ftype.params, ())))
        return VRecord(tuple(out))

    def _table_of_refs(self, arg_index: int, cid: int, fname: str,
                       chain: tuple[str, ...], prefix: tuple[str, ...]):
        if not chain:
            slot = self.ccat_slots[cid][(fname, prefix)]
            return VStr((((arg_index, slot),),))
        ptype = chain[0]
        entries = tuple(
            (v, self._table_of_refs(arg_index, cid, fname, chain[1:], prefix + (v,)))
            for v in self.param_values[ptype]
        )
        return VTable(ptype, entries)

    # -- expression evaluation ------------------------------------------------

    def eval(self, expr: src.Expr, env: dict[str, object],
             chain: tuple[str, ...] | None):
        """Evaluate under concrete parameters.

        chain gives the expected remaining table structure when known
        (needed for lambdas); None means infer.
        """
        if isinstance(expr, src.EStr):
            if chain:
                raise _EvalError(expr.line, "string found where a table is expected")
            return VStr((tuple(expr.text.split()),))
        if isinstance(expr, src.EPath):
            return self.eval_path(expr, env)
        if isinstance(expr, src.EConcat):
            alts: list[tuple] = [()]
            for item in expr.items:
                v = self.eval(item, env, ())
                v = self._want_str(v, item.line)
                alts = [a + b for a in alts for b in v.alts]
                if len(alts) > MAX_VARIANT_PRODUCTIONS:
                    raise _EvalError(expr.line, "too many variant combinations")
            return VStr(tuple(alts))
        if isinstance(expr, src.ESelect):
            table = self.eval(expr.table, env, None)
            if not isinstance(table, VTable):
                raise _EvalError(expr.line, "selection (!) applied to a non-table")
            index = self.eval(expr.index, env, None)
            if not isinstance(index, VParam):
                raise _EvalError(expr.line, "table index is not a parameter value")
            if index.ptype != table.ptype:
                raise _EvalError(
                    expr.line,
                    f"table over {table.ptype} indexed with {index.ptype} value",
                )
            return table.get(index.value)
        if isinstance(expr, src.ELambda):
            if chain is None or len(chain) < len(expr.vars):
                raise _EvalError(expr.line, "table abstraction where no table is expected")
            return self._eval_lambda(expr.vars, expr.body, env, chain)
        if isinstance(expr, src.ECase):
            scrutinee = self.eval(expr.scrutinee, env, None)
            if not isinstance(scrutinee, VParam):
                raise _EvalError(expr.line, "case scrutinee is not a parameter value")
            values = self.param_values[scrutinee.ptype]
            covered: set[str] = set()
            chosen: src.Expr | None = None
            for pat, branch in expr.branches:
                if pat == "_":
                    covered.update(values)
                elif pat not in values:
                    raise _EvalError(expr.line,
                                     f"pattern {pat} is not a value of {scrutinee.ptype}")
                else:
                    covered.add(pat)
                if chosen is None and pat in ("_", scrutinee.value):
                    chosen = branch
            if covered != set(values):
                missing = ", ".join(v for v in values if v not in covered)
                raise _EvalError(expr.line,
                                 f"non-exhaustive case over {scrutinee.ptype}; "
                                 f"missing {missing}")
            assert chosen is not None
            return self.eval(chosen, env, chain)
        if isinstance(expr, src.EVariants):
            if chain:
                raise _EvalError(expr.line, "variants are only allowed at string level")
            alts: list[tuple] = []
            for alt in expr.alts:
                v = self._want_str(self.eval(alt, env, ()), alt.line)
                alts.extend(v.alts)
            if len(alts) > MAX_VARIANT_PRODUCTIONS:
                raise _EvalError(expr.line, "too many variant combinations")
            return VStr(tuple(alts))
        if isinstance(expr, src.ERecord):
            raise _EvalError(expr.line, "records are only allowed as the whole lin body")
        raise _EvalError(expr.line, "unsupported expression")

    def _eval_lambda(self, vars_: tuple[str, ...], body: src.Expr,
                     env: dict[str, object], chain: tuple[str, ...]):
        ptype = chain[0]
        entries = []
        for value in self.param_values[ptype]:
            inner_env = dict(env)
            inner_env[vars_[0]] = VParam(ptype, value)
            if len(vars_) > 1:
                entries.append((value, self._eval_lambda(vars_[1:], body,
                                                         inner_env, chain[1:])))
            else:
                entries.append((value, self.eval(body, inner_env, chain[1:])))
        return VTable(ptype, tuple(entries))

    def eval_path(self, expr: src.EPath, env: dict[str, object]):
        head = expr.parts[0]
        if head in env:
            value = env[head]
            for part in expr.parts[1:]:
                if not isinstance(value, VRecord):
                    raise _EvalError(expr.line, f"{head} has no field {part}")
                try:
                    value = value.get(part)
                except KeyError:
                    raise _EvalError(expr.line, f"unknown field {part}") from None
            return value
        if len(expr.parts) == 1 and head in self.value_type:
            return VParam(self.value_type[head], head)
        raise _EvalError(expr.line, f"unknown name {head}")

    def _want_str(self, value, line: int) -> VStr:
        if isinstance(value, VStr):
            return value
        if isinstance(value, VTable):
            raise _EvalError(line, "table not fully applied")
        raise _EvalError(line, "expected a string expression")

    # -- fitting record values into slots --------------------------------------

    def fit_field(self, value, chain: tuple[str, ...], line: int):
        """Yield (index tuple, VStr) leaves of a (possibly nested) table value."""
        if not chain:
            yield (), self._want_str(value, line)
            return
        if not isinstance(value, VTable) or value.ptype != chain[0]:
            raise _EvalError(line, f"expected a table over {chain[0]}")
        for v in self.param_values[chain[0]]:
            for idx, leaf in self.fit_field(value.get(v), chain[1:], line):
                yield (v,) + idx, leaf

    def productions_for(self, fun: str, args: tuple[int, ...], cat: str,
                        record: VRecord, line: int) -> list[Production]:
        fields = self.lincats[cat]
        declared = {f for f, _ in fields}
        for fname, _ in record.fields:
            if fname not in declared:
                raise _EvalError(line, f"unknown field {fname} in lin for {fun}")
        params: list[tuple[str, str]] = []
        slot_alts: dict[tuple[str, tuple[str, ...]], tuple] = {}
        for fname, ftype in fields:
            if not record.has(fname):
                raise _EvalError(line, f"lin for {fun} misses field {fname}")
            value = record.get(fname)
            if ftype.inherent:
                if not isinstance(value, VParam) or value.ptype != ftype.inherent:
                    raise _EvalError(line, f"field {fname} of {fun} must be a "
                                           f"{ftype.inherent} value")
                params.append((fname, value.value))
            else:
                for idx, leaf in self.fit_field(value, ftype.params, line):
                    slot_alts[(fname, idx)] = leaf.alts
        result = self.ccat_index[(cat, tuple(params))]
        ccat = self.ccats[result]
        ordered = [slot_alts[key] for key in ccat.slots]
        count = 1
        for alts in ordered:
            count *= len(alts)
            if count > MAX_VARIANT_PRODUCTIONS:
                raise _EvalError(line, f"too many variant combinations in lin for {fun}")
        prods = []
        seen = set()
        for combo in product(*ordered):
            if combo in seen:
                continue
            seen.add(combo)
            prods.append(Production(fun, args, result, tuple(combo)))
        return prods

    # -- driving ---------------------------------------------------------------

    def compile_lins(self) -> None:
        lins = {}
        for lin in self.module.lins:
            if lin.name in lins:
                self.err(lin.line, f"duplicate lin for {lin.name}")
                continue
            lins[lin.name] = lin
        for fun in self.structural_funs:
            if fun not in lins:
                self.err(1, f"missing lin for {fun}")
        for name, lin in lins.items():
            funtype = self.structural_funs.get(name)
            if funtype is None:
                self.err(lin.line, f"lin for unknown function {name}")
                continue
            if len(lin.args) != len(funtype.args):
                self.err(lin.line, f"lin for {name} takes {len(lin.args)} arguments, "
                                   f"function has {len(funtype.args)}")
                continue
            if funtype.result not in self.lincats:
                continue  # lincat diagnostics already emitted
            if any(a not in self.lincats for a in funtype.args):
                continue
            arg_ccat_lists = [
                [cid for cid in range(len(self.ccats)) if self.ccats[cid].cat == acat]
                for acat in funtype.args
            ]
            for combo in product(*arg_ccat_lists) if arg_ccat_lists else [()]:
                env = {
                    var: self.arg_value(i, funtype.args[i], combo[i])
                    for i, var in enumerate(lin.args)
                }
                try:
                    body = lin.body
                    if not isinstance(body, src.ERecord):
                        raise _EvalError(lin.line, f"lin body for {name} must be a record")
                    record_fields = []
                    declared = dict(self.lincats[funtype.result])
                    for fname, fexpr in body.fields:
                        ftype = declared.get(fname)
                        chain = ftype.params if ftype and not ftype.inherent else None
                        record_fields.append((fname, self.eval(fexpr, env, chain)))
                    record = VRecord(tuple(record_fields))
                    self.productions.extend(
                        self.productions_for(name, tuple(combo), funtype.result,
                                             record, lin.line)
                    )
                except _EvalError as e:
                    self.err(e.line, f"in lin {name}: {e.message}")
                    break

    def compile_lexical(self, items: list[LexicalItem]) -> None:
        for item in items:
            if item.category not in self.lincats:
                continue
            try:
                record = self._record_from_data(item, self.lincats[item.category])
                self.productions.extend(
                    self.productions_for(item.identifier, (), item.category,
                                         record, item.line)
                )
            except _EvalError as e:
                self.diags.append(Diagnostic(item.module, e.line,
                                             f"in {item.identifier}: {e.message}"))

    def _record_from_data(self, item: LexicalItem, fields) -> VRecord:
        out = []
        for fname, ftype in fields:
            if fname not in item.fields:
                raise _EvalError(item.line, f"missing field {fname}")
            data = item.fields[fname]
            if ftype.inherent:
                if not isinstance(data, str) or data not in self.param_values.get(
                        ftype.inherent, ()):
                    raise _EvalError(item.line,
                                     f"field {fname} must be a {ftype.inherent} value")
                out.append((fname, VParam(ftype.inherent, data)))
            else:
                out.append((fname, self._table_from_data(data, ftype.params, item.line)))
        return VRecord(tuple(out))

    def _table_from_data(self, data, chain: tuple[str, ...], line: int):
        if not chain:
            if not isinstance(data, str):
                raise _EvalError(line, "expected a string form")
            if not data:
                raise _EvalError(line, "empty string form")
            return VStr((tuple(data.split()),))
        if not isinstance(data, dict):
            raise _EvalError(line, f"expected a table over {chain[0]}")
        entries = []
        for v in self.param_values[chain[0]]:
            if v not in data:
                raise _EvalError(line, f"missing {v} form")
            entries.append((v, self._table_from_data(data[v], chain[1:], line)))
        return VTable(chain[0], tuple(entries))

    # -- finishing ---------------------------------------------------------------

    def starts(self) -> list[StartSpec]:
        out = []
        for cat, terminator in self.abstract.start_categories.items():
            fields = self.lincats.get(cat)
            if fields is None:
                continue
            if not any(f == "s" and not t.inherent for f, t in fields):
                self.err(1, f"start category {cat} needs a string field named s")
                continue
            for cid in range(len(self.ccats)):
                ccat = self.ccats[cid]
                if ccat.cat != cat:
                    continue
                slot = next(i for i, (f, _) in enumerate(ccat.slots) if f == "s")
                out.append(StartSpec(cat, cid, slot, terminator))
        return out

    def trim(self) -> None:
        """Drop productions that can never yield strings (unproductive args)."""
        productive: set[int] = set()
        prods = self.productions
        changed = True
        while changed:
            changed = False
            for p in prods:
                if p.result in productive:
                    continue
                if all(a in productive for a in p.args):
                    productive.add(p.result)
                    changed = True
        self.productions = [p for p in prods
                            if all(a in productive for a in p.args)]


# ---------------------------------------------------------------------------

def compile_abstract(module: src.AbstractModule,
                     diags: list[Diagnostic]) -> dict[str, FunType]:
    cats = set()
    for cat, line in module.cats:
        if cat in cats:
            diags.append(Diagnostic(module.name, line, f"duplicate category {cat}"))
        cats.add(cat)
    funs: dict[str, FunType] = {}
    for fun in module.funs:
        if fun.name in funs:
            diags.append(Diagnostic(module.name, fun.line,
                                    f"duplicate function {fun.name}"))
            continue
        for cat in fun.arg_cats + (fun.result,):
            if cat not in cats:
                diags.append(Diagnostic(module.name, fun.line,
                                        f"unknown category {cat} in {fun.name}"))
        funs[fun.name] = FunType(fun.arg_cats, fun.result)
    return funs


def compile_grammar(modules: dict[str, str],
                    lexicons: dict[str, list[LexicalItem]] | None = None,
                    ) -> CompiledGrammar:
    """Compile a module set (one abstract, one concrete per language).

    modules maps module name to source text; a concrete module named
    <Abstract><Suffix> serves language tag lower(<Suffix>).  lexicons adds
    zero-argument lexical functions per language tag; identifiers carry
    their category as a suffix (_N, _PN, _V2) and may differ per language
    in coverage; gaps are reported on the result, not rejected.
    """
    lexicons = lexicons or {}
    diags: list[Diagnostic] = []
    abstract_mod: src.AbstractModule | None = None
    concrete_mods: list[src.ConcreteModule] = []
    for name in sorted(modules):
        try:
            mod = src.parse_module(name, modules[name])
        except GrammarError as e:
            diags.extend(e.diagnostics)
            continue
        if isinstance(mod, src.AbstractModule):
            if abstract_mod is not None:
                diags.append(Diagnostic(name, 1, "more than one abstract module"))
            abstract_mod = mod
        else:
            concrete_mods.append(mod)
    if abstract_mod is None:
        diags.append(Diagnostic("<grammar>", 1, "no abstract module"))
        raise GrammarError(diags)

    structural = compile_abstract(abstract_mod, diags)

    # Lexical identifiers extend the abstract syntax (union over languages).
    lexical_funs: dict[str, FunType] = {}
    for lang in sorted(lexicons):
        for item in lexicons[lang]:
            cat = lexical_category(item.identifier)
            if cat is None or cat != item.category:
                diags.append(Diagnostic(item.module, item.line,
                                        f"identifier {item.identifier} does not match "
                                        f"its word class"))
                continue
            if item.identifier in structural:
                diags.append(Diagnostic(item.module, item.line,
                                        f"{item.identifier} clashes with a grammar function"))
                continue
            lexical_funs.setdefault(item.identifier, FunType((), cat))

    cats = tuple(c for c, _ in abstract_mod.cats)
    functions = dict(structural)
    functions.update(lexical_funs)
    abstract = AbstractSyntax.make(abstract_mod.name, cats, functions)

    concretes: dict[str, Concrete] = {}
    gaps: dict[str, list[str]] = {}
    for mod in concrete_mods:
        if mod.of != abstract_mod.name:
            diags.append(Diagnostic(mod.name, 1,
                                    f"concrete of unknown abstract {mod.of}"))
            continue
        if not mod.name.startswith(abstract_mod.name) or mod.name == abstract_mod.name:
            diags.append(Diagnostic(mod.name, 1,
                                    "concrete module name must extend the abstract name"))
            continue
        lang = mod.name[len(abstract_mod.name):].lower()
        cc = _ConcreteCompiler(mod, abstract, structural, diags)
        cc.collect_params()
        cc.collect_lincats()
        if any(d.module == mod.name for d in diags):
            continue
        cc.build_ccats()
        cc.compile_lins()
        items = lexicons.get(lang, [])
        cc.compile_lexical(items)
        cc.trim()
        starts = cc.starts()
        concretes[lang] = Concrete(lang, cc.ccats, cc.productions, starts)
        have = {i.identifier for i in items}
        missing = sorted(f for f in lexical_funs if f not in have)
        if missing:
            gaps[lang] = missing

    if diags:
        raise GrammarError(diags)
    return CompiledGrammar(abstract, concretes, gaps)
