"""Reader for the grammar source format.

One module per source text:

    abstract Wiki { cat S ; fun vpS : NP -> VP -> S ; }

    concrete WikiAce of Wiki {
      param Num = Sg | Pl ;
      lincat CN = {s : Num => Str} ;
      lin everyNP cn = {s = "every" ++ cn.s ! Sg} ;
    }

Linearization expressions support string literals, concatenation (++),
table selection (!), table abstraction (\\p => e, \\p,q => e for nested
tables), case analysis over parameters, record construction, argument
field projection (x.s), and variants ("a" | "b").  Comments run from --
to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from cnlwiki.grammar.errors import Diagnostic, GrammarError


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>--[^\n]*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<op>\+\+|=>|->|\\\\|[{}();:=!.,|])
  | (?P<ident>[^\s"{}();:=!.,|\\]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "string" | "op" | "ident"
    text: str
    line: int


def tokenize_source(module: str, text: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise GrammarError(
                [Diagnostic(module, line, f"unreadable character {text[pos]!r}")]
            )
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, chunk, line))
        line += chunk.count("\n")
        pos = m.end()
    return tokens


# ---------------------------------------------------------------------------
# Expression AST

@dataclass(frozen=True)
class Expr:
    line: int


@dataclass(frozen=True)
class EStr(Expr):
    text: str  # may contain spaces; splits into several tokens, "" is empty


@dataclass(frozen=True)
class EPath(Expr):
    parts: tuple[str, ...]  # x | x.field | parameter value name


@dataclass(frozen=True)
class EConcat(Expr):
    items: tuple[Expr, ...]


@dataclass(frozen=True)
class ESelect(Expr):
    table: Expr
    index: Expr


@dataclass(frozen=True)
class ELambda(Expr):
    vars: tuple[str, ...]
    body: Expr


@dataclass(frozen=True)
class ECase(Expr):
    scrutinee: Expr
    branches: tuple[tuple[str, Expr], ...]  # pattern is a value name or "_"


@dataclass(frozen=True)
class EVariants(Expr):
    alts: tuple[Expr, ...]


@dataclass(frozen=True)
class ERecord(Expr):
    fields: tuple[tuple[str, Expr], ...]


# ---------------------------------------------------------------------------
# Module AST

@dataclass(frozen=True)
class FunDecl:
    name: str
    arg_cats: tuple[str, ...]
    result: str
    line: int


@dataclass(frozen=True)
class AbstractModule:
    name: str
    cats: tuple[tuple[str, int], ...]
    funs: tuple[FunDecl, ...]


@dataclass(frozen=True)
class FieldType:
    """Type of one lincat record field.

    params is the chain of table parameter types; a plain Str field has
    an empty chain.  inherent names a parameter type instead (terminal
    field holding a parameter, not a string).
    """

    params: tuple[str, ...] = ()
    inherent: str | None = None


@dataclass(frozen=True)
class ParamDecl:
    name: str
    values: tuple[str, ...]
    line: int


@dataclass(frozen=True)
class LinDecl:
    name: str
    args: tuple[str, ...]
    body: Expr
    line: int


@dataclass(frozen=True)
class ConcreteModule:
    name: str
    of: str
    params: tuple[ParamDecl, ...]
    lincats: tuple[tuple[str, tuple[tuple[str, FieldType], ...], int], ...]
    lins: tuple[LinDecl, ...]


# ---------------------------------------------------------------------------
# Parser

class _Parser:
    def __init__(self, module: str, tokens: list[Token]):
        self.module = module
        self.tokens = tokens
        self.pos = 0

    # -- primitives

    def error(self, message: str, line: int | None = None) -> GrammarError:
        if line is None:
            line = self.tokens[self.pos].line if self.pos < len(self.tokens) else (
                self.tokens[-1].line if self.tokens else 1
            )
        return GrammarError([Diagnostic(self.module, line, message)])

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "op" and t.text == text

    def at_ident(self, text: str | None = None) -> bool:
        t = self.peek()
        if t is None or t.kind != "ident":
            return False
        return text is None or t.text == text

    def take(self) -> Token:
        t = self.peek()
        if t is None:
            raise self.error("unexpected end of module")
        self.pos += 1
        return t

    def expect_op(self, text: str) -> Token:
        t = self.peek()
        if t is None or t.kind != "op" or t.text != text:
            found = t.text if t else "end of module"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def expect_ident(self) -> Token:
        t = self.peek()
        if t is None or t.kind != "ident":
            found = t.text if t else "end of module"
            raise self.error(f"expected identifier, found {found!r}")
        return self.take()

    # -- modules

    def parse_module(self) -> AbstractModule | ConcreteModule:
        head = self.expect_ident()
        if head.text == "abstract":
            mod = self.parse_abstract()
        elif head.text == "concrete":
            mod = self.parse_concrete()
        else:
            raise self.error(
                f"module must start with 'abstract' or 'concrete', found {head.text!r}",
                head.line,
            )
        if self.peek() is not None:
            raise self.error("trailing text after module body")
        return mod

    def parse_abstract(self) -> AbstractModule:
        name = self.expect_ident().text
        self.expect_op("{")
        cats: list[tuple[str, int]] = []
        funs: list[FunDecl] = []
        while not self.at("}"):
            kw = self.expect_ident()
            if kw.text == "cat":
                c = self.expect_ident()
                cats.append((c.text, c.line))
                self.expect_op(";")
            elif kw.text == "fun":
                f = self.expect_ident()
                self.expect_op(":")
                chain = [self.expect_ident().text]
                while self.at("->"):
                    self.take()
                    chain.append(self.expect_ident().text)
                self.expect_op(";")
                funs.append(FunDecl(f.text, tuple(chain[:-1]), chain[-1], f.line))
            else:
                raise self.error(f"expected 'cat' or 'fun', found {kw.text!r}", kw.line)
        self.expect_op("}")
        return AbstractModule(name, tuple(cats), tuple(funs))

    def parse_concrete(self) -> ConcreteModule:
        name = self.expect_ident().text
        kw = self.expect_ident()
        if kw.text != "of":
            raise self.error(f"expected 'of', found {kw.text!r}", kw.line)
        of = self.expect_ident().text
        self.expect_op("{")
        params: list[ParamDecl] = []
        lincats: list[tuple[str, tuple[tuple[str, FieldType], ...], int]] = []
        lins: list[LinDecl] = []
        while not self.at("}"):
            kw = self.expect_ident()
            if kw.text == "param":
                pname = self.expect_ident()
                self.expect_op("=")
                values = [self.expect_ident().text]
                while self.at("|"):
                    self.take()
                    values.append(self.expect_ident().text)
                self.expect_op(";")
                params.append(ParamDecl(pname.text, tuple(values), pname.line))
            elif kw.text == "lincat":
                cname = self.expect_ident()
                self.expect_op("=")
                rec = self.parse_record_type()
                self.expect_op(";")
                lincats.append((cname.text, rec, cname.line))
            elif kw.text == "lin":
                fname = self.expect_ident()
                args: list[str] = []
                while self.at_ident():
                    args.append(self.take().text)
                self.expect_op("=")
                body = self.parse_expr()
                self.expect_op(";")
                lins.append(LinDecl(fname.text, tuple(args), body, fname.line))
            else:
                raise self.error(
                    f"expected 'param', 'lincat' or 'lin', found {kw.text!r}", kw.line
                )
        self.expect_op("}")
        return ConcreteModule(name, of, tuple(params), tuple(lincats), tuple(lins))

    def parse_record_type(self) -> tuple[tuple[str, FieldType], ...]:
        self.expect_op("{")
        fields: list[tuple[str, FieldType]] = []
        while True:
            fname = self.expect_ident()
            self.expect_op(":")
            chain = [self.expect_ident().text]
            while self.at("=>"):
                self.take()
                chain.append(self.expect_ident().text)
            if chain[-1] == "Str":
                ftype = FieldType(params=tuple(chain[:-1]))
            elif len(chain) == 1:
                ftype = FieldType(inherent=chain[0])
            else:
                raise self.error("table type must end in Str", fname.line)
            fields.append((fname.text, ftype))
            if self.at(";"):
                self.take()
                continue
            break
        self.expect_op("}")
        return tuple(fields)

    # -- expressions
    #
    # precedence: variants (|) < concatenation (++) < selection (!) < atoms

    def parse_expr(self) -> Expr:
        first = self.parse_concat()
        if not self.at("|"):
            return first
        alts = [first]
        while self.at("|"):
            self.take()
            alts.append(self.parse_concat())
        return EVariants(first.line, tuple(alts))

    def parse_concat(self) -> Expr:
        first = self.parse_select()
        if not self.at("++"):
            return first
        items = [first]
        while self.at("++"):
            self.take()
            items.append(self.parse_select())
        return EConcat(first.line, tuple(items))

    def parse_select(self) -> Expr:
        expr = self.parse_atom()
        while self.at("!"):
            self.take()
            index = self.parse_atom()
            expr = ESelect(expr.line, expr, index)
        return expr

    def parse_atom(self) -> Expr:
        t = self.peek()
        if t is None:
            raise self.error("unexpected end of expression")
        if t.kind == "string":
            self.take()
            text = t.text[1:-1].replace('\\"', '"').replace("\\\\", "\\")
            return EStr(t.line, text)
        if t.kind == "op" and t.text == "(":
            self.take()
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if t.kind == "op" and t.text == "{":
            return self.parse_record()
        if t.kind == "op" and t.text == "\\\\":
            self.take()
            vars_ = [self.expect_ident().text]
            while self.at(","):
                self.take()
                vars_.append(self.expect_ident().text)
            self.expect_op("=>")
            body = self.parse_expr()
            return ELambda(t.line, tuple(vars_), body)
        if t.kind == "ident" and t.text == "case":
            return self.parse_case()
        if t.kind == "ident":
            return self.parse_path()
        raise self.error(f"unexpected {t.text!r} in expression", t.line)

    def parse_path(self) -> Expr:
        first = self.expect_ident()
        parts = [first.text]
        while self.at("."):
            self.take()
            parts.append(self.expect_ident().text)
        return EPath(first.line, tuple(parts))

    def parse_record(self) -> Expr:
        brace = self.expect_op("{")
        fields: list[tuple[str, Expr]] = []
        while True:
            fname = self.expect_ident()
            self.expect_op("=")
            fields.append((fname.text, self.parse_expr()))
            if self.at(";"):
                self.take()
                continue
            break
        self.expect_op("}")
        return ERecord(brace.line, tuple(fields))

    def parse_case(self) -> Expr:
        kw = self.expect_ident()  # 'case'
        scrutinee = self.parse_select()
        of = self.expect_ident()
        if of.text != "of":
            raise self.error(f"expected 'of', found {of.text!r}", of.line)
        self.expect_op("{")
        branches: list[tuple[str, Expr]] = []
        while True:
            pat = self.peek()
            if pat is not None and pat.kind == "ident":
                pattern = self.take().text
            else:
                raise self.error("expected parameter value or _ in case pattern")
            self.expect_op("=>")
            branches.append((pattern, self.parse_expr()))
            if self.at(";"):
                self.take()
                continue
            break
        self.expect_op("}")
        return ECase(kw.line, scrutinee, tuple(branches))


def parse_module(module_name: str, text: str) -> AbstractModule | ConcreteModule:
    """Parse one grammar module from source text."""
    tokens = tokenize_source(module_name, text)
    if not tokens:
        raise GrammarError([Diagnostic(module_name, 1, "empty module")])
    return _Parser(module_name, tokens).parse_module()
