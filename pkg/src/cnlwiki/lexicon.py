"""Lexicon modules: one line per content word, paradigm operator applied.

    country_N = mkN "Land" "Länder" neuter ;
    border_V2 = mkV2 "begrenzen" "begrenzt" "begrenzt" ;
    germany_PN = mkPN "Deutschland" ;

Comments run from -- to the end of the line.  The identifier suffix names
the word class and derives the description-logic entity name.
"""

from __future__ import annotations

from dataclasses import dataclass

from cnlwiki import morpho
from cnlwiki.grammar.compile import LexicalItem, lexical_category
from cnlwiki.grammar.errors import Diagnostic, GrammarError
from cnlwiki.grammar.source import tokenize_source


@dataclass(frozen=True)
class LexiconLine:
    identifier: str
    operator: str
    forms: tuple[str, ...]
    gender: str | None
    line: int


def parse_lexicon_lines(module: str, text: str) -> list[LexiconLine]:
    tokens = tokenize_source(module, text)
    lines: list[LexiconLine] = []
    diags: list[Diagnostic] = []
    pos = 0

    def bail(line: int, message: str) -> None:
        diags.append(Diagnostic(module, line, message))

    while pos < len(tokens):
        start = tokens[pos]
        # skip to the next ';' on any malformed entry
        end = pos
        while end < len(tokens) and not (tokens[end].kind == "op" and tokens[end].text == ";"):
            end += 1
        entry = tokens[pos:end]
        pos = end + 1
        if not entry:
            continue
        if len(entry) < 3 or entry[0].kind != "ident" or entry[1].text != "=" \
                or entry[2].kind != "ident":
            bail(start.line, "expected: <identifier> = <operator> \"form\" ... ;")
            continue
        identifier, operator = entry[0].text, entry[2].text
        forms: list[str] = []
        gender: str | None = None
        bad = False
        for tok in entry[3:]:
            if tok.kind == "string":
                if gender is not None:
                    bail(tok.line, "forms must come before the gender")
                    bad = True
                    break
                forms.append(tok.text[1:-1])
            elif tok.kind == "ident" and tok.text in morpho.GENDER_WORDS:
                if gender is not None:
                    bail(tok.line, "more than one gender")
                    bad = True
                    break
                gender = tok.text
            else:
                bail(tok.line, f"unexpected {tok.text!r} in lexicon entry")
                bad = True
                break
        if not bad:
            lines.append(LexiconLine(identifier, operator, tuple(forms), gender, start.line))
    if diags:
        raise GrammarError(diags)
    return lines


def compile_lexicon(module: str, lang: str, text: str) -> list[LexicalItem]:
    """Parse lexicon text and apply the paradigm operators for one language."""
    lines = parse_lexicon_lines(module, text)
    diags: list[Diagnostic] = []
    items: list[LexicalItem] = []
    seen: set[str] = set()
    for entry in lines:
        if entry.identifier in seen:
            diags.append(Diagnostic(module, entry.line,
                                    f"duplicate identifier {entry.identifier}"))
            continue
        seen.add(entry.identifier)
        paradigm = morpho.PARADIGMS.get(entry.operator)
        if paradigm is None:
            diags.append(Diagnostic(module, entry.line,
                                    f"unknown operator {entry.operator}"))
            continue
        category, builder, takes_gender = paradigm
        declared = lexical_category(entry.identifier)
        if declared is None:
            diags.append(Diagnostic(module, entry.line,
                                    f"identifier {entry.identifier} needs a "
                                    f"_N, _PN or _V2 suffix"))
            continue
        if declared != category:
            diags.append(Diagnostic(module, entry.line,
                                    f"{entry.identifier} does not fit {entry.operator}"))
            continue
        if entry.gender is not None and not takes_gender:
            diags.append(Diagnostic(module, entry.line,
                                    f"{entry.operator} takes no gender"))
            continue
        try:
            fields = builder(lang, entry.forms, gender=entry.gender)
        except morpho.ParadigmError as e:
            diags.append(Diagnostic(module, entry.line, str(e)))
            continue
        items.append(LexicalItem(entry.identifier, category, fields, module, entry.line))
    if diags:
        raise GrammarError(diags)
    return items


def entity_name(identifier: str) -> str:
    """Description-logic entity name: identifier minus class suffix, lowercased."""
    base = identifier.rsplit("_", 1)[0]
    return base.lower()
