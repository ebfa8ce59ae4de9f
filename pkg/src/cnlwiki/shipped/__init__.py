"""Shipped grammar content: abstract syntax, three concrete syntaxes,
demo lexicons, and the compiled-grammar builder used by stores and tests."""

from __future__ import annotations

from importlib import resources

from cnlwiki.grammar.compile import compile_grammar
from cnlwiki.grammar.pmcfg import CompiledGrammar
from cnlwiki.lexicon import compile_lexicon

ABSTRACT_MODULE = "Wiki"
CONCRETE_MODULES = {"ace": "WikiAce", "ger": "WikiGer", "spa": "WikiSpa"}
LEXICON_MODULES = {"ace": "LexiconAce", "ger": "LexiconGer", "spa": "LexiconSpa"}


def _read(name: str) -> str:
    return resources.files("cnlwiki.shipped").joinpath(f"{name}.gfs").read_text("utf-8")


def grammar_sources() -> dict[str, str]:
    """Module name -> source text for the abstract and concrete modules."""
    out = {ABSTRACT_MODULE: _read(ABSTRACT_MODULE)}
    for module in CONCRETE_MODULES.values():
        out[module] = _read(module)
    return out


def lexicon_sources() -> dict[str, str]:
    """Language tag -> shipped lexicon module text."""
    return {lang: _read(module) for lang, module in LEXICON_MODULES.items()}


def build_grammar(lexicons: dict[str, str] | None = None) -> CompiledGrammar:
    """Compile the shipped grammar, optionally with replacement lexicons."""
    sources = lexicons if lexicons is not None else lexicon_sources()
    items = {
        lang: compile_lexicon(LEXICON_MODULES[lang], lang, text)
        for lang, text in sources.items()
    }
    return compile_grammar(grammar_sources(), items)
