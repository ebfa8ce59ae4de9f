"""Grammar kernel: source format, PMCFG compilation, parsing, linearization."""

from cnlwiki.grammar.errors import Diagnostic, GrammarError, LinearizationError
from cnlwiki.grammar.compile import compile_grammar
from cnlwiki.grammar.pmcfg import CompiledGrammar, Concrete

__all__ = [
    "CompiledGrammar",
    "Concrete",
    "Diagnostic",
    "GrammarError",
    "LinearizationError",
    "compile_grammar",
]
