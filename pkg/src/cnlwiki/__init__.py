"""Multilingual controlled-natural-language semantic wiki engine.

The package is organised around a grammar kernel (compilation of abstract +
concrete syntaxes into a PMCFG, with bidirectional parsing/linearization and
incremental completion), a shipped trilingual grammar, a tree-to-description-
logic mapper, a small tableau reasoner, the wiki data model, and an HTTP
service plus CLI on top.
"""

__version__ = "0.1.0"
