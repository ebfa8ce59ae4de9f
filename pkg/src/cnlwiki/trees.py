"""Abstract syntax trees and their text format.

Trees are written in parenthesized prefix application, e.g.

    vpS (pnNP germany_PN) (isaVP (useN country_N))

Leaves (zero-argument functions) appear bare; every application with
arguments is parenthesized except at the top level.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class TreeSyntaxError(ValueError):
    """Raised when tree text cannot be read back as a tree."""


@dataclass(frozen=True)
class Tree:
    """Function application tree over an abstract syntax."""

    root: str
    children: tuple["Tree", ...] = ()
    # hash is consulted constantly during enumeration and parsing; cache it
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((self.root, self.children)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def depth(self) -> int:
        """Depth of the tree; leaves are depth 0."""
        if not self.children:
            return 0
        return 1 + max(c.depth() for c in self.children)

    def functions(self) -> set[str]:
        """All function names occurring in the tree."""
        out = {self.root}
        for c in self.children:
            out |= c.functions()
        return out

    def __str__(self) -> str:
        return format_tree(self)


def format_tree(tree: Tree) -> str:
    """Render a tree in the canonical text format."""
    if not tree.children:
        return tree.root
    parts = [tree.root]
    for child in tree.children:
        if child.children:
            parts.append("(" + format_tree(child) + ")")
        else:
            parts.append(child.root)
    return " ".join(parts)


_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def parse_tree(text: str) -> Tree:
    """Read a tree from its text format.

    Raises TreeSyntaxError on malformed input.
    """
    tokens = _TOKEN_RE.findall(text)
    if not tokens:
        raise TreeSyntaxError("empty tree text")
    pos = 0

    def parse_app() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise TreeSyntaxError("unexpected end of tree text")
        root = tokens[pos]
        if root in ("(", ")"):
            raise TreeSyntaxError(f"expected function name, found {root!r}")
        pos += 1
        children: list[Tree] = []
        while pos < len(tokens) and tokens[pos] != ")":
            tok = tokens[pos]
            if tok == "(":
                pos += 1
                children.append(parse_app())
                if pos >= len(tokens) or tokens[pos] != ")":
                    raise TreeSyntaxError("missing closing parenthesis")
                pos += 1
            else:
                pos += 1
                children.append(Tree(tok))
        return Tree(root, tuple(children))

    tree = parse_app()
    if pos != len(tokens):
        raise TreeSyntaxError(f"trailing tokens after tree: {tokens[pos:]}")
    return tree
