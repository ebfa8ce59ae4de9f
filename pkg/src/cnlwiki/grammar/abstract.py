"""Abstract syntax: typed function inventory shared by all languages."""

from __future__ import annotations

from dataclasses import dataclass, field

from cnlwiki.trees import Tree

# Categories acting as sentence roots, with their terminator token.
START_TERMINATORS = {"S": ".", "Q": "?"}


class TreeTypeError(ValueError):
    """A tree does not fit the abstract syntax."""


@dataclass(frozen=True)
class FunType:
    args: tuple[str, ...]
    result: str


@dataclass(frozen=True)
class AbstractSyntax:
    name: str
    categories: tuple[str, ...]
    functions: dict[str, FunType]
    start_categories: dict[str, str] = field(default_factory=dict)

    @staticmethod
    def make(name: str, categories: tuple[str, ...], functions: dict[str, FunType]) -> "AbstractSyntax":
        starts = {c: t for c, t in START_TERMINATORS.items() if c in categories}
        return AbstractSyntax(name, categories, functions, starts)

    def category_of(self, tree: Tree) -> str:
        """Type-check a tree; returns its category or raises TreeTypeError."""
        fun = self.functions.get(tree.root)
        if fun is None:
            raise TreeTypeError(f"unknown function {tree.root!r}")
        if len(tree.children) != len(fun.args):
            raise TreeTypeError(
                f"{tree.root!r} expects {len(fun.args)} arguments, got {len(tree.children)}"
            )
        for child, want in zip(tree.children, fun.args):
            got = self.category_of(child)
            if got != want:
                raise TreeTypeError(
                    f"argument of {tree.root!r} has category {got}, expected {want}"
                )
        return fun.result

    def is_well_typed(self, tree: Tree) -> bool:
        try:
            self.category_of(tree)
            return True
        except TreeTypeError:
            return False

    def functions_of_category(self, cat: str) -> list[str]:
        return [f for f, t in self.functions.items() if t.result == cat]

    def lexical_functions(self) -> dict[str, str]:
        """Zero-argument functions of lexical categories, mapped to their category."""
        return {
            f: t.result
            for f, t in self.functions.items()
            if not t.args and t.result in ("N", "PN", "V2")
        }
