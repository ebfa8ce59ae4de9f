"""Mapping between sentence trees and description-logic axioms.

Content words denote entities named by their lemma: country_N -> class
country, border_V2 -> role border, germany_PN -> individual germany.
Declarative trees map to axioms by structural pattern match; trees outside
the supported patterns (quantified objects under negation, free variables
outside the two conditional schemas, ...) are Unsupported.  The inverse
direction picks one canonical surface pattern per axiom shape.
"""

from __future__ import annotations

from dataclasses import dataclass

from cnlwiki.lexicon import entity_name
from cnlwiki.trees import Tree


# -- roles and class expressions ---------------------------------------------

@dataclass(frozen=True)
class Role:
    name: str
    inverse: bool = False

    def __str__(self) -> str:
        return f"Inverse({self.name})" if self.inverse else self.name


@dataclass(frozen=True)
class Named:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Complement:
    expr: "ClassExpr"

    def __str__(self) -> str:
        return f"Complement({self.expr})"


@dataclass(frozen=True)
class Intersection:
    left: "ClassExpr"
    right: "ClassExpr"

    def __str__(self) -> str:
        return f"Intersection({self.left}, {self.right})"


@dataclass(frozen=True)
class Exists:
    role: Role
    filler: "ClassExpr"

    def __str__(self) -> str:
        return f"Exists({self.role}, {self.filler})"


@dataclass(frozen=True)
class HasValue:
    role: Role
    individual: str

    def __str__(self) -> str:
        return f"HasValue({self.role}, {self.individual})"


ClassExpr = Named | Complement | Intersection | Exists | HasValue


# -- axioms --------------------------------------------------------------------

@dataclass(frozen=True)
class SubClassOf:
    sub: ClassExpr
    sup: ClassExpr

    def __str__(self) -> str:
        return f"SubClassOf({self.sub}, {self.sup})"


@dataclass(frozen=True)
class ClassAssertion:
    expr: ClassExpr
    individual: str

    def __str__(self) -> str:
        return f"ClassAssertion({self.expr}, {self.individual})"


@dataclass(frozen=True)
class RoleAssertion:
    role: str
    subject: str
    object: str

    def __str__(self) -> str:
        return f"RoleAssertion({self.role}, {self.subject}, {self.object})"


@dataclass(frozen=True)
class NegRoleAssertion:
    role: str
    subject: str
    object: str

    def __str__(self) -> str:
        return f"NegRoleAssertion({self.role}, {self.subject}, {self.object})"


@dataclass(frozen=True)
class Asymmetric:
    role: str

    def __str__(self) -> str:
        return f"Asymmetric({self.role})"


@dataclass(frozen=True)
class Symmetric:
    role: str

    def __str__(self) -> str:
        return f"Symmetric({self.role})"


Axiom = SubClassOf | ClassAssertion | RoleAssertion | NegRoleAssertion | Asymmetric | Symmetric


class UnsupportedTree(ValueError):
    """The tree has no axiom image in the supported fragment."""


class NotVerbalizable(ValueError):
    """The axiom lies outside the image of the tree-to-axiom mapping."""


# -- entry semantics (the wiki-facing summary) ----------------------------------

@dataclass(frozen=True)
class EntrySemantics:
    """Joint semantics of an entry's tree set."""

    status: str  # "included" | "excluded" | "unsupported"
    axiom: Axiom | None = None
    reason: str | None = None


def _leaf(tree: Tree, suffix: str, what: str) -> str:
    if tree.children or not tree.root.endswith(suffix):
        raise UnsupportedTree(f"{tree.root} is not a {what}")
    return entity_name(tree.root)


def _class_of(cn: Tree) -> ClassExpr:
    match cn:
        case Tree("useN", (n,)):
            return Named(_leaf(n, "_N", "noun"))
        case Tree("relCN", (base, Tree("thatVP_Rel", (vp,)))):
            return Intersection(_class_of(base), _vp_class(vp))
    raise UnsupportedTree(f"unsupported common noun {cn}")


def _object_class(np: Tree) -> ClassExpr:
    match np:
        case Tree("aNP", (cn,)):
            return _class_of(cn)
        case Tree("everyNP", _) | Tree("noNP", _):
            raise UnsupportedTree("quantified noun phrase in object position")
        case Tree("termNP", _):
            raise UnsupportedTree("variable in object position")
    raise UnsupportedTree(f"unsupported object {np}")


def _vp_class(vp: Tree) -> ClassExpr:
    match vp:
        case Tree("isaVP", (cn,)):
            return _class_of(cn)
        case Tree("v2VP", (v2, Tree("pnNP", (pn,)))):
            return HasValue(Role(_leaf(v2, "_V2", "verb")), _leaf(pn, "_PN", "proper name"))
        case Tree("v2VP", (v2, np)):
            return Exists(Role(_leaf(v2, "_V2", "verb")), _object_class(np))
        case Tree("v2_byVP", (v2, Tree("pnNP", (pn,)))):
            return HasValue(Role(_leaf(v2, "_V2", "verb"), inverse=True),
                            _leaf(pn, "_PN", "proper name"))
        case Tree("v2_byVP", (v2, np)):
            return Exists(Role(_leaf(v2, "_V2", "verb"), inverse=True), _object_class(np))
    raise UnsupportedTree(f"unsupported verb phrase {vp}")


def _conditional_axiom(antecedent: Tree, consequent: Tree) -> Axiom:
    """The two variable schemas: swapped-argument negative consequent is
    asymmetry, swapped-argument positive consequent is symmetry."""
    match antecedent:
        case Tree("vpS", (Tree("termNP", (a,)), Tree("v2VP", (v2, Tree("termNP", (b,)))))):
            if a.children or b.children or a.root == b.root:
                raise UnsupportedTree("conditional does not match a variable schema")
            role = _leaf(v2, "_V2", "verb")
        case _:
            raise UnsupportedTree("conditional does not match a variable schema")
    match consequent:
        case Tree("neg_vpS", (Tree("termNP", (c,)), Tree("v2VP", (w2, Tree("termNP", (d,)))))):
            negated = True
        case Tree("vpS", (Tree("termNP", (c,)), Tree("v2VP", (w2, Tree("termNP", (d,)))))):
            negated = False
        case _:
            raise UnsupportedTree("conditional does not match a variable schema")
    if _leaf(w2, "_V2", "verb") != role or c.root != b.root or d.root != a.root:
        raise UnsupportedTree("conditional does not match a variable schema")
    return Asymmetric(role) if negated else Symmetric(role)


def tree_to_axiom(tree: Tree) -> Axiom:
    """Axiom of one declarative tree; raises UnsupportedTree outside the fragment."""
    match tree:
        case Tree("if_thenS", (antecedent, consequent)):
            return _conditional_axiom(antecedent, consequent)
        case Tree("vpS", (Tree("everyNP", (cn,)), vp)):
            return SubClassOf(_class_of(cn), _vp_class(vp))
        case Tree("neg_vpS", (Tree("everyNP", (cn,)), vp)):
            return SubClassOf(_class_of(cn), Complement(_vp_class(vp)))
        case Tree("vpS", (Tree("noNP", (cn,)), vp)):
            return SubClassOf(_class_of(cn), Complement(_vp_class(vp)))
        case Tree("vpS", (Tree("pnNP", (pn,)), Tree("isaVP", (cn,)))):
            return ClassAssertion(_class_of(cn), _leaf(pn, "_PN", "proper name"))
        case Tree("vpS", (Tree("pnNP", (pn,)),
                          Tree("v2VP", (v2, Tree("pnNP", (qn,)))))):
            return RoleAssertion(_leaf(v2, "_V2", "verb"),
                                 _leaf(pn, "_PN", "proper name"),
                                 _leaf(qn, "_PN", "proper name"))
        case Tree("neg_vpS", (Tree("pnNP", (pn,)),
                              Tree("v2VP", (v2, Tree("pnNP", (qn,)))))):
            return NegRoleAssertion(_leaf(v2, "_V2", "verb"),
                                    _leaf(pn, "_PN", "proper name"),
                                    _leaf(qn, "_PN", "proper name"))
        case Tree("vpS", (Tree("pnNP", (pn,)), vp)):
            return ClassAssertion(_vp_class(vp), _leaf(pn, "_PN", "proper name"))
    raise UnsupportedTree(f"unsupported sentence pattern {tree.root}")


def tree_to_query(tree: Tree) -> ClassExpr:
    """Class expression of a question tree."""
    match tree:
        case Tree("whoQ", (vp,)):
            return _vp_class(vp)
        case Tree("whichQ", (cn, vp)):
            return Intersection(_class_of(cn), _vp_class(vp))
    raise UnsupportedTree(f"unsupported question pattern {tree.root}")


def entry_semantics(trees: set[Tree] | tuple[Tree, ...]) -> EntrySemantics:
    """Semantics of an entry: the shared axiom, or excluded/unsupported.

    All trees agreeing on one axiom is harmless ambiguity; diverging trees
    exclude the entry from the knowledge base.
    """
    axioms = []
    for tree in trees:
        try:
            axioms.append(tree_to_axiom(tree))
        except UnsupportedTree as e:
            return EntrySemantics("unsupported", reason=str(e))
    if not axioms:
        return EntrySemantics("unsupported", reason="empty tree set")
    if all(a == axioms[0] for a in axioms):
        return EntrySemantics("included", axiom=axioms[0])
    return EntrySemantics("excluded",
                          reason="readings diverge: " + "; ".join(sorted(str(a) for a in axioms)))


def query_semantics(trees: set[Tree] | tuple[Tree, ...]) -> tuple[ClassExpr | None, str | None]:
    """Shared class expression of a question entry, or a reason it has none."""
    exprs = []
    for tree in trees:
        try:
            exprs.append(tree_to_query(tree))
        except UnsupportedTree as e:
            return None, str(e)
    if not exprs:
        return None, "empty tree set"
    if all(e == exprs[0] for e in exprs):
        return exprs[0], None
    return None, "readings diverge"


# -- verbalization ----------------------------------------------------------------

class _Names:
    def __init__(self, lexical: dict[str, str]):
        self.classes: dict[str, str] = {}
        self.roles: dict[str, str] = {}
        self.individuals: dict[str, str] = {}
        for identifier, cat in lexical.items():
            target = {"N": self.classes, "V2": self.roles, "PN": self.individuals}[cat]
            target[entity_name(identifier)] = identifier

    def cls(self, name: str) -> str:
        try:
            return self.classes[name]
        except KeyError:
            raise NotVerbalizable(f"no noun for class {name}") from None

    def role(self, name: str) -> str:
        try:
            return self.roles[name]
        except KeyError:
            raise NotVerbalizable(f"no verb for role {name}") from None

    def ind(self, name: str) -> str:
        try:
            return self.individuals[name]
        except KeyError:
            raise NotVerbalizable(f"no proper name for individual {name}") from None


def _cn_tree(expr: ClassExpr, names: _Names) -> Tree:
    match expr:
        case Named(name):
            return Tree("useN", (Tree(names.cls(name)),))
        case Intersection(left, right):
            return Tree("relCN", (_cn_tree(left, names),
                                  Tree("thatVP_Rel", (_vp_tree(right, names),))))
    raise NotVerbalizable(f"no common noun for {expr}")


def _vp_tree(expr: ClassExpr, names: _Names) -> Tree:
    match expr:
        case Named(_) | Intersection(_, _):
            return Tree("isaVP", (_cn_tree(expr, names),))
        case Exists(role, filler):
            fun = "v2_byVP" if role.inverse else "v2VP"
            return Tree(fun, (Tree(names.role(role.name)),
                              Tree("aNP", (_cn_tree(filler, names),))))
        case HasValue(role, individual):
            fun = "v2_byVP" if role.inverse else "v2VP"
            return Tree(fun, (Tree(names.role(role.name)),
                              Tree("pnNP", (Tree(names.ind(individual)),))))
    raise NotVerbalizable(f"no verb phrase for {expr}")


def _var_clause(role_id: str, subj: str, obj: str, negated: bool) -> Tree:
    fun = "neg_vpS" if negated else "vpS"
    return Tree(fun, (Tree("termNP", (Tree(subj),)),
                      Tree("v2VP", (Tree(role_id), Tree("termNP", (Tree(obj),))))))


def axiom_to_tree(axiom: Axiom, lexical: dict[str, str]) -> Tree:
    """Canonical tree verbalizing the axiom (active voice, universal subject).

    lexical maps lexicon identifiers to their category, as produced by
    AbstractSyntax.lexical_functions().  Right inverse of tree_to_axiom.
    """
    names = _Names(lexical)
    match axiom:
        case Asymmetric(role):
            rid = names.role(role)
            return Tree("if_thenS", (_var_clause(rid, "X_Var", "Y_Var", False),
                                     _var_clause(rid, "Y_Var", "X_Var", True)))
        case Symmetric(role):
            rid = names.role(role)
            return Tree("if_thenS", (_var_clause(rid, "X_Var", "Y_Var", False),
                                     _var_clause(rid, "Y_Var", "X_Var", False)))
        case SubClassOf(sub, Complement(expr)):
            return Tree("neg_vpS", (Tree("everyNP", (_cn_tree(sub, names),)),
                                    _vp_tree(expr, names)))
        case SubClassOf(sub, sup):
            return Tree("vpS", (Tree("everyNP", (_cn_tree(sub, names),)),
                                _vp_tree(sup, names)))
        case ClassAssertion(expr, individual):
            return Tree("vpS", (Tree("pnNP", (Tree(names.ind(individual)),)),
                                _vp_tree(expr, names)))
        case RoleAssertion(role, subject, obj):
            return Tree("vpS", (Tree("pnNP", (Tree(names.ind(subject)),)),
                                Tree("v2VP", (Tree(names.role(role)),
                                              Tree("pnNP", (Tree(names.ind(obj)),))))))
        case NegRoleAssertion(role, subject, obj):
            return Tree("neg_vpS", (Tree("pnNP", (Tree(names.ind(subject)),)),
                                    Tree("v2VP", (Tree(names.role(role)),
                                                  Tree("pnNP", (Tree(names.ind(obj)),))))))
    raise NotVerbalizable(f"unsupported axiom {axiom}")
