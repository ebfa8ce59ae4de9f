"""Tableau satisfiability for the wiki's description-logic fragment.

The logic is ALC with inverse roles, individuals, hasValue, symmetric and
asymmetric role declarations, and negated role assertions (the latter two
acting as clash rules).  General subclass axioms are internalized: every
node carries not-C-or-D for each SubClassOf(C, D).  Fresh nodes form trees
hanging off the named individuals; pairwise (equality) blocking over the
node and its predecessor keeps expansion finite under inverse roles.
"""

from __future__ import annotations

from dataclasses import dataclass

from cnlwiki.semantics import (
    Asymmetric, Axiom, ClassAssertion, ClassExpr, Complement, Exists, HasValue,
    Intersection, Named, NegRoleAssertion, RoleAssertion, SubClassOf, Symmetric,
)

# NNF concepts are nested tuples:
#   ("atom", name) / ("natom", name)
#   ("and", c, d) / ("or", c, d)
#   ("some", (role, inv), c) / ("all", (role, inv), c)
#   ("hasval", (role, inv), ind) / ("nhasval", (role, inv), ind)
Concept = tuple


class ReasonerBudgetExceeded(Exception):
    """The node budget ran out; the answer is unknown, never guessed."""


def nnf(expr: ClassExpr, negated: bool = False) -> Concept:
    match expr:
        case Named(name):
            return ("natom", name) if negated else ("atom", name)
        case Complement(inner):
            return nnf(inner, not negated)
        case Intersection(left, right):
            op = "or" if negated else "and"
            return (op, nnf(left, negated), nnf(right, negated))
        case Exists(role, filler):
            op = "all" if negated else "some"
            return (op, (role.name, role.inverse), nnf(filler, negated))
        case HasValue(role, individual):
            op = "nhasval" if negated else "hasval"
            return (op, (role.name, role.inverse), individual)
    raise TypeError(f"not a class expression: {expr!r}")


@dataclass
class TableauInput:
    tbox: tuple[Concept, ...]
    node_concepts: dict[str, frozenset[Concept]]
    edges: frozenset[tuple[str, str, str]]  # (x, role, y)
    forbidden_edges: frozenset[tuple[str, str, str]]
    symmetric: frozenset[str]
    asymmetric: frozenset[str]


def prepare(axioms: list[Axiom] | tuple[Axiom, ...]) -> TableauInput:
    tbox: list[Concept] = []
    node_concepts: dict[str, set[Concept]] = {}
    edges: set[tuple[str, str, str]] = set()
    forbidden: set[tuple[str, str, str]] = set()
    symmetric: set[str] = set()
    asymmetric: set[str] = set()

    def node(name: str) -> set[Concept]:
        return node_concepts.setdefault(name, set())

    for a in axioms:
        match a:
            case SubClassOf(sub, sup):
                tbox.append(("or", nnf(sub, True), nnf(sup)))
            case ClassAssertion(expr, individual):
                node(individual).add(nnf(expr))
            case RoleAssertion(role, s, o):
                node(s)
                node(o)
                edges.add((s, role, o))
            case NegRoleAssertion(role, s, o):
                node(s)
                node(o)
                forbidden.add((s, role, o))
            case Asymmetric(role):
                asymmetric.add(role)
            case Symmetric(role):
                symmetric.add(role)
            case _:
                raise TypeError(f"not an axiom: {a!r}")
    if not node_concepts:
        node_concepts["_root"] = set()
    return TableauInput(tuple(tbox),
                        {k: frozenset(v) for k, v in node_concepts.items()},
                        frozenset(edges), frozenset(forbidden),
                        frozenset(symmetric), frozenset(asymmetric))


class _Search:
    def __init__(self, inp: TableauInput, node_budget: int):
        self.inp = inp
        self.budget = node_budget
        self.allocated = 0

    def new_node(self, state: dict, parent: str, role: tuple[str, bool]) -> str:
        self.allocated += 1
        if self.allocated > self.budget:
            raise ReasonerBudgetExceeded(f"node budget {self.budget} exceeded")
        name = f"_n{self.allocated}"
        state["labels"][name] = set(self.inp.tbox)
        state["parent"][name] = (parent, role)
        return name

    # -- edge bookkeeping: edges stored directed as (x, role, y) -------------

    @staticmethod
    def _neighbors(state: dict, x: str, role: tuple[str, bool]) -> set[str]:
        name, inv = role
        if inv:
            return {s for (s, r, o) in state["edges"] if r == name and o == x}
        return {o for (s, r, o) in state["edges"] if r == name and s == x}

    def _add_edge(self, state: dict, x: str, role: tuple[str, bool], y: str) -> None:
        name, inv = role
        edge = (y, name, x) if inv else (x, name, y)
        if edge in state["edges"]:
            return
        state["edges"].add(edge)
        if name in self.inp.symmetric:
            state["edges"].add((edge[2], name, edge[0]))

    # -- clash -----------------------------------------------------------------

    def _clash(self, state: dict) -> bool:
        for x, label in state["labels"].items():
            for c in label:
                if c[0] == "atom" and ("natom", c[1]) in label:
                    return True
                if c[0] == "nhasval":
                    (role, inv), ind = c[1], c[2]
                    if ind in self._neighbors(state, x, (role, inv)):
                        return True
        edges = state["edges"]
        for s, r, o in edges:
            if r in self.inp.asymmetric and (o, r, s) in edges:
                return True
        for e in self.inp.forbidden_edges:
            if e in edges:
                return True
        return False

    # -- blocking ----------------------------------------------------------------

    def _blocked(self, state: dict, x: str) -> bool:
        parent = state["parent"]
        if x not in parent:
            return False
        # indirect: any ancestor directly blocked
        chain = []
        cur = x
        while cur in parent:
            chain.append(cur)
            cur = parent[cur][0]
        labels = state["labels"]
        for w in chain:
            wp, wrole = parent[w]
            lw, lwp = frozenset(labels[w]), frozenset(labels[wp])
            cur = wp
            while cur in parent:
                v = cur
                vp, vrole = parent[v]
                if vrole == wrole and frozenset(labels[v]) == lw \
                        and frozenset(labels[vp]) == lwp:
                    return True
                cur = vp
        return False

    # -- expansion ----------------------------------------------------------------

    def satisfiable(self, state: dict) -> bool:
        while True:
            if self._clash(state):
                return False
            labels = state["labels"]
            progressed = False

            # deterministic rules first
            for x in list(labels):
                for c in list(labels[x]):
                    kind = c[0]
                    if kind == "and":
                        add = {c[1], c[2]} - labels[x]
                        if add:
                            labels[x].update(add)
                            progressed = True
                    elif kind == "hasval":
                        role, ind = c[1], c[2]
                        if ind not in labels:
                            labels[ind] = set(self.inp.tbox)
                            progressed = True
                        if ind not in self._neighbors(state, x, role):
                            self._add_edge(state, x, role, ind)
                            progressed = True
                    elif kind == "all":
                        role, filler = c[1], c[2]
                        for y in self._neighbors(state, x, role):
                            if filler not in labels[y]:
                                labels[y].add(filler)
                                progressed = True
            if progressed:
                continue

            # disjunction: branch
            for x in list(labels):
                for c in labels[x]:
                    if c[0] == "or" and c[1] not in labels[x] and c[2] not in labels[x]:
                        for pick in (c[1], c[2]):
                            branch = _copy_state(state)
                            branch["labels"][x].add(pick)
                            if self.satisfiable(branch):
                                return True
                        return False

            # existentials on unblocked nodes
            for x in list(labels):
                if self._blocked(state, x):
                    continue
                for c in list(labels[x]):
                    if c[0] != "some":
                        continue
                    role, filler = c[1], c[2]
                    if any(filler in labels[y] for y in self._neighbors(state, x, role)):
                        continue
                    y = self.new_node(state, x, role)
                    self._add_edge(state, x, role, y)
                    state["labels"][y].add(filler)
                    progressed = True
                    break
                if progressed:
                    break
            if progressed:
                continue
            return True


def _copy_state(state: dict) -> dict:
    return {
        "labels": {k: set(v) for k, v in state["labels"].items()},
        "edges": set(state["edges"]),
        "parent": dict(state["parent"]),
    }


def satisfiable(axioms: list[Axiom] | tuple[Axiom, ...], node_budget: int = 10_000) -> bool:
    """Whether the axiom set has a model.  Raises ReasonerBudgetExceeded."""
    inp = prepare(axioms)
    edges = set(inp.edges)
    for s, r, o in inp.edges:
        if r in inp.symmetric:
            edges.add((o, r, s))
    state = {
        "labels": {x: set(inp.tbox) | set(cs) for x, cs in inp.node_concepts.items()},
        "edges": edges,
        "parent": {},
    }
    return _Search(inp, node_budget).satisfiable(state)
