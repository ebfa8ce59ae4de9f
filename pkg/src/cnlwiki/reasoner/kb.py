"""Knowledge base snapshots and the reasoning operations over them.

A Reasoner wraps one immutable snapshot; classification is computed once
per snapshot and cached.  Budget exhaustion never turns into an answer:
callers receive "unknown" (consistency) or the exception (queries).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from cnlwiki.reasoner.tableau import ReasonerBudgetExceeded, satisfiable
from cnlwiki.semantics import (
    Axiom, ClassAssertion, ClassExpr, Complement, Intersection, Named,
)
from cnlwiki.reasoner.bounded import signature_of

DEFAULT_NODE_BUDGET = 10_000


@dataclass(frozen=True)
class KnowledgeBase:
    """Axioms with entry provenance plus the declared signature."""

    axioms: tuple[tuple[Axiom, str], ...]  # (axiom, entry id)
    classes: tuple[str, ...]
    roles: tuple[str, ...]
    individuals: tuple[str, ...]
    generation: int = 0

    @staticmethod
    def build(axioms: list[tuple[Axiom, str]],
              declared_classes: set[str] | None = None,
              declared_roles: set[str] | None = None,
              declared_individuals: set[str] | None = None,
              generation: int = 0) -> "KnowledgeBase":
        sig = signature_of([a for a, _ in axioms])
        classes = set(sig.classes) | (declared_classes or set())
        roles = set(sig.roles) | (declared_roles or set())
        individuals = set(sig.individuals) | (declared_individuals or set())
        return KnowledgeBase(tuple(axioms), tuple(sorted(classes)),
                             tuple(sorted(roles)), tuple(sorted(individuals)),
                             generation)

    def plain_axioms(self) -> list[Axiom]:
        return [a for a, _ in self.axioms]


@dataclass(frozen=True)
class ConsistencyReport:
    status: str  # "consistent" | "inconsistent" | "unknown"
    conflicts: tuple[str, ...] = ()  # entry ids, when inconsistent
    detail: str | None = None


@dataclass(frozen=True)
class TaxonomyNode:
    name: str
    parents: tuple[str, ...]      # direct subsumers (class names)
    equivalents: tuple[str, ...]  # other classes proved equivalent


class Reasoner:
    def __init__(self, kb: KnowledgeBase, node_budget: int = DEFAULT_NODE_BUDGET):
        self.kb = kb
        self.node_budget = node_budget

    def _satisfiable(self, axioms: list[Axiom]) -> bool:
        return satisfiable(axioms, self.node_budget)

    @cached_property
    def consistency(self) -> ConsistencyReport:
        axioms = self.kb.plain_axioms()
        try:
            if self._satisfiable(axioms):
                return ConsistencyReport("consistent")
            return ConsistencyReport("inconsistent", self._conflict_entries())
        except ReasonerBudgetExceeded as e:
            return ConsistencyReport("unknown", detail=str(e))

    def _conflict_entries(self) -> tuple[str, ...]:
        """Greedy entry deletion: an irreducible (not necessarily minimum)
        set of entries that is still inconsistent together."""
        remaining = list(dict.fromkeys(e for _, e in self.kb.axioms))
        for entry in list(remaining):
            trial = [a for a, e in self.kb.axioms
                     if e in remaining and e != entry]
            try:
                if not self._satisfiable(trial):
                    remaining.remove(entry)
            except ReasonerBudgetExceeded:
                continue
        return tuple(remaining)

    def is_consistent(self) -> bool:
        return self.consistency.status == "consistent"

    def is_subsumed_by(self, sub: ClassExpr, sup: ClassExpr) -> bool:
        """kb-entailed subsumption, via unsatisfiability of sub-and-not-sup."""
        probe = ClassAssertion(Intersection(sub, Complement(sup)), "_probe")
        return not self._satisfiable(self.kb.plain_axioms() + [probe])

    def instance_of(self, individual: str, expr: ClassExpr) -> bool:
        probe = ClassAssertion(Complement(expr), individual)
        return not self._satisfiable(self.kb.plain_axioms() + [probe])

    def answer_query(self, query: ClassExpr) -> list[str]:
        """All named individuals the kb proves to satisfy the query."""
        return [ind for ind in self.kb.individuals if self.instance_of(ind, query)]

    @cached_property
    def taxonomy(self) -> list[TaxonomyNode]:
        """Direct-subsumption DAG over named classes, transitively reduced,
        with equivalent classes merged."""
        names = list(self.kb.classes)
        subsumed = {
            (a, b): (a == b or self.is_subsumed_by(Named(a), Named(b)))
            for a in names for b in names
        }
        # merge equivalence groups
        group_of: dict[str, str] = {}
        groups: dict[str, list[str]] = {}
        for a in names:
            if a in group_of:
                continue
            members = [b for b in names if subsumed[(a, b)] and subsumed[(b, a)]]
            for m in members:
                group_of[m] = a
            groups[a] = members
        reps = list(groups)

        def lt(x: str, y: str) -> bool:  # strict subsumption between groups
            return x != y and subsumed[(x, y)]

        nodes = []
        for rep in reps:
            above = [r for r in reps if lt(rep, r)]
            direct = [r for r in above
                      if not any(lt(rep, mid) and lt(mid, r) for mid in above)]
            parents = tuple(sorted(p for r in direct for p in groups[r]))
            for member in groups[rep]:
                equivalents = tuple(sorted(m for m in groups[rep] if m != member))
                nodes.append(TaxonomyNode(member, parents, equivalents))
        return sorted(nodes, key=lambda n: n.name)
