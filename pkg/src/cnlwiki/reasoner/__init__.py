"""Description-logic reasoning over the wiki knowledge base."""

from cnlwiki.reasoner.kb import KnowledgeBase, ConsistencyReport, TaxonomyNode, Reasoner, ReasonerBudgetExceeded
from cnlwiki.reasoner.bounded import BoundedResult, bounded_entails, find_model

__all__ = [
    "BoundedResult",
    "ConsistencyReport",
    "KnowledgeBase",
    "Reasoner",
    "ReasonerBudgetExceeded",
    "TaxonomyNode",
    "bounded_entails",
    "find_model",
]
