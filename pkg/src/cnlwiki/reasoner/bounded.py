"""Exhaustive bounded-model search: the reasoner's independent test oracle.

Interpretations over domains of one to max_domain elements are enumerated
outright: class extensions as bitmasks over elements, roles as bitmasks
over element pairs, individuals as element choices.  "Entailed" therefore
only means "no counter-model up to the bound".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from cnlwiki.semantics import (
    Asymmetric, Axiom, ClassAssertion, ClassExpr, Complement, Exists, HasValue,
    Intersection, Named, NegRoleAssertion, Role, RoleAssertion, SubClassOf, Symmetric,
)


@dataclass(frozen=True)
class Signature:
    classes: tuple[str, ...]
    roles: tuple[str, ...]
    individuals: tuple[str, ...]


def signature_of(axioms: list[Axiom] | tuple[Axiom, ...]) -> Signature:
    classes: set[str] = set()
    roles: set[str] = set()
    individuals: set[str] = set()

    def class_names(expr: ClassExpr) -> None:
        match expr:
            case Named(name):
                classes.add(name)
            case Complement(inner):
                class_names(inner)
            case Intersection(left, right):
                class_names(left)
                class_names(right)
            case Exists(role, filler):
                roles.add(role.name)
                class_names(filler)
            case HasValue(role, individual):
                roles.add(role.name)
                individuals.add(individual)

    for a in axioms:
        match a:
            case SubClassOf(sub, sup):
                class_names(sub)
                class_names(sup)
            case ClassAssertion(expr, individual):
                class_names(expr)
                individuals.add(individual)
            case RoleAssertion(role, s, o) | NegRoleAssertion(role, s, o):
                roles.add(role)
                individuals.update((s, o))
            case Asymmetric(role) | Symmetric(role):
                roles.add(role)
    return Signature(tuple(sorted(classes)), tuple(sorted(roles)),
                     tuple(sorted(individuals)))


class Interpretation:
    """One finite interpretation, bitmask-encoded."""

    __slots__ = ("n", "classes", "roles", "inds", "dom_mask")

    def __init__(self, n: int, classes: dict[str, int], roles: dict[str, int],
                 inds: dict[str, int]):
        self.n = n
        self.classes = classes
        self.roles = roles
        self.inds = inds
        self.dom_mask = (1 << n) - 1

    def role_holds(self, role: str, x: int, y: int) -> bool:
        return bool(self.roles.get(role, 0) >> (x * self.n + y) & 1)

    def extension(self, expr: ClassExpr) -> int:
        n = self.n
        match expr:
            case Named(name):
                return self.classes.get(name, 0)
            case Complement(inner):
                return ~self.extension(inner) & self.dom_mask
            case Intersection(left, right):
                return self.extension(left) & self.extension(right)
            case Exists(role, filler):
                filler_ext = self.extension(filler)
                out = 0
                for x in range(n):
                    for y in range(n):
                        if filler_ext >> y & 1 and self._edge(role, x, y):
                            out |= 1 << x
                            break
                return out
            case HasValue(role, individual):
                target = self.inds[individual]
                out = 0
                for x in range(n):
                    if self._edge(role, x, target):
                        out |= 1 << x
                return out
        raise TypeError(f"not a class expression: {expr!r}")

    def _edge(self, role: Role, x: int, y: int) -> bool:
        if role.inverse:
            x, y = y, x
        return self.role_holds(role.name, x, y)

    def satisfies(self, axiom: Axiom) -> bool:
        n = self.n
        match axiom:
            case SubClassOf(sub, sup):
                return self.extension(sub) & ~self.extension(sup) & self.dom_mask == 0
            case ClassAssertion(expr, individual):
                return bool(self.extension(expr) >> self.inds[individual] & 1)
            case RoleAssertion(role, s, o):
                return self.role_holds(role, self.inds[s], self.inds[o])
            case NegRoleAssertion(role, s, o):
                return not self.role_holds(role, self.inds[s], self.inds[o])
            case Asymmetric(role):
                return all(not (self.role_holds(role, x, y) and self.role_holds(role, y, x))
                           for x in range(n) for y in range(n))
            case Symmetric(role):
                return all(not self.role_holds(role, x, y) or self.role_holds(role, y, x)
                           for x in range(n) for y in range(n))
        raise TypeError(f"not an axiom: {axiom!r}")

    def readable(self) -> dict:
        n = self.n
        return {
            "domain": list(range(n)),
            "classes": {c: [x for x in range(n) if m >> x & 1]
                        for c, m in self.classes.items()},
            "roles": {r: [(x, y) for x in range(n) for y in range(n)
                          if m >> (x * n + y) & 1]
                      for r, m in self.roles.items()},
            "individuals": dict(self.inds),
        }


def interpretations(sig: Signature, n: int):
    """All interpretations of the signature over a domain of size n."""
    class_masks = list(range(1 << n))
    role_masks = list(range(1 << (n * n)))
    elements = list(range(n))
    for cvals in product(class_masks, repeat=len(sig.classes)):
        classes = dict(zip(sig.classes, cvals))
        for rvals in product(role_masks, repeat=len(sig.roles)):
            roles = dict(zip(sig.roles, rvals))
            for ivals in product(elements, repeat=len(sig.individuals)):
                yield Interpretation(n, classes, roles, dict(zip(sig.individuals, ivals)))


def find_model(axioms: list[Axiom] | tuple[Axiom, ...], max_domain: int = 3,
               signature: Signature | None = None) -> dict | None:
    """A readable model of the axioms with at most max_domain elements, or None."""
    sig = signature or signature_of(axioms)
    for n in range(1, max_domain + 1):
        for interp in interpretations(sig, n):
            if all(interp.satisfies(a) for a in axioms):
                return interp.readable()
    return None


@dataclass(frozen=True)
class BoundedResult:
    status: str  # "entailed" | "countermodel" | "unknown"
    counter_model: dict | None = None


def bounded_entails(axioms: list[Axiom] | tuple[Axiom, ...], goal: Axiom,
                    max_domain: int = 3) -> BoundedResult:
    """Search for a model of the axioms falsifying the goal.

    "entailed" is bound-relative: no counter-model with up to max_domain
    elements exists.
    """
    if max_domain < 1:
        raise ValueError("max_domain must be at least 1")
    sig = signature_of(tuple(axioms) + (goal,))
    for n in range(1, max_domain + 1):
        for interp in interpretations(sig, n):
            if all(interp.satisfies(a) for a in axioms) and not interp.satisfies(goal):
                return BoundedResult("countermodel", interp.readable())
    return BoundedResult("entailed")
