import pytest

from cnlwiki.reasoner import find_model
from cnlwiki.semantics import (
    Asymmetric, ClassAssertion, Complement, Exists, HasValue, Intersection,
    Named, NegRoleAssertion, NotVerbalizable, Role, RoleAssertion, SubClassOf,
    Symmetric, UnsupportedTree, axiom_to_tree, entry_semantics, query_semantics,
    tree_to_axiom, tree_to_query,
)
from cnlwiki.trees import format_tree, parse_tree

from conftest import ASYMMETRY_TREE_TEXT

LEXICAL = {
    "country_N": "N", "lake_N": "N", "person_N": "N",
    "germany_PN": "PN", "france_PN": "PN", "john_PN": "PN",
    "border_V2": "V2", "contain_V2": "V2", "like_V2": "V2",
}


def T(text):
    return parse_tree(text)


def test_conditional_schemas():
    assert tree_to_axiom(T(ASYMMETRY_TREE_TEXT)) == Asymmetric("contain")
    symmetric = ("if_thenS (vpS (termNP X_Var) (v2VP border_V2 (termNP Y_Var))) "
                 "(vpS (termNP Y_Var) (v2VP border_V2 (termNP X_Var)))")
    assert tree_to_axiom(T(symmetric)) == Symmetric("border")
    # reversed variable order is the same schema
    reversed_vars = ("if_thenS (vpS (termNP Y_Var) (v2VP contain_V2 (termNP X_Var))) "
                     "(neg_vpS (termNP X_Var) (v2VP contain_V2 (termNP Y_Var)))")
    assert tree_to_axiom(T(reversed_vars)) == Asymmetric("contain")


def test_assertions_and_subclass_patterns():
    assert tree_to_axiom(T("vpS (pnNP john_PN) (isaVP (useN person_N))")) == \
        ClassAssertion(Named("person"), "john")
    assert tree_to_axiom(T("vpS (pnNP germany_PN) (v2VP border_V2 (pnNP france_PN))")) == \
        RoleAssertion("border", "germany", "france")
    assert tree_to_axiom(T("neg_vpS (pnNP germany_PN) (v2VP border_V2 (pnNP france_PN))")) == \
        NegRoleAssertion("border", "germany", "france")
    assert tree_to_axiom(T("vpS (everyNP (useN country_N)) (isaVP (useN country_N))")) == \
        SubClassOf(Named("country"), Named("country"))
    assert tree_to_axiom(T("neg_vpS (everyNP (useN person_N)) (v2VP like_V2 (pnNP john_PN))")) == \
        SubClassOf(Named("person"), Complement(HasValue(Role("like"), "john")))
    assert tree_to_axiom(T("vpS (noNP (useN lake_N)) (v2VP contain_V2 (aNP (useN lake_N)))")) == \
        SubClassOf(Named("lake"), Complement(Exists(Role("contain"), Named("lake"))))
    assert tree_to_axiom(T("vpS (pnNP john_PN) (v2VP like_V2 (aNP (useN lake_N)))")) == \
        ClassAssertion(Exists(Role("like"), Named("lake")), "john")


def test_passive_maps_to_inverse_role():
    tree = T("vpS (everyNP (useN country_N)) (v2_byVP border_V2 (aNP (useN country_N)))")
    axiom = tree_to_axiom(tree)
    assert str(axiom) == "SubClassOf(country, Exists(Inverse(border), country))"
    # certified satisfiable by a two-element cycle
    model = find_model([axiom,
                        RoleAssertion("border", "a", "b"),
                        RoleAssertion("border", "b", "a"),
                        ClassAssertion(Named("country"), "a"),
                        ClassAssertion(Named("country"), "b")], 2)
    assert model is not None


def test_relative_clauses_intersect():
    tree = T("vpS (everyNP (relCN (useN country_N) "
             "(thatVP_Rel (v2VP border_V2 (pnNP france_PN))))) (isaVP (useN country_N))")
    assert tree_to_axiom(tree) == SubClassOf(
        Intersection(Named("country"), HasValue(Role("border"), "france")),
        Named("country"))


@pytest.mark.parametrize("text,fragment", [
    # quantified or negative noun phrases in object position
    ("vpS (pnNP john_PN) (v2VP like_V2 (noNP (useN lake_N)))", "quantified"),
    ("vpS (everyNP (useN country_N)) (v2VP contain_V2 (everyNP (useN lake_N)))", "quantified"),
    ("neg_vpS (pnNP john_PN) (v2VP like_V2 (noNP (useN lake_N)))", "unsupported sentence"),
    # variables outside the two conditional schemas
    ("vpS (termNP X_Var) (v2VP contain_V2 (termNP Y_Var))", "unsupported sentence"),
    ("vpS (pnNP john_PN) (v2VP like_V2 (termNP X_Var))", "variable"),
    ("if_thenS (vpS (termNP X_Var) (v2VP contain_V2 (termNP X_Var))) "
     "(vpS (termNP X_Var) (v2VP contain_V2 (termNP X_Var)))", "schema"),
    ("if_thenS (vpS (pnNP john_PN) (isaVP (useN person_N))) "
     "(vpS (pnNP john_PN) (isaVP (useN person_N)))", "schema"),
    # negated subjects outside the listed patterns
    ("neg_vpS (noNP (useN lake_N)) (isaVP (useN lake_N))", "unsupported sentence"),
    ("neg_vpS (pnNP john_PN) (isaVP (useN person_N))", "unsupported sentence"),
    ("vpS (aNP (useN country_N)) (isaVP (useN country_N))", "unsupported sentence"),
])
def test_unsupported_patterns(text, fragment):
    with pytest.raises(UnsupportedTree) as exc:
        tree_to_axiom(T(text))
    assert fragment in str(exc.value)


def test_queries():
    assert tree_to_query(T("whichQ (useN country_N) (v2VP border_V2 (pnNP germany_PN))")) == \
        Intersection(Named("country"), HasValue(Role("border"), "germany"))
    assert tree_to_query(T("whoQ (isaVP (useN country_N))")) == Named("country")
    assert tree_to_query(T("whichQ (useN country_N) (v2_byVP border_V2 (pnNP france_PN))")) == \
        Intersection(Named("country"), HasValue(Role("border", True), "france"))
    with pytest.raises(UnsupportedTree):
        tree_to_query(T("whoQ (v2VP contain_V2 (termNP X_Var))"))


def test_entry_semantics_rules():
    asym = T(ASYMMETRY_TREE_TEXT)
    assert entry_semantics((asym,)).axiom == Asymmetric("contain")
    a = T("vpS (pnNP germany_PN) (v2VP border_V2 (pnNP france_PN))")
    assert entry_semantics((a, a)).status == "included"
    b = T("vpS (pnNP france_PN) (v2VP border_V2 (pnNP germany_PN))")
    assert entry_semantics((a, b)).status == "excluded"
    unsupported = T("vpS (termNP X_Var) (v2VP contain_V2 (termNP Y_Var))")
    assert entry_semantics((a, unsupported)).status == "unsupported"
    assert query_semantics((T("whoQ (isaVP (useN country_N))"),))[0] == Named("country")


def test_axiom_serialization_format():
    assert str(Asymmetric("contain")) == "Asymmetric(contain)"
    assert str(SubClassOf(Named("country"), Exists(Role("border", True), Named("country")))) \
        == "SubClassOf(country, Exists(Inverse(border), country))"
    assert str(NegRoleAssertion("like", "john", "germany")) == \
        "NegRoleAssertion(like, john, germany)"


AXIOM_POOL = [
    Asymmetric("contain"),
    Symmetric("border"),
    SubClassOf(Named("country"), Named("lake")),
    SubClassOf(Named("country"), Complement(Named("lake"))),
    SubClassOf(Named("country"), Exists(Role("border"), Named("country"))),
    SubClassOf(Named("country"), Exists(Role("border", True), Named("country"))),
    SubClassOf(Named("country"), Complement(Exists(Role("contain"), Named("lake")))),
    SubClassOf(Named("country"), HasValue(Role("border"), "france")),
    SubClassOf(Intersection(Named("country"), Exists(Role("border"), Named("lake"))),
               Named("lake")),
    ClassAssertion(Named("country"), "germany"),
    ClassAssertion(Exists(Role("border"), Named("country")), "germany"),
    ClassAssertion(Intersection(Named("country"), HasValue(Role("like", True), "john")),
                   "germany"),
    RoleAssertion("border", "germany", "france"),
    NegRoleAssertion("like", "john", "germany"),
]


@pytest.mark.parametrize("axiom", AXIOM_POOL, ids=str)
def test_axiom_to_tree_is_right_inverse(axiom):
    tree = axiom_to_tree(axiom, LEXICAL)
    assert tree_to_axiom(tree) == axiom


def test_axiom_to_tree_canonical_choices():
    # active voice for plain role fillers, everyNP subject for subclass
    tree = axiom_to_tree(SubClassOf(Named("person"), Named("person")), LEXICAL)
    assert format_tree(tree) == "vpS (everyNP (useN person_N)) (isaVP (useN person_N))"
    tree = axiom_to_tree(Asymmetric("contain"), LEXICAL)
    assert format_tree(tree) == ASYMMETRY_TREE_TEXT
    tree = axiom_to_tree(
        SubClassOf(Named("country"), Exists(Role("border", True), Named("country"))),
        LEXICAL)
    assert format_tree(tree) == \
        "vpS (everyNP (useN country_N)) (v2_byVP border_V2 (aNP (useN country_N)))"


def test_total_over_all_trees_to_depth_four(grammar):
    # every well-typed start tree either maps cleanly or is Unsupported;
    # nothing else may escape
    from cnlwiki.evalharness import TreeEnumerator

    enum = TreeEnumerator(grammar.abstract)
    mapped = unsupported = 0
    for tree in enum.iter_upto(["S"], 4):
        try:
            tree_to_axiom(tree)
            mapped += 1
        except UnsupportedTree:
            unsupported += 1
    assert mapped + unsupported == 856212
    assert mapped == 507
    for tree in TreeEnumerator(grammar.abstract).iter_upto(["Q"], 4):
        try:
            tree_to_query(tree)
        except UnsupportedTree:
            pass


def test_not_verbalizable():
    with pytest.raises(NotVerbalizable):
        axiom_to_tree(SubClassOf(Named("city"), Named("country")), LEXICAL)
    with pytest.raises(NotVerbalizable):
        axiom_to_tree(SubClassOf(Complement(Named("country")), Named("country")), LEXICAL)
