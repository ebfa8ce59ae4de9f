import pytest

from cnlwiki.grammar.compile import compile_grammar
from cnlwiki.grammar.errors import LinearizationError
from cnlwiki.evalharness import TreeEnumerator
from cnlwiki.morpho import detokenize
from cnlwiki.trees import Tree, parse_tree

from conftest import ASYMMETRY_ACE, ASYMMETRY_GER, ASYMMETRY_SPA, ASYMMETRY_TREE_TEXT


@pytest.fixture(scope="module")
def asymmetry_tree():
    return parse_tree(ASYMMETRY_TREE_TEXT)


def test_golden_translations(grammar, asymmetry_tree):
    assert detokenize(grammar.linearize("ace", asymmetry_tree)) == ASYMMETRY_ACE
    assert detokenize(grammar.linearize("ger", asymmetry_tree)) == ASYMMETRY_GER
    assert detokenize(grammar.linearize("spa", asymmetry_tree)) == ASYMMETRY_SPA


def test_linearize_is_deterministic(grammar, asymmetry_tree):
    runs = {grammar.linearize("ger", asymmetry_tree) for _ in range(5)}
    assert len(runs) == 1


def test_unknown_function_raises(grammar):
    stale = Tree("vpS", (Tree("pnNP", (Tree("atlantis_PN"),)),
                         Tree("isaVP", (Tree("useN", (Tree("country_N"),)),))))
    with pytest.raises(LinearizationError):
        grammar.linearize("ace", stale)


def test_non_start_tree_rejected(grammar):
    with pytest.raises(LinearizationError):
        grammar.linearize("ace", parse_tree("termNP X_Var"))


def test_linearize_all_singleton_without_variants(grammar):
    # the shipped concrete syntaxes define no variants; check the sources too
    for lang in grammar.languages:
        enum = TreeEnumerator(grammar.abstract)
        for tree in enum.iter_upto(["S", "Q"], 3):
            assert grammar.linearize_all(lang, tree) == {grammar.linearize(lang, tree)}


def test_variant_linearize_all():
    mods = {
        "V": "abstract V { cat S ; fun hi : S ; }",
        "VEng": 'concrete VEng of V { lincat S = {s : Str} ; '
                'lin hi = {s = ("hello" | "hi") ++ "there"} ; }',
    }
    g = compile_grammar(mods)
    assert g.linearize("eng", Tree("hi")) == ("hello", "there")
    assert g.linearize_all("eng", Tree("hi")) == {("hello", "there"), ("hi", "there")}


def test_bracketed_golden(grammar, asymmetry_tree):
    assert detokenize(grammar.linearize_bracketed("ace", asymmetry_tree)) == \
        "if [ X ] [ contains [ Y ] ] then [ Y ] [ does not contain [ X ] ]"


def test_bracketed_lexical_np(grammar):
    tree = parse_tree("vpS (pnNP germany_PN) (isaVP (useN country_N))")
    assert detokenize(grammar.linearize_bracketed("ace", tree)) == \
        "[ Germany ] [ is a country ]"


def test_bracketed_nested_conditional(grammar):
    inner = parse_tree(ASYMMETRY_TREE_TEXT)
    clause = parse_tree("vpS (termNP X_Var) (v2VP contain_V2 (termNP Y_Var))")
    nested = Tree("if_thenS", (inner, clause))
    text = detokenize(grammar.linearize_bracketed("ace", nested))
    assert text.startswith("if [ if")  # embedded conditional gets its own brackets


def test_bracketed_separates_attachment_readings(grammar):
    sentence = "X contains a country that borders a country that contains a lake".split()
    trees = grammar.parse("ace", sentence)
    assert len(trees) == 2
    plain = {grammar.linearize("ace", t) for t in trees}
    assert len(plain) == 1
    bracketed = {grammar.linearize_bracketed("ace", t) for t in trees}
    assert len(bracketed) == 2


def test_bracketed_injective_over_shared_sentences(grammar):
    # any two distinct trees with equal plain text must differ bracketed
    enum = TreeEnumerator(grammar.abstract)
    for lang in grammar.languages:
        by_plain = {}
        for tree in enum.iter_upto(["S", "Q"], 3):
            by_plain.setdefault(grammar.linearize(lang, tree), []).append(tree)
        for plain, trees in by_plain.items():
            if len(trees) > 1:
                bracketed = {grammar.linearize_bracketed(lang, t) for t in trees}
                assert len(bracketed) == len(trees)
