import pytest

from cnlwiki.trees import Tree, TreeSyntaxError, format_tree, parse_tree

from conftest import ASYMMETRY_TREE_TEXT


def test_round_trip_canonical_text():
    tree = parse_tree(ASYMMETRY_TREE_TEXT)
    assert format_tree(tree) == ASYMMETRY_TREE_TEXT
    assert tree.root == "if_thenS"
    assert len(tree.children) == 2


def test_leaves_render_bare():
    tree = Tree("vpS", (Tree("pnNP", (Tree("john_PN"),)),
                        Tree("isaVP", (Tree("useN", (Tree("person_N"),)),))))
    assert format_tree(tree) == "vpS (pnNP john_PN) (isaVP (useN person_N))"
    assert parse_tree(format_tree(tree)) == tree


def test_depth_counts_from_leaves():
    assert Tree("x").depth() == 0
    assert parse_tree("termNP X_Var").depth() == 1
    assert parse_tree(ASYMMETRY_TREE_TEXT).depth() == 4


def test_functions_collects_all_names():
    tree = parse_tree("vpS (termNP X_Var) (v2VP contain_V2 (termNP Y_Var))")
    assert tree.functions() == {"vpS", "termNP", "X_Var", "v2VP", "contain_V2", "Y_Var"}


@pytest.mark.parametrize("bad", ["", "(", "f (g", "f g) h", "f (g) extra)", "( )"])
def test_malformed_text_rejected(bad):
    with pytest.raises(TreeSyntaxError):
        parse_tree(bad)


def test_trees_hash_and_compare_structurally():
    a = parse_tree(ASYMMETRY_TREE_TEXT)
    b = parse_tree(ASYMMETRY_TREE_TEXT)
    assert a == b and hash(a) == hash(b)
    assert a != parse_tree("termNP X_Var")
