import pytest

from cnlwiki.shipped import build_grammar, lexicon_sources

ASYMMETRY_TREE_TEXT = (
    "if_thenS (vpS (termNP X_Var) (v2VP contain_V2 (termNP Y_Var))) "
    "(neg_vpS (termNP Y_Var) (v2VP contain_V2 (termNP X_Var)))"
)
ASYMMETRY_ACE = "if X contains Y then Y does not contain X"
ASYMMETRY_GER = "wenn X Y enthält , dann enthält Y X nicht"
ASYMMETRY_SPA = "si X contiene Y entonces Y no contiene X"


@pytest.fixture(scope="session")
def grammar():
    return build_grammar()


@pytest.fixture(scope="session")
def demo_lexicons():
    return lexicon_sources()


def brute_force_next_tokens(sentences: list[tuple[str, ...]],
                            prefix: tuple[str, ...]) -> set[str]:
    """Completion oracle: next tokens read off an enumerated sentence set."""
    n = len(prefix)
    return {s[n] for s in sentences if len(s) > n and s[:n] == prefix}
