import random

import pytest

from cnlwiki.evalharness import enumerate_sentences

from conftest import ASYMMETRY_ACE, brute_force_next_tokens

# Oracle enumeration bounds: wide enough that every continuation of a
# prefix of a <=8-token sentence is witnessed by some enumerated sentence
# (conditionals need 10-12 tokens depending on the language).
ORACLE_BOUNDS = {"ace": 11, "ger": 12, "spa": 11}


def test_after_every_comes_each_singular_noun(grammar):
    assert grammar.complete("ace", ("every",)) == {"country", "lake", "person"}


def test_empty_prefix_lists_sentence_openers(grammar):
    tokens = grammar.complete("ace", ())
    assert {"every", "a", "no", "if", "who", "which", "X", "Y"} <= tokens
    assert {"Germany", "France", "John"} <= tokens
    assert "." not in tokens


def test_full_sentence_completes_with_terminator_only(grammar):
    assert grammar.complete("ace", tuple(ASYMMETRY_ACE.split())) == {"."}
    assert grammar.complete("ace", tuple(ASYMMETRY_ACE.split()) + (".",)) == set()


def test_unknown_token_prefix_gives_empty_set(grammar):
    assert grammar.complete("ace", ("every", "xyzzy")) == set()
    assert grammar.complete("ace", ("xyzzy",)) == set()


def test_question_prefixes(grammar):
    tokens = grammar.complete("ace", ("which", "country", "borders", "France"))
    assert "?" in tokens
    assert grammar.complete("ger", ("welches",)) == {"Land"}


@pytest.mark.parametrize("lang", ["ace", "ger", "spa"])
def test_completion_matches_brute_force_on_sampled_prefixes(grammar, lang):
    sentences = enumerate_sentences(grammar, lang, 8)
    oracle_pool = enumerate_sentences(grammar, lang, ORACLE_BOUNDS[lang], cap=14)
    rng = random.Random(20_240_601 + hash(lang) % 1000)
    prefixes = {()}
    for sentence in rng.sample(sentences, min(40, len(sentences))):
        prefixes.add(sentence[:rng.randint(0, len(sentence))])
    for prefix in sorted(prefixes):
        expected = brute_force_next_tokens(oracle_pool, prefix)
        assert grammar.complete(lang, prefix) == expected, prefix
