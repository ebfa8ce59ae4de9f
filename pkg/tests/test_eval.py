import pytest

from cnlwiki.evalharness import (
    EvalError, TreeEnumerator, ambiguity_report, coverage_report,
    enumerate_sentences, enumerate_sentences_via_trees, round_trip_check,
)
from cnlwiki.shipped import build_grammar, lexicon_sources

from conftest import ASYMMETRY_TREE_TEXT
from cnlwiki.trees import parse_tree


def test_zero_bound_yields_nothing(grammar):
    assert enumerate_sentences(grammar, "ace", 0) == []
    assert enumerate_sentences(grammar, "ace", 1) == []


def test_cap_enforced(grammar):
    with pytest.raises(EvalError):
        enumerate_sentences(grammar, "ace", 11)
    assert enumerate_sentences(grammar, "ace", 11, cap=12) != []


def test_bounds_are_monotone(grammar):
    small = set(enumerate_sentences(grammar, "ace", 6))
    large = set(enumerate_sentences(grammar, "ace", 7))
    assert small <= large
    assert all(len(s) <= 6 for s in small)


@pytest.mark.parametrize("lang", ["ace", "ger", "spa"])
def test_sentence_and_tree_enumeration_agree(grammar, lang):
    assert enumerate_sentences(grammar, lang, 7) == \
        enumerate_sentences_via_trees(grammar, lang, 7)


def test_every_enumerated_sentence_parses(grammar):
    for lang in grammar.languages:
        for sentence in enumerate_sentences(grammar, lang, 6):
            assert grammar.parse(lang, sentence[:-1]), (lang, sentence)


def test_sentences_carry_terminators(grammar):
    sentences = enumerate_sentences(grammar, "ace", 6)
    assert sentences
    assert all(s[-1] in (".", "?") for s in sentences)
    assert any(s[-1] == "?" for s in sentences)


def test_empty_lexicon_has_no_sentences():
    empty = {lang: "" for lang in lexicon_sources()}
    grammar = build_grammar(empty)
    assert enumerate_sentences(grammar, "ace", 8) == []
    report = ambiguity_report(grammar, "ace", 8)
    assert report.sentences_total == 0
    assert report.ambiguity_rate == 0.0
    assert report.harmless_rate == 1.0


def test_ace_fragment_unambiguous_to_eight_tokens(grammar):
    report = ambiguity_report(grammar, "ace", 8)
    assert report.ambiguous == 0
    assert report.harmless_rate == 1.0
    assert report.sentences_total == 7941


@pytest.mark.parametrize("lang,total", [("ger", 2541), ("spa", 7941)])
def test_other_languages_also_clean_to_eight_tokens(grammar, lang, total):
    report = ambiguity_report(grammar, lang, 8)
    assert report.sentences_total == total
    assert report.ambiguous == 0
    assert report.harmless_rate == 1.0


def test_homograph_lexicon_detected_as_ambiguous():
    lex = dict(lexicon_sources())
    lex["ger"] += '\nbank_N = mkN "Bank" "Bänke" feminine ;\n' \
                  'bench_N = mkN "Bank" "Bänke" feminine ;\n'
    lex["ace"] += '\nbank_N = mkN "bank" ;\nbench_N = mkN "bench" ;\n'
    lex["spa"] += '\nbank_N = mkN "banco" masculine ;\nbench_N = mkN "banca" feminine ;\n'
    grammar = build_grammar(lex)
    trees = grammar.parse("ger", tuple("X enthält eine Bank".split()))
    assert len(trees) == 2
    report = ambiguity_report(grammar, "ger", 6)
    assert report.ambiguous > 0
    assert report.harmless_rate < 1.0  # bank and bench denote different classes


def test_coverage_report_counts_by_length(grammar):
    report = coverage_report(grammar, "ace", 6)
    assert sum(report.sentence_counts.values()) == report.sentences_total
    assert set(report.sentence_counts) <= {4, 5, 6}


def test_round_trip_clean_at_depth_three(grammar):
    report = round_trip_check(grammar, None, 3, processes=1)
    assert report.round_trip_checked == 1056
    assert report.round_trip_failures == []


def test_round_trip_depth_limit(grammar):
    with pytest.raises(EvalError):
        round_trip_check(grammar, "ace", 6)


def test_tree_enumerator_counts_match_stream(grammar):
    enum = TreeEnumerator(grammar.abstract)
    streamed = sum(1 for _ in enum.iter_upto(["S", "Q"], 3))
    assert streamed == enum.count_upto(["S", "Q"], 3) == 1056
    asym = parse_tree(ASYMMETRY_TREE_TEXT)
    assert asym in set(TreeEnumerator(grammar.abstract).iter_upto(["S"], 4))
