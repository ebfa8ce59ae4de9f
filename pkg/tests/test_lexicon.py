import pytest

from cnlwiki.grammar.errors import GrammarError
from cnlwiki.lexicon import compile_lexicon, entity_name, parse_lexicon_lines


def test_entry_line_format():
    lines = parse_lexicon_lines("LexiconGer", """
    -- nouns
    country_N = mkN "Land" "Länder" neuter ;
    border_V2 = mkV2 "begrenzen" "begrenzt" "begrenzt" ;
    germany_PN = mkPN "Deutschland" ;
    """)
    assert [l.identifier for l in lines] == ["country_N", "border_V2", "germany_PN"]
    assert lines[0].forms == ("Land", "Länder")
    assert lines[0].gender == "neuter"
    assert lines[1].gender is None


def test_compile_lexicon_builds_tables():
    items = compile_lexicon("LexiconGer", "ger",
                            'country_N = mkN "Land" "Länder" neuter ;')
    assert items[0].category == "N"
    assert items[0].fields["s"]["Pl"]["Dat"] == "Ländern"
    assert items[0].fields["g"] == "Neut"


@pytest.mark.parametrize("line,fragment", [
    ('country_N = mkX "Land" ;', "unknown operator"),
    ('country = mkN "Land" neuter ;', "suffix"),
    ('country_N = mkV2 "Land" ;', "does not fit"),
    ('germany_PN = mkPN "A" neuter ;', "takes no gender"),
    ('country_N = mkN neuter "Land" ;', "forms must come before"),
    ('country_N = mkN "Land" masculine feminine ;', "more than one gender"),
    ('country_N mkN "Land" ;', "expected:"),
])
def test_bad_lines_diagnosed_with_line_numbers(line, fragment):
    with pytest.raises(GrammarError) as exc:
        compile_lexicon("LexiconGer", "ger", line)
    diag = exc.value.diagnostics[0]
    assert fragment in diag.message
    assert diag.module == "LexiconGer"


def test_duplicate_identifier_rejected():
    with pytest.raises(GrammarError) as exc:
        compile_lexicon("LexiconAce", "ace",
                        'a_N = mkN "a" ;\na_N = mkN "b" ;')
    assert any("duplicate" in str(d) for d in exc.value.diagnostics)


def test_entity_names_derive_from_lemma():
    assert entity_name("country_N") == "country"
    assert entity_name("germany_PN") == "germany"
    assert entity_name("contain_V2") == "contain"
    assert entity_name("Border_V2") == "border"


def test_entity_names_injective_over_shipped_lexicon(grammar):
    lexical = grammar.abstract.lexical_functions()
    names = [entity_name(f) for f in lexical]
    assert len(names) == len(set(names))


def test_shipped_grammar_total_in_every_language(grammar):
    for conc in grammar.concretes.values():
        assert conc.functions == set(grammar.abstract.functions)
    assert grammar.lexical_gaps == {}


def test_every_lexical_field_nonempty_everywhere(grammar):
    from cnlwiki.trees import Tree

    for identifier in grammar.abstract.lexical_functions():
        for lang, conc in grammar.concretes.items():
            ccat, fields = conc._lin(Tree(identifier), {})
            assert fields, (lang, identifier)
            for slot in fields:
                assert slot and all(t for t in slot), (lang, identifier, slot)
