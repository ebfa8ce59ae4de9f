import pytest

from cnlwiki.grammar.compile import LexicalItem, compile_grammar
from cnlwiki.grammar.errors import GrammarError

ABSTRACT = """
abstract T {
  cat S ; cat CN ; cat NP ; cat N ;
  fun everyNP : CN -> NP ;
  fun useN : N -> CN ;
  fun mk : NP -> S ;
}
"""


def _concrete(lin_every="lin everyNP cn = {s = \"every\" ++ cn.s ! Sg} ;",
              lincat_n="lincat N = {s : Num => Str} ;",
              extra=""):
    return f"""
    concrete TEng of T {{
      param Num = Sg | Pl ;
      lincat S = {{s : Str}} ;
      lincat CN = {{s : Num => Str}} ;
      lincat NP = {{s : Str}} ;
      {lincat_n}
      {lin_every}
      lin useN n = {{s = n.s}} ;
      lin mk np = {{s = np.s}} ;
      {extra}
    }}
    """


def _nouns(lang="eng"):
    return {lang: [LexicalItem("a_N", "N", {"s": {"Sg": "cat", "Pl": "cats"}})]}


def test_one_production_per_argument_combination():
    g = compile_grammar({"T": ABSTRACT, "TEng": _concrete()}, _nouns())
    conc = g.concretes["eng"]
    prods = [p for p in conc.productions if p.fun == "everyNP"]
    assert len(prods) == 1  # CN has no inherent parameters


def test_inherent_parameters_split_categories_and_slots():
    src = """
    concrete TGer of T {
      param Num = Sg | Pl ;
      param Case = Nom | Acc | Dat | Gen ;
      param Gender = Masc | Fem | Neut ;
      lincat S = {s : Str} ;
      lincat CN = {s : Num => Case => Str ; g : Gender} ;
      lincat NP = {s : Str} ;
      lincat N = {s : Num => Case => Str ; g : Gender} ;
      lin everyNP cn = {s = case cn.g of {_ => "jedes"} ++ cn.s ! Sg ! Nom} ;
      lin useN n = {s = n.s ; g = n.g} ;
      lin mk np = {s = np.s} ;
    }
    """
    forms = {num: {c: "x" for c in ("Nom", "Acc", "Dat", "Gen")} for num in ("Sg", "Pl")}
    lex = {"ger": [LexicalItem("a_N", "N", {"s": forms, "g": "Neut"}),
                   LexicalItem("b_N", "N", {"s": forms, "g": "Masc"}),
                   LexicalItem("c_N", "N", {"s": forms, "g": "Fem"})]}
    g = compile_grammar({"T": ABSTRACT, "TGer": src}, lex)
    conc = g.concretes["ger"]
    n_ccats = [c for c in conc.ccats if c.cat == "N"]
    assert len(n_ccats) == 3  # one per gender
    assert all(c.nslots == 8 for c in n_ccats)  # 2 numbers x 4 cases
    # one everyNP production per gendered CN category
    assert len([p for p in conc.productions if p.fun == "everyNP"]) == 3


def test_missing_lin_reported():
    bad = _concrete(lin_every="")
    with pytest.raises(GrammarError) as exc:
        compile_grammar({"T": ABSTRACT, "TEng": bad}, _nouns())
    assert any("missing lin for everyNP" in str(d) for d in exc.value.diagnostics)


def test_non_exhaustive_case_rejected():
    bad = _concrete(
        lin_every='lin everyNP cn = {s = case Sg of {Pl => "x"} ++ cn.s ! Sg} ;')
    with pytest.raises(GrammarError) as exc:
        compile_grammar({"T": ABSTRACT, "TEng": bad}, _nouns())
    assert any("non-exhaustive" in str(d) for d in exc.value.diagnostics)


def test_type_mismatch_in_lin_rejected():
    bad = _concrete(lin_every='lin everyNP cn = {s = cn.s ! Sg ! Pl} ;')
    with pytest.raises(GrammarError) as exc:
        compile_grammar({"T": ABSTRACT, "TEng": bad}, _nouns())
    assert any("non-table" in str(d) for d in exc.value.diagnostics)


def test_unknown_category_in_abstract():
    with pytest.raises(GrammarError) as exc:
        compile_grammar({"T": "abstract T { cat S ; fun f : Foo -> S ; }"})
    assert any("unknown category Foo" in str(d) for d in exc.value.diagnostics)


def test_variants_expand_to_multiple_productions():
    g = compile_grammar({"T": ABSTRACT,
                         "TEng": _concrete(
                             lin_every='lin everyNP cn = {s = ("each" | "every") ++ cn.s ! Sg} ;')},
                        _nouns())
    prods = [p for p in g.concretes["eng"].productions if p.fun == "everyNP"]
    assert len(prods) == 2
    assert prods[0].seqs[0][0] == "each"  # first alternative listed first


def test_lexical_gaps_reported_not_fatal():
    modules = {
        "T": ABSTRACT,
        "TEng": _concrete(),
        "TGer": _concrete().replace("TEng", "TGer"),
    }
    lex = {
        "eng": [LexicalItem("a_N", "N", {"s": {"Sg": "cat", "Pl": "cats"}})],
        "ger": [],
    }
    g = compile_grammar(modules, lex)
    assert g.lexical_gaps == {"ger": ["a_N"]}
    assert "a_N" in g.abstract.functions


def test_unproductive_rules_trimmed():
    g = compile_grammar({"T": ABSTRACT, "TEng": _concrete()}, {"eng": []})
    conc = g.concretes["eng"]
    assert not [p for p in conc.productions if p.fun == "everyNP"]


def test_lexicon_entry_shape_checked():
    lex = {"eng": [LexicalItem("a_N", "N", {"s": {"Sg": "cat"}})]}  # Pl missing
    with pytest.raises(GrammarError) as exc:
        compile_grammar({"T": ABSTRACT, "TEng": _concrete()}, lex)
    assert any("missing Pl" in str(d) for d in exc.value.diagnostics)


def test_duplicate_lin_rejected():
    extra = 'lin mk np = {s = np.s} ;'
    with pytest.raises(GrammarError) as exc:
        compile_grammar({"T": ABSTRACT, "TEng": _concrete(extra=extra)}, _nouns())
    assert any("duplicate lin" in str(d) for d in exc.value.diagnostics)
