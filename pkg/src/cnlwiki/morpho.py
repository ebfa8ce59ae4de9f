"""Smart paradigms: build full inflection tables from a few forms.

Each operator returns the nested record expected by the corresponding
language's lincat (see the shipped grammar modules): nouns are number
(and, for German, case) tables plus gender where the language has it;
transitive verbs carry infinitive, third person singular and past
participle.
"""

from __future__ import annotations

import re

LANGUAGES = ("ace", "ger", "spa")

# Gender keywords accepted in lexicon entries; German has three genders,
# Spanish two.
GENDER_WORDS = ("masculine", "feminine", "neuter")
_GENDERS = {"ger": ("Masc", "Fem", "Neut"), "spa": ("Masc", "Fem")}

_VOWELS = "aeiou"
_ES_ENDINGS = ("s", "x", "z", "ch", "sh")


class ParadigmError(ValueError):
    """A paradigm operator was applied to unusable arguments."""


def _require_forms(op: str, forms: tuple[str, ...], low: int, high: int) -> None:
    if not (low <= len(forms) <= high):
        raise ParadigmError(f"{op} takes {low}-{high} forms, got {len(forms)}")
    for f in forms:
        if not f or f != f.strip():
            raise ParadigmError(f"{op}: empty or padded form {f!r}")


def _gender_value(lang: str, gender: str | None, op: str) -> str:
    if gender is None:
        raise ParadigmError(f"{op}: {lang} nouns need a gender")
    value = {"masculine": "Masc", "feminine": "Fem", "neuter": "Neut"}.get(gender)
    if value is None or value not in _GENDERS[lang]:
        raise ParadigmError(f"{op}: bad gender {gender!r} for {lang}")
    return value


# -- English orthography helpers --------------------------------------------

def _en_es_form(word: str) -> str:
    """Add -s with standard spelling adjustments (plural and 3rd person)."""
    if any(word.endswith(e) for e in _ES_ENDINGS):
        return word + "es"
    if word.endswith("y") and len(word) > 1 and word[-2] not in _VOWELS:
        return word[:-1] + "ies"
    return word + "s"


def _en_past(word: str) -> str:
    if word.endswith("e"):
        return word + "d"
    if word.endswith("y") and len(word) > 1 and word[-2] not in _VOWELS:
        return word[:-1] + "ied"
    return word + "ed"


# -- German helpers -----------------------------------------------------------

def _de_default_plural(word: str) -> str:
    if word.endswith("e"):
        return word + "n"
    if word.endswith(("er", "el", "en")):
        return word
    return word + "e"


def _de_noun_table(sg: str, pl: str, gender: str) -> dict:
    gen_sg = sg + "s" if gender in ("Masc", "Neut") else sg
    dat_pl = pl if pl.endswith("n") else pl + "n"
    return {
        "Sg": {"Nom": sg, "Acc": sg, "Dat": sg, "Gen": gen_sg},
        "Pl": {"Nom": pl, "Acc": pl, "Dat": dat_pl, "Gen": pl},
    }


# -- Spanish helpers ----------------------------------------------------------

def _es_plural(word: str) -> str:
    if word[-1] in "aeiouáéíóú":
        return word + "s"
    return word + "es"


def _es_conjugate(inf: str) -> tuple[str, str]:
    if inf.endswith("ar"):
        return inf[:-2] + "a", inf[:-2] + "ado"
    if inf.endswith(("er", "ir")):
        return inf[:-2] + "e", inf[:-2] + "ido"
    raise ParadigmError(f"mkV2: cannot conjugate {inf!r}; give all three forms")


# -- operators ----------------------------------------------------------------

def mk_n(lang: str, forms: tuple[str, ...], gender: str | None = None) -> dict:
    """Noun table from one form (lemma) or two (singular, plural)."""
    if lang == "ace":
        _require_forms("mkN", forms, 1, 2)
        if gender is not None:
            raise ParadigmError("mkN: ace nouns take no gender")
        sg = forms[0]
        pl = forms[1] if len(forms) == 2 else _en_es_form(sg)
        return {"s": {"Sg": sg, "Pl": pl}}
    if lang == "ger":
        _require_forms("mkN", forms, 1, 2)
        g = _gender_value(lang, gender, "mkN")
        sg = forms[0]
        pl = forms[1] if len(forms) == 2 else _de_default_plural(sg)
        return {"s": _de_noun_table(sg, pl, g), "g": g}
    if lang == "spa":
        _require_forms("mkN", forms, 1, 2)
        g = _gender_value(lang, gender, "mkN")
        sg = forms[0]
        pl = forms[1] if len(forms) == 2 else _es_plural(sg)
        return {"s": {"Sg": sg, "Pl": pl}, "g": g}
    raise ParadigmError(f"mkN: unknown language {lang!r}")


def mk_v2(lang: str, forms: tuple[str, ...]) -> dict:
    """Transitive verb table: infinitive, 3rd person singular, past participle."""
    if lang == "ace":
        _require_forms("mkV2", forms, 1, 3)
        inf = forms[0]
        sg3 = forms[1] if len(forms) >= 2 else _en_es_form(inf)
        part = forms[2] if len(forms) >= 3 else _en_past(inf)
    elif lang == "ger":
        _require_forms("mkV2", forms, 1, 3)
        inf = forms[0]
        stem = inf[:-2] if inf.endswith("en") else inf.rstrip("n")
        sg3 = forms[1] if len(forms) >= 2 else stem + "t"
        part = forms[2] if len(forms) >= 3 else "ge" + stem + "t"
    elif lang == "spa":
        if len(forms) not in (1, 3):
            raise ParadigmError("mkV2: spa takes one form or all three")
        _require_forms("mkV2", forms, 1, 3)
        inf = forms[0]
        if len(forms) == 3:
            sg3, part = forms[1], forms[2]
        else:
            sg3, part = _es_conjugate(inf)
    else:
        raise ParadigmError(f"mkV2: unknown language {lang!r}")
    return {"s": {"VInf": inf, "VSg3": sg3, "VPart": part}}


def mk_pn(lang: str, forms: tuple[str, ...]) -> dict:
    """Proper name: a single invariant form."""
    _require_forms("mkPN", forms, 1, 1)
    return {"s": forms[0]}


PARADIGMS = {
    "mkN": ("N", mk_n, True),   # (category, builder, takes gender)
    "mkV2": ("V2", lambda lang, forms, gender=None: mk_v2(lang, forms), False),
    "mkPN": ("PN", lambda lang, forms, gender=None: mk_pn(lang, forms), False),
}


# -- tokenization ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"[^\s.?,\[\]]+|[.?,\[\]]")


def tokenize(text: str) -> list[str]:
    """Whitespace split with ., ?, , and brackets as standalone tokens."""
    return _TOKEN_RE.findall(text)


def detokenize(tokens: list[str] | tuple[str, ...]) -> str:
    """Inverse of tokenize on normalized text: single spaces throughout."""
    return " ".join(tokens)
