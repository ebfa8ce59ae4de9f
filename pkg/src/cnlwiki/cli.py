"""Command line interface.

serve runs the HTTP API over a store directory; the remaining commands
operate on a store (or the built-in demo grammar) directly.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from cnlwiki import evalharness, shipped
from cnlwiki.grammar.errors import GrammarError
from cnlwiki.grammar.pmcfg import CompiledGrammar


def _store_option(value: str | None, required: bool = True) -> str | None:
    store = value or os.environ.get("CNLWIKI_STORE")
    if required and not store:
        raise click.UsageError("no store: pass --store or set CNLWIKI_STORE")
    return store


def _grammar_for(store: str | None) -> CompiledGrammar:
    if store is None:
        return shipped.build_grammar()
    from cnlwiki.wiki import Wiki

    return Wiki(store).state.grammar


@click.group()
def main() -> None:
    """Multilingual controlled-natural-language semantic wiki."""


@main.command()
@click.option("--store", help="store directory (default: $CNLWIKI_STORE)")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--ui", "ui_dir", default=None,
              help="serve the built web editor from this directory under /ui")
def serve(store: str | None, host: str, port: int, ui_dir: str | None) -> None:
    """Run the HTTP API."""
    import uvicorn

    from cnlwiki.service import create_app

    app = create_app(_store_option(store), ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


@main.command("check-grammar")
@click.argument("store", type=click.Path(exists=True, file_okay=False))
def check_grammar(store: str) -> None:
    """Compile the store's grammar; print diagnostics on failure."""
    from cnlwiki.wiki import Wiki

    try:
        wiki = Wiki(store)
    except GrammarError as e:
        for diag in e.diagnostics:
            click.echo(str(diag), err=True)
        sys.exit(1)
    grammar = wiki.state.grammar
    click.echo(f"ok: {len(grammar.languages)} languages "
               f"({', '.join(grammar.languages)})")
    for lang, missing in sorted(grammar.lexical_gaps.items()):
        click.echo(f"note: {lang} lexicon misses {', '.join(missing)}")


@main.command("export-axioms")
@click.argument("store", type=click.Path(exists=True, file_okay=False))
def export_axioms(store: str) -> None:
    """Write the semantics of all included entries, one per line."""
    from cnlwiki.wiki import Wiki

    for entry_id, axiom in Wiki(store).export_axioms():
        click.echo(f"{entry_id}\t{axiom}")


@main.group()
def eval() -> None:
    """Grammar evaluation reports."""


def _emit_report(report: evalharness.EvalReport, json_path: str | None) -> None:
    data = report.as_dict()
    if json_path:
        Path(json_path).write_text(json.dumps(data, indent=1), "utf-8")
    for key in ("language", "sentences_total", "ambiguous", "ambiguity_rate",
                "harmless_rate", "round_trip_checked"):
        click.echo(f"{key}: {data[key]}")
    if data["sentence_counts"]:
        click.echo("sentences per length: " + ", ".join(
            f"{k}:{v}" for k, v in data["sentence_counts"].items()))
    for failure in report.round_trip_failures[:20]:
        click.echo(f"round-trip failure: {failure}")


@eval.command()
@click.option("--lang", default="ace", show_default=True)
@click.option("--max-tokens", default=8, show_default=True, type=int)
@click.option("--cap", default=evalharness.DEFAULT_SENTENCE_CAP, show_default=True, type=int)
@click.option("--store", default=None)
@click.option("--json", "json_path", default=None)
def coverage(lang: str, max_tokens: int, cap: int, store: str | None,
             json_path: str | None) -> None:
    """Count all sentences up to a token bound."""
    grammar = _grammar_for(_store_option(store, required=False))
    _emit_report(evalharness.coverage_report(grammar, lang, max_tokens, cap), json_path)


@eval.command()
@click.option("--lang", default="ace", show_default=True)
@click.option("--max-tokens", default=8, show_default=True, type=int)
@click.option("--cap", default=evalharness.DEFAULT_SENTENCE_CAP, show_default=True, type=int)
@click.option("--store", default=None)
@click.option("--json", "json_path", default=None)
def ambiguity(lang: str, max_tokens: int, cap: int, store: str | None,
              json_path: str | None) -> None:
    """Measure ambiguity and harmlessness over all bounded sentences.

    Exits nonzero if any ambiguous sentence changes meaning across readings.
    """
    grammar = _grammar_for(_store_option(store, required=False))
    report = evalharness.ambiguity_report(grammar, lang, max_tokens, cap)
    _emit_report(report, json_path)
    if report.harmless_rate < 1.0:
        sys.exit(1)


@eval.command()
@click.option("--lang", default=None, help="one language (default: all)")
@click.option("--max-depth", default=4, show_default=True, type=int)
@click.option("--processes", default=None, type=int)
@click.option("--store", default=None)
@click.option("--json", "json_path", default=None)
def roundtrip(lang: str | None, max_depth: int, processes: int | None,
              store: str | None, json_path: str | None) -> None:
    """Check parse(linearize(t)) contains t for all trees up to a depth.

    Exits nonzero on any failure.
    """
    grammar = _grammar_for(_store_option(store, required=False))
    report = evalharness.round_trip_check(grammar, lang, max_depth, processes)
    _emit_report(report, json_path)
    if report.round_trip_failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
