#!/usr/bin/env python3
"""
Command-line interface for numtrans.

Data goes to standard output (JSON lines or plain text); diagnostics and
logging go to standard error.
"""

import sys
import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, TextIO, Tuple

try:
    import click
    from rich.console import Console
    from rich.table import Table
except ImportError:
    print("CLI dependencies not installed. Install with: pip install 'numtrans-python[cli]'",
          file=sys.stderr)
    sys.exit(1)

from .errors import DatasetError, NumtransError
from .evaluation import (
    build_reference_item, generate_hypotheses, load_dataset, load_hypotheses,
    pass_rate, report_rows, report_to_dict
)
from .formatter import render_forms
from .llm_client import LlmConfig, Strategy, llm_translate
from .models import Direction, Language
from .parsers import parse_number
from .pipeline import (
    STYLES, check_translation, extract_pairs, get_all_extractors, post_edit, post_edit_batch
)
from .utils import NumtransUtils


console = Console()
err_console = Console(stderr=True)

DIRECTIONS = [d.value for d in Direction]
LANGUAGES = [lang.value for lang in Language]
STRATEGIES = [s.value for s in Strategy]
EXTRACTORS = [e.name for e in get_all_extractors()]


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Enable debug logging')
@click.option('--quiet', '-q', is_flag=True, help='Log errors only')
@click.option('--config', '-c', 'config_path', type=click.Path(exists=True, dir_okay=False),
              help='YAML file with LLM endpoint settings')
@click.pass_context
def cli(ctx, verbose: bool, quiet: bool, config_path: Optional[str]):
    """
    numtrans - parse, check and post-edit numbers in Chinese-English translations.

    Everything runs offline except the LLM extractor and the translate/evaluate
    strategies, which call the chat-completion endpoint configured through
    NUMTRANS_LLM_* variables or --config.
    """
    ctx.ensure_object(dict)

    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.ERROR
    else:
        level = logging.WARNING

    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    ctx.obj['verbose'] = verbose
    ctx.obj['config_path'] = config_path


def _fail(message: str, code: int = 1):
    err_console.print(f"[red]Error: {message}[/red]")
    sys.exit(code)


def _llm_config(ctx) -> LlmConfig:
    """File settings overlaid with environment settings, validated."""
    path = ctx.obj.get('config_path')
    base = LlmConfig.from_file(path) if path else None
    config = LlmConfig.from_env(base=base)
    if ctx.obj.get('verbose'):
        config = replace(config, verbose=True)
    return config.validate()


def _emit(record: Dict[str, Any]):
    click.echo(NumtransUtils.to_json_line(record))


def _input_lines(stream: Optional[TextIO]) -> Iterator[str]:
    stream = stream or click.get_text_stream('stdin')
    for line in stream:
        line = line.rstrip('\n')
        if line.strip():
            yield line


def _sentence_pairs(source: Optional[str], target: Optional[str],
                    stream: Optional[TextIO]) -> List[Tuple[Optional[str], str, str]]:
    """(id, source, target) from arguments, or from JSON lines with source/target fields."""
    if source is not None and target is not None:
        return [(None, source, target)]
    if source is not None or target is not None:
        raise click.UsageError("give both SOURCE and TARGET, or neither to read JSON lines")
    records = []
    for line, obj in NumtransUtils.read_jsonl(stream or click.get_text_stream('stdin')):
        for key in ('source', 'target'):
            if not isinstance(obj.get(key), str):
                raise DatasetError("expected a string", line, key)
        records.append((obj.get('id'), obj['source'], obj['target']))
    return records


def _with_id(record: Dict[str, Any], item_id: Optional[str]) -> Dict[str, Any]:
    return {'id': item_id, **record} if item_id is not None else record


def _extractor_options(ctx, extractor: str) -> Dict[str, Any]:
    return {'config': _llm_config(ctx)} if extractor == 'llm' else {}


@cli.command()
@click.argument('texts', nargs=-1)
@click.option('--lang', '-l', type=click.Choice(LANGUAGES), required=True, help='Phrase language')
@click.option('--input', '-i', 'input_file', type=click.File('r', encoding='utf-8'),
              help='One phrase per line (default: stdin when no TEXTS)')
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='json')
def parse(texts: Tuple[str, ...], lang: str, input_file: Optional[TextIO], output_format: str):
    """Parse numeric phrases into canonical numerals."""
    language = Language(lang)
    phrases = list(texts) or list(_input_lines(input_file))
    failures = 0
    for phrase in phrases:
        try:
            canonical = parse_number(phrase, language)
        except NumtransError as e:
            failures += 1
            if output_format == 'json':
                _emit({'input': phrase, 'error': str(e)})
            err_console.print(f"[red]{e}[/red]")
            continue
        if output_format == 'json':
            _emit({'input': phrase, 'canonical': canonical.to_dict()})
        else:
            click.echo(f"{phrase}\t{canonical}")
    if failures:
        sys.exit(1)


def _pair_command_options(func):
    func = click.option('--input', '-i', 'input_file', type=click.File('r', encoding='utf-8'),
                        help='JSON lines with source/target (default: stdin)')(func)
    func = click.option('--extractor', '-e', type=click.Choice(EXTRACTORS), default='rules',
                        help='Pair extractor')(func)
    func = click.option('--direction', '-d', type=click.Choice(DIRECTIONS), required=True,
                        help='Translation direction')(func)
    func = click.argument('target', required=False)(func)
    func = click.argument('source', required=False)(func)
    return func


@cli.command()
@_pair_command_options
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='json')
@click.pass_context
def extract(ctx, source, target, direction, extractor, input_file, output_format):
    """Extract aligned numeric pairs from sentence pairs."""
    try:
        options = _extractor_options(ctx, extractor)
        for item_id, src, tgt in _sentence_pairs(source, target, input_file):
            pairs = extract_pairs(src, tgt, direction, extractor, **options)
            if output_format == 'json':
                _emit(_with_id({'pairs': [p.to_dict() for p in pairs]}, item_id))
            else:
                for p in pairs:
                    click.echo(f"{p.source.surface if p.source else '-'}\t"
                               f"{p.target.surface if p.target else '-'}")
    except NumtransError as e:
        _fail(str(e))


@cli.command()
@_pair_command_options
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='json')
@click.pass_context
def verify(ctx, source, target, direction, extractor, input_file, output_format):
    """Extract numeric pairs and give each a verdict."""
    try:
        options = _extractor_options(ctx, extractor)
        for item_id, src, tgt in _sentence_pairs(source, target, input_file):
            pairs = check_translation(src, tgt, direction, extractor, **options)
            if output_format == 'json':
                _emit(_with_id({'pairs': [p.to_dict() for p in pairs]}, item_id))
            else:
                for p in pairs:
                    click.echo(f"{p.verdict.kind.value.upper()}\t"
                               f"{p.source.surface if p.source else '-'}\t"
                               f"{p.target.surface if p.target else '-'}")
    except NumtransError as e:
        _fail(str(e))


@cli.command()
@_pair_command_options
@click.option('--style', '-s', type=click.Choice(STYLES), default='digits',
              help='Spelling written over mismatched spans')
@click.option('--jobs', '-j', type=click.IntRange(min=1), default=4, envvar='NUMTRANS_PARALLELISM',
              show_default=True, help='Sentence pairs processed in parallel')
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='json')
@click.pass_context
def postedit(ctx, source, target, direction, extractor, input_file, style, jobs, output_format):
    """Correct mistranslated numbers in translations."""
    try:
        options = _extractor_options(ctx, extractor)
        records = _sentence_pairs(source, target, input_file)
        reports = post_edit_batch([(s, t) for _, s, t in records], direction, style,
                                  extractor, max_workers=jobs, **options)
        for (item_id, _, _), report in zip(records, reports):
            if output_format == 'json':
                _emit(_with_id(report.to_dict(), item_id))
            else:
                click.echo(report.edited)
    except NumtransError as e:
        _fail(str(e))


@cli.command()
@click.argument('phrases', nargs=-1)
@click.option('--direction', '-d', type=click.Choice(DIRECTIONS), required=True,
              help='Phrase language to reference language')
@click.option('--input', '-i', 'input_file', type=click.File('r', encoding='utf-8'),
              help='One phrase per line (default: stdin when no PHRASES)')
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text')
@click.option('--id-prefix', default='ref', show_default=True, help='Item id prefix in JSON output')
def genrefs(phrases, direction, input_file, output_format, id_prefix):
    """Generate reference spellings of numeric phrases in the target language."""
    direction = Direction.parse(direction)
    phrases = list(phrases) or list(_input_lines(input_file))
    try:
        for n, phrase in enumerate(phrases, start=1):
            if output_format == 'json':
                _emit(build_reference_item(f"{id_prefix}-{n}", direction, phrase).to_dict())
            else:
                canonical = parse_number(phrase, direction.source)
                for form in sorted(render_forms(canonical, direction.target)):
                    click.echo(form)
    except NumtransError as e:
        _fail(str(e))


def _display_report_table(result, title: str):
    table = Table(title=title)
    table.add_column("Type", style="cyan")
    table.add_column("EN→ZH", justify="right", style="green")
    table.add_column("ZH→EN", justify="right", style="green")
    for row in report_rows(result):
        table.add_row(*row)
    console.print(table)
    console.print(f"Overall PR: {result.passed}/{result.total} "
                  f"({float(result.overall) * 100:.1f}%)")


@cli.command()
@click.option('--dataset', '-D', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Dataset JSON lines')
@click.option('--hyp', '-H', 'hyp_path', type=click.Path(exists=True, dir_okay=False),
              help='Hypotheses JSON lines ({"id", "hypothesis"})')
@click.option('--strategy', type=click.Choice(STRATEGIES),
              help='Translate the dataset live with this prompting strategy')
@click.option('--postedit', 'postedit_flag', is_flag=True,
              help='Post-edit hypotheses before judging')
@click.option('--style', '-s', type=click.Choice(STYLES), default='digits')
@click.option('--jobs', '-j', type=click.IntRange(min=1), default=4, envvar='NUMTRANS_PARALLELISM',
              show_default=True)
@click.option('--save-hyps', type=click.Path(dir_okay=False),
              help='Write the judged hypotheses as JSON lines')
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text')
@click.pass_context
def evaluate(ctx, dataset, hyp_path, strategy, postedit_flag, style, jobs, save_hyps,
             output_format):
    """Score hypotheses against a dataset with the pass-rate metric."""
    if bool(hyp_path) == bool(strategy):
        raise click.UsageError("give exactly one of --hyp or --strategy")
    try:
        items = load_dataset(dataset)
        if strategy:
            hypotheses = generate_hypotheses(
                items, Strategy(strategy), config=_llm_config(ctx), postedit=postedit_flag,
                style=style, max_workers=jobs)
        else:
            hypotheses = load_hypotheses(hyp_path)
            if postedit_flag:
                hypotheses = _post_edit_hypotheses(items, hypotheses, style)
        if save_hyps:
            lines = [NumtransUtils.to_json_line({'id': k, 'hypothesis': v})
                     for k, v in sorted(hypotheses.items())]
            Path(save_hyps).write_text("\n".join(lines) + "\n", encoding="utf-8")
        result = pass_rate(items, hypotheses)
    except NumtransError as e:
        _fail(str(e))

    if output_format == 'json':
        click.echo(json.dumps(report_to_dict(result), ensure_ascii=False))
    else:
        label = f"strategy {strategy}" if strategy else Path(hyp_path).name
        if postedit_flag:
            label += " + post-edit"
        _display_report_table(result, f"Pass rate: {label}")


def _post_edit_hypotheses(items, hypotheses: Dict[str, str], style: str) -> Dict[str, str]:
    edited = dict(hypotheses)
    for item in items:
        if item.id in hypotheses:
            edited[item.id] = post_edit(item.source, hypotheses[item.id], item.direction, style).edited
    return edited


@cli.command()
@click.argument('texts', nargs=-1)
@click.option('--direction', '-d', type=click.Choice(DIRECTIONS), required=True)
@click.option('--strategy', type=click.Choice(STRATEGIES), default='base', show_default=True)
@click.option('--input', '-i', 'input_file', type=click.File('r', encoding='utf-8'),
              help='One sentence per line (default: stdin when no TEXTS)')
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text')
@click.pass_context
def translate(ctx, texts, direction, strategy, input_file, output_format):
    """Translate sentences with an LLM prompting strategy."""
    try:
        config = _llm_config(ctx)
        for sentence in list(texts) or list(_input_lines(input_file)):
            output = llm_translate(sentence, Direction.parse(direction), Strategy(strategy), config)
            if output_format == 'json':
                _emit({'source': sentence, 'output': output, 'strategy': strategy})
            else:
                click.echo(output)
    except NumtransError as e:
        _fail(str(e))


def main():
    """Main entry point for CLI."""
    cli()


if __name__ == '__main__':
    main()
