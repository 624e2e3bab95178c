"""Command-line front end.

Exit codes: 0 success, 1 I/O or manifest error, 2 usage or configuration
error, 3 WER undefined (empty reference with edits).
"""
from __future__ import annotations

import logging
import os
import sys
from pathlib import Path

import click

from . import __version__
from .corpus import load_manifest, read_transcript
from .errors import ConfigError, ManifestError, UndefinedWERError
from .metrics import OpKind, score_texts, wer
from .normalizers import SCHEMES, build_pipeline, load_config
from .normalizers.tables import CONFIG_DIR_ENV
from .report import AGGREGATIONS, FORMATS, emit, evaluate

EXIT_IO = 1
EXIT_USAGE = 2
EXIT_UNDEFINED = 3

_EXT = {"csv": "csv", "json": "json", "markdown": "md"}

log = logging.getLogger("cockpit_wer")


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _config(ctx: click.Context):
    config_dir = ctx.obj.get("config_dir")
    if config_dir is not None and not Path(config_dir).is_dir():
        click.echo(f"notice: config dir {config_dir} not found; using embedded defaults", err=True)
        config_dir = None
    try:
        return load_config(config_dir)
    except ConfigError as exc:
        _fail(str(exc), EXIT_USAGE)


def _pipeline(ctx, scheme):
    try:
        return build_pipeline(scheme, _config(ctx))
    except ConfigError as exc:
        _fail(str(exc), EXIT_USAGE)


def _read(path: str) -> str:
    try:
        return read_transcript(path)
    except (OSError, UnicodeDecodeError) as exc:
        _fail(f"cannot read {path}: {exc}", EXIT_IO)


scheme_option = click.option(
    "--scheme", type=click.Choice(SCHEMES), default="english", show_default=True, help="Normalization scheme."
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config-dir",
    envvar=CONFIG_DIR_ENV,
    type=click.Path(file_okay=False),
    default=None,
    help=f"Directory of mapping tables overriding the defaults (env {CONFIG_DIR_ENV}).",
)
@click.option("-v", "--verbose", count=True, help="More logging; repeat for debug output.")
@click.version_option(__version__)
@click.pass_context
def main(ctx, config_dir, verbose):
    """Normalize transcripts and score ASR hypotheses by word error rate."""
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    ctx.obj = {"config_dir": config_dir}


@main.command()
@scheme_option
@click.option("-f", "--file", "path", type=str, default=None, help="Read lines from a file ('-' for stdin).")
@click.argument("text", required=False)
@click.pass_context
def normalize(ctx, scheme, path, text):
    """Normalize TEXT, or each line of a file or stdin."""
    pipeline = _pipeline(ctx, scheme)
    if text is not None and path is not None:
        raise click.UsageError("give TEXT or --file, not both")
    if text is not None:
        click.echo(pipeline.apply_text(text))
        return
    if path is None or path == "-":
        source = sys.stdin.read()
    else:
        try:
            source = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            _fail(f"cannot read {path}: {exc}", EXIT_IO)
    for line in source.splitlines():
        click.echo(pipeline.apply_text(line))


def _score(ctx, ref, hyp, scheme, inline):
    pipeline = _pipeline(ctx, scheme)
    ref_text = ref if inline else _read(ref)
    hyp_text = hyp if inline else _read(hyp)
    result = score_texts(pipeline.apply_text(ref_text), pipeline.apply_text(hyp_text))
    try:
        score = wer(result.counts)
    except UndefinedWERError as exc:
        _fail(str(exc), EXIT_UNDEFINED)
    return result, score


def _summary(score) -> str:
    c = score.counts
    return f"WER {score.percent} S {c.substitutions} D {c.deletions} I {c.insertions} N {c.reference_length}"


inline_option = click.option("--inline", is_flag=True, help="Treat REF and HYP as text instead of file paths.")


@main.command("wer")
@scheme_option
@inline_option
@click.argument("ref")
@click.argument("hyp")
@click.pass_context
def wer_cmd(ctx, scheme, inline, ref, hyp):
    """Word error rate of HYP against REF (transcript files)."""
    _, score = _score(ctx, ref, hyp, scheme, inline)
    click.echo(_summary(score))


@main.command()
@scheme_option
@inline_option
@click.argument("ref")
@click.argument("hyp")
@click.pass_context
def align(ctx, scheme, inline, ref, hyp):
    """Show the word alignment of HYP against REF and the substituted words."""
    result, score = _score(ctx, ref, hyp, scheme, inline)
    click.echo(_summary(score))
    labels = {OpKind.MATCH: "=", OpKind.SUBSTITUTE: "S", OpKind.DELETE: "D", OpKind.INSERT: "I"}
    width = max((len(result.ref_tokens[op.ref_index]) for op in result.alignment if op.ref_index is not None), default=1)
    for op in result.alignment:
        r = result.ref_tokens[op.ref_index] if op.ref_index is not None else "*"
        h = result.hyp_tokens[op.hyp_index] if op.hyp_index is not None else "*"
        click.echo(f"{labels[op.kind]}  {r:<{width}}  {h}")
    subs = result.substitutions
    if subs:
        click.echo("substitutions:")
        for r, h in subs:
            click.echo(f"  {r} -> {h}")


def _split_list(values):
    out = []
    for v in values:
        out.extend(x.strip() for x in v.split(",") if x.strip())
    return out


def _dedupe(items, what):
    seen = []
    for x in items:
        if x in seen:
            click.echo(f"warning: duplicate {what} {x!r} ignored", err=True)
        else:
            seen.append(x)
    return seen


@main.command("evaluate")
@click.argument("manifest")
@click.option("--schemes", "schemes", multiple=True, help="Comma-separated schemes (default: all seven).")
@click.option("--models", "models", multiple=True, help="Comma-separated model ids (default: all declared).")
@click.option("--aggregation", type=click.Choice(AGGREGATIONS), default="micro", show_default=True)
@click.option(
    "--format", "formats", type=click.Choice(FORMATS), multiple=True, help="Output format(s) (default: markdown)."
)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None, help="Write report files here.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes.")
@click.option("--top-k", type=click.IntRange(min=1), default=20, show_default=True)
@click.pass_context
def evaluate_cmd(ctx, manifest, schemes, models, aggregation, formats, out_dir, jobs, top_k):
    """Evaluate every scheme x model cell over a corpus MANIFEST.

    Writes the overall matrix, one matrix per scenario and the substitution
    report.
    """
    schemes = _dedupe(_split_list(schemes), "scheme") or list(SCHEMES)
    bad = [s for s in schemes if s not in SCHEMES]
    if bad:
        _fail(f"unknown scheme(s): {', '.join(bad)}; expected one of {', '.join(SCHEMES)}", EXIT_USAGE)
    models = _dedupe(_split_list(models), "model") or None
    formats = _dedupe(list(formats), "format") or ["markdown"]
    cfg = _config(ctx)
    try:
        corpus = load_manifest(manifest)
    except ManifestError as exc:
        _fail(str(exc), EXIT_IO)
    try:
        result = evaluate(corpus, schemes, models, aggregation, cfg, jobs, top_k=top_k)
    except ConfigError as exc:
        _fail(str(exc), EXIT_USAGE)
    except UndefinedWERError as exc:
        _fail(str(exc), EXIT_UNDEFINED)
    for w in result.scenarios.warnings:
        click.echo(f"warning: {w}", err=True)

    outputs = []
    for m in result.scenarios.matrices:
        name = "overall" if m.scenario_scope == "all" else "scenario-" + m.scenario_scope.replace(":", "-")
        outputs.append((name, m))
    outputs.append(("substitutions", result.errors))

    if out_dir is None:
        for fmt in formats:
            for _, report in outputs:
                sys.stdout.buffer.write(emit(report, fmt))
                sys.stdout.buffer.write(b"\n")
        sys.stdout.flush()
        return
    try:
        os.makedirs(out_dir, exist_ok=True)
        for fmt in formats:
            for name, report in outputs:
                path = Path(out_dir) / f"{name}.{_EXT[fmt]}"
                path.write_bytes(emit(report, fmt))
                log.info("wrote %s", path)
    except OSError as exc:
        _fail(f"cannot write reports: {exc}", EXIT_IO)


if __name__ == "__main__":
    main()
