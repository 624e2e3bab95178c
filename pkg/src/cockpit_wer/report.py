"""Scheme x model WER matrices, per-scenario breakdowns and substitution reports.

References and hypotheses always go through the same pipeline before
alignment. Cells are independent, so they can be computed in worker
processes; results are collected in declared order, which makes every
emitted byte independent of the worker count.
"""
from __future__ import annotations

import csv
import io
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .corpus import CorpusManifest, canonical_scenario
from .errors import ConfigError, UndefinedWERError
from .metrics import EditCounts, corpus_wer, format_percent, score_texts
from .normalizers import SCHEME_LABELS, NormalizationPipeline, StageConfig, build_pipeline

log = logging.getLogger(__name__)

AGGREGATIONS = ("micro", "macro")
FORMATS = ("csv", "json", "markdown")
DEFAULT_TOP_K = 20


@dataclass(frozen=True)
class ItemResult:
    utterance_id: str
    scenario: str
    counts: EditCounts
    substitutions: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Cell:
    counts: EditCounts
    wer: Fraction
    items: int
    excluded: tuple[str, ...] = ()

    @property
    def percent(self) -> str:
        return format_percent(self.wer)


@dataclass(frozen=True)
class ReportMatrix:
    """WER percentages with normalizer schemes as rows and models as columns.

    A cell is None when the model has no hypotheses in the scope.
    """

    schemes: tuple[str, ...]
    models: tuple[str, ...]
    cells: dict[tuple[str, str], Cell | None]
    aggregation: str
    scenario_scope: str = "all"

    def cell(self, scheme: str, model: str) -> Cell | None:
        return self.cells[(scheme, model)]

    def percent(self, scheme: str, model: str) -> str | None:
        c = self.cells[(scheme, model)]
        return None if c is None else c.percent


@dataclass(frozen=True)
class ErrorReport:
    """Substitution pairs and their frequencies for each (scheme, model)."""

    schemes: tuple[str, ...]
    models: tuple[str, ...]
    pairs: dict[tuple[str, str], tuple[tuple[str, str, int], ...]]
    top_k: int = DEFAULT_TOP_K

    def total(self, scheme: str, model: str) -> int:
        return sum(n for _, _, n in self.pairs[(scheme, model)])


@dataclass
class ScenarioBreakdown:
    matrices: list[ReportMatrix]
    warnings: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self):
        return len(self.matrices)


@dataclass(frozen=True)
class Evaluation:
    overall: ReportMatrix
    scenarios: ScenarioBreakdown
    errors: ErrorReport


# evaluation ------------------------------------------------------------------

def _check_request(c: CorpusManifest, schemes, models, aggregation):
    if not schemes:
        raise ConfigError("no schemes requested")
    if aggregation not in AGGREGATIONS:
        raise ConfigError(f"unknown aggregation {aggregation!r}; expected micro or macro")
    models = tuple(c.models if models is None else models)
    if not models:
        raise ConfigError("no models requested")
    unknown = [m for m in models if m not in c.models]
    if unknown:
        raise ConfigError(f"unknown model id(s): {', '.join(unknown)}")
    for s in schemes:
        build_pipeline(s)  # raises ConfigError for unknown names
    return tuple(schemes), models


def _cell_task(args) -> list[ItemResult]:
    pipeline, rows = args
    out = []
    for uid, scenario, ref, hyp in rows:
        result = score_texts(pipeline.apply_text(ref), pipeline.apply_text(hyp))
        out.append(ItemResult(uid, scenario, result.counts, tuple(result.substitutions)))
    return out


def _run_cells(c, schemes, models, cfg, jobs) -> dict[tuple[str, str], list[ItemResult]]:
    keys = []
    tasks = []
    for scheme in schemes:
        pipeline: NormalizationPipeline = build_pipeline(scheme, cfg)
        for model in models:
            rows = tuple(
                (r.utterance_id, r.scenario, r.reference.text, r.hypotheses[model].text)
                for r in c.records
                if model in r.hypotheses
            )
            keys.append((scheme, model))
            tasks.append((pipeline, rows))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cell_task, tasks))
    else:
        results = [_cell_task(t) for t in tasks]
    return dict(zip(keys, results))


def _aggregate(items: Sequence[ItemResult], aggregation: str, where: str) -> Cell | None:
    if not items:
        return None
    counts = [it.counts for it in items]
    excluded = ()
    if aggregation == "macro":
        excluded = tuple(it.utterance_id for it in items if it.counts.reference_length == 0)
        for uid in excluded:
            log.warning("%s: %s has no reference words after normalization; left out of macro mean", where, uid)
        counts = [it.counts for it in items if it.counts.reference_length > 0]
        if not counts:
            raise UndefinedWERError(f"{where}: every reference is empty after normalization")
    try:
        score = corpus_wer(counts, aggregation)
    except UndefinedWERError as exc:
        raise UndefinedWERError(f"{where}: {exc}") from None
    total = sum((it.counts for it in items), EditCounts())
    return Cell(total, score.wer, len(items), excluded)


def _matrix(results, schemes, models, aggregation, scope) -> ReportMatrix:
    cells = {}
    for scheme in schemes:
        for model in models:
            items = results[(scheme, model)]
            if scope != "all":
                items = [it for it in items if it.scenario == scope]
            cells[(scheme, model)] = _aggregate(items, aggregation, f"cell ({scheme}, {model}, {scope})")
    return ReportMatrix(schemes, models, cells, aggregation, scope)


def _error_report(results, schemes, models, top_k) -> ErrorReport:
    pairs = {}
    for scheme in schemes:
        for model in models:
            counter = Counter(p for it in results[(scheme, model)] for p in it.substitutions)
            pairs[(scheme, model)] = tuple(
                (ref, hyp, n) for (ref, hyp), n in sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
            )
    return ErrorReport(schemes, models, pairs, top_k)


def evaluate(
    c: CorpusManifest,
    schemes: Sequence[str],
    models: Sequence[str] | None = None,
    aggregation: str = "micro",
    cfg: StageConfig | None = None,
    jobs: int = 1,
    scenarios: Iterable[str] | None = None,
    top_k: int = DEFAULT_TOP_K,
) -> Evaluation:
    """Align every (scheme, model) cell once and derive all reports from it."""
    schemes, models = _check_request(c, schemes, models, aggregation)
    results = _run_cells(c, schemes, models, cfg, jobs)
    present = c.scenarios
    warnings = []
    if scenarios is None:
        wanted = present
    else:
        wanted = []
        for s in scenarios:
            s = canonical_scenario(s)
            if s in present:
                wanted.append(s)
            else:
                msg = f"scenario {s!r} has no records; omitted"
                log.warning(msg)
                warnings.append(msg)
    matrices = [_matrix(results, schemes, models, aggregation, s) for s in wanted]
    overall = _matrix(results, schemes, models, aggregation, "all")
    matrices.append(overall)
    return Evaluation(overall, ScenarioBreakdown(matrices, warnings), _error_report(results, schemes, models, top_k))


def evaluate_matrix(c, schemes, models=None, aggregation="micro", cfg=None, jobs=1) -> ReportMatrix:
    return evaluate(c, schemes, models, aggregation, cfg, jobs, scenarios=[]).overall


def scenario_breakdown(c, schemes, models=None, aggregation="micro", cfg=None, jobs=1, scenarios=None) -> ScenarioBreakdown:
    """One matrix per scenario present in the corpus, then the overall matrix."""
    return evaluate(c, schemes, models, aggregation, cfg, jobs, scenarios).scenarios


def error_report(c, schemes, models=None, cfg=None, jobs=1, top_k=DEFAULT_TOP_K) -> ErrorReport:
    return evaluate(c, schemes, models, "micro", cfg, jobs, scenarios=[], top_k=top_k).errors


# emission --------------------------------------------------------------------

def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _parse_fraction(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def matrix_to_dict(r: ReportMatrix) -> dict:
    cells = []
    for scheme in r.schemes:
        for model in r.models:
            c = r.cells[(scheme, model)]
            entry = {"scheme": scheme, "model": model}
            if c is None:
                entry["wer"] = None
            else:
                entry.update(
                    wer=_fraction_str(c.wer),
                    percent=c.percent,
                    S=c.counts.substitutions,
                    D=c.counts.deletions,
                    I=c.counts.insertions,
                    N=c.counts.reference_length,
                    items=c.items,
                    excluded=list(c.excluded),
                )
            cells.append(entry)
    return {
        "kind": "wer_matrix",
        "aggregation": r.aggregation,
        "scenario_scope": r.scenario_scope,
        "schemes": list(r.schemes),
        "models": list(r.models),
        "cells": cells,
    }


def matrix_from_dict(d: dict) -> ReportMatrix:
    cells = {}
    for e in d["cells"]:
        key = (e["scheme"], e["model"])
        if e["wer"] is None:
            cells[key] = None
        else:
            cells[key] = Cell(
                EditCounts(e["S"], e["D"], e["I"], e["N"]),
                _parse_fraction(e["wer"]),
                e["items"],
                tuple(e["excluded"]),
            )
    return ReportMatrix(tuple(d["schemes"]), tuple(d["models"]), cells, d["aggregation"], d["scenario_scope"])


def errors_to_dict(r: ErrorReport) -> dict:
    return {
        "kind": "substitution_report",
        "top_k": r.top_k,
        "schemes": list(r.schemes),
        "models": list(r.models),
        "cells": [
            {
                "scheme": s,
                "model": m,
                "total": r.total(s, m),
                "pairs": [{"reference": a, "hypothesis": b, "count": n} for a, b, n in r.pairs[(s, m)]],
            }
            for s in r.schemes
            for m in r.models
        ],
    }


def errors_from_dict(d: dict) -> ErrorReport:
    pairs = {
        (e["scheme"], e["model"]): tuple((p["reference"], p["hypothesis"], p["count"]) for p in e["pairs"])
        for e in d["cells"]
    }
    return ErrorReport(tuple(d["schemes"]), tuple(d["models"]), pairs, d["top_k"])


def load_report(data: bytes | str) -> ReportMatrix | ErrorReport:
    d = json.loads(data)
    if d.get("kind") == "wer_matrix":
        return matrix_from_dict(d)
    if d.get("kind") == "substitution_report":
        return errors_from_dict(d)
    raise ValueError(f"unknown report kind {d.get('kind')!r}")


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _md_escape(s: str) -> str:
    return s.replace("|", "\\|")


def _emit_matrix(r: ReportMatrix, fmt: str) -> str:
    if fmt == "csv":
        rows = [["scheme", *r.models]]
        for s in r.schemes:
            rows.append([s, *(r.percent(s, m) or "" for m in r.models)])
        return _csv(rows)
    if fmt == "json":
        return json.dumps(matrix_to_dict(r), indent=2, ensure_ascii=False) + "\n"
    lines = [
        f"WER (%), scope: {r.scenario_scope}, aggregation: {r.aggregation}",
        "",
        "| Normalizer | " + " | ".join(_md_escape(m) for m in r.models) + " |",
        "|---|" + "---:|" * len(r.models),
    ]
    for s in r.schemes:
        values = " | ".join(r.percent(s, m) or "-" for m in r.models)
        lines.append(f"| {SCHEME_LABELS.get(s, s)} | {values} |")
    return "\n".join(lines) + "\n"


def _emit_errors(r: ErrorReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(errors_to_dict(r), indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        rows = [["scheme", "model", "reference", "hypothesis", "count"]]
        for s in r.schemes:
            for m in r.models:
                rows.extend([s, m, a, b, n] for a, b, n in r.pairs[(s, m)][: r.top_k])
        return _csv(rows)
    lines = [f"Substitution errors (top {r.top_k} per cell)"]
    for s in r.schemes:
        for m in r.models:
            pairs = r.pairs[(s, m)]
            lines += [
                "",
                f"### {SCHEME_LABELS.get(s, s)} / {_md_escape(m)} ({r.total(s, m)} substitutions)",
                "",
                "| Reference | Prediction | Count |",
                "|---|---|---:|",
            ]
            lines += [f"| {_md_escape(a)} | {_md_escape(b)} | {n} |" for a, b, n in pairs[: r.top_k]]
    return "\n".join(lines) + "\n"


def emit(r: ReportMatrix | ErrorReport, fmt: str = "markdown") -> bytes:
    """Render a report as UTF-8 bytes. Output depends only on the report."""
    if fmt not in FORMATS:
        raise ConfigError(f"unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if isinstance(r, ReportMatrix):
        return _emit_matrix(r, fmt).encode("utf-8")
    if isinstance(r, ErrorReport):
        return _emit_errors(r, fmt).encode("utf-8")
    raise TypeError(f"cannot emit {type(r).__name__}")
