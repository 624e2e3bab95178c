"""Reference/hypothesis corpora keyed by scenario, utterance and model.

A manifest is a UTF-8 JSON-lines file. The first non-comment line is a
header declaring the models and free-form metadata; every further line is
one utterance::

    {"models": ["tiny", "large-v3"], "metadata": {"language": "de+en"}}
    {"id": "tk-01", "scenario": "takeoff", "ref": "flaps one", "hyp": {"tiny": "flaps won"}}
    {"id": "tk-02", "scenario": "takeoff", "ref_path": "ref/tk-02.txt", "hyp_path": {"tiny": "tiny/tk-02.txt"}}

Texts are given inline (``ref``, ``hyp``) or as paths to transcript files
(``ref_path``, ``hyp_path``) resolved against the manifest's directory.
Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ManifestError
from .text import LangHint, Transcript

SCENARIOS = ("takeoff", "ecam", "fordec", "landing", "interview")
OTHER_PREFIX = "other:"

_RECORD_KEYS = {"id", "scenario", "ref", "ref_path", "hyp", "hyp_path", "duration_s", "empty_reference", "lang"}


def canonical_scenario(name: str) -> str:
    """Map a scenario name onto one of the known scenarios or ``other:<name>``."""
    if not isinstance(name, str) or not name.strip():
        raise ValueError("scenario name must be a nonempty string")
    key = name.strip().lower()
    if key in SCENARIOS:
        return key
    if key.startswith(OTHER_PREFIX):
        key = key[len(OTHER_PREFIX):].strip()
        if not key:
            raise ValueError("empty 'other:' scenario name")
        if key in SCENARIOS:
            return key
    return OTHER_PREFIX + key


def scenario_sort_key(scenario: str) -> tuple[int, str]:
    return (SCENARIOS.index(scenario), "") if scenario in SCENARIOS else (len(SCENARIOS), scenario)


@dataclass(frozen=True)
class UtteranceRecord:
    utterance_id: str
    scenario: str
    reference: Transcript
    hypotheses: dict[str, Transcript]
    duration_s: float | None = None
    empty_reference: bool = False

    def __post_init__(self):
        object.__setattr__(self, "scenario", canonical_scenario(self.scenario))
        if not self.utterance_id:
            raise ValueError("utterance_id must be nonempty")
        if self.duration_s is not None and not self.duration_s >= 0:
            raise ValueError(f"{self.utterance_id}: duration_s must be nonnegative")
        if not self.reference.text.strip() and not self.empty_reference:
            raise ValueError(f"{self.utterance_id}: empty reference (set empty_reference to allow it)")


@dataclass(frozen=True)
class CorpusManifest:
    records: tuple[UtteranceRecord, ...]
    models: tuple[str, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "models", tuple(self.models))
        if len(set(self.models)) != len(self.models):
            raise ValueError("duplicate model id in model list")
        seen = set()
        declared = set(self.models)
        for rec in self.records:
            if rec.utterance_id in seen:
                raise ValueError(f"duplicate utterance id {rec.utterance_id!r}")
            seen.add(rec.utterance_id)
            undeclared = set(rec.hypotheses) - declared
            if undeclared:
                raise ValueError(f"{rec.utterance_id}: undeclared model id(s) {sorted(undeclared)}")

    def __len__(self):
        return len(self.records)

    @property
    def scenarios(self) -> list[str]:
        """Scenarios present, known ones first in their fixed order."""
        return sorted({r.scenario for r in self.records}, key=scenario_sort_key)

    def filter(self, scenario: str | None = None, model: str | None = None) -> CorpusManifest:
        return filter_manifest(self, scenario, model)


def filter_manifest(c: CorpusManifest, scenario: str | None = None, model: str | None = None) -> CorpusManifest:
    """Subset of ``c`` by scenario and/or model, order preserved.

    Filtering by model keeps only that model's hypotheses. An unknown model
    id is an error; a scenario with no records just gives an empty corpus.
    """
    if model is not None and model not in c.models:
        raise ManifestError(f"unknown model id {model!r}; declared: {', '.join(c.models)}")
    records = c.records
    if scenario is not None:
        wanted = canonical_scenario(scenario)
        records = tuple(r for r in records if r.scenario == wanted)
    if model is not None:
        records = tuple(
            replace(r, hypotheses={m: t for m, t in r.hypotheses.items() if m == model}) for r in records
        )
    return CorpusManifest(records, (model,) if model is not None else c.models, dict(c.metadata))


def read_transcript(path: str | os.PathLike) -> str:
    """Read a one-utterance transcript file; a trailing newline is dropped."""
    text = Path(path).read_text(encoding="utf-8")
    if text.endswith("\n"):
        text = text[:-1]
        if text.endswith("\r"):
            text = text[:-1]
    return text


def _text_field(obj, inline_key, path_key, base: Path, locus: str):
    if inline_key in obj and path_key in obj:
        raise ManifestError(f"give either '{inline_key}' or '{path_key}', not both", locus)
    if inline_key in obj:
        if not isinstance(obj[inline_key], str):
            raise ManifestError(f"'{inline_key}' must be a string", locus)
        return obj[inline_key]
    if path_key in obj:
        path = base / obj[path_key]
        try:
            return read_transcript(path)
        except FileNotFoundError:
            raise ManifestError(f"transcript file not found: {path}", locus) from None
        except (OSError, UnicodeDecodeError) as exc:
            raise ManifestError(f"cannot read transcript {path}: {exc}", locus) from None
    raise ManifestError(f"missing '{inline_key}' or '{path_key}'", locus)


def _parse_record(obj, base: Path, locus: str, models: set[str], lang: LangHint) -> UtteranceRecord:
    if not isinstance(obj, dict):
        raise ManifestError("record must be a JSON object", locus)
    unknown = set(obj) - _RECORD_KEYS
    if unknown:
        raise ManifestError(f"unknown field(s) {', '.join(sorted(unknown))}", locus)
    uid = obj.get("id")
    if not isinstance(uid, str) or not uid:
        raise ManifestError("missing or empty 'id'", locus)
    locus = f"{locus} ({uid})"
    if "scenario" not in obj:
        raise ManifestError("missing 'scenario'", locus)
    if "lang" in obj:
        try:
            lang = LangHint(obj["lang"])
        except ValueError:
            raise ManifestError(f"unknown lang {obj['lang']!r}", locus) from None
    ref = _text_field(obj, "ref", "ref_path", base, locus)

    hyps: dict[str, str] = {}
    for key in ("hyp", "hyp_path"):
        table = obj.get(key, {})
        if not isinstance(table, dict):
            raise ManifestError(f"'{key}' must map model id to text", locus)
        for model, value in table.items():
            if model not in models:
                raise ManifestError(f"undeclared model id {model!r}", locus)
            if model in hyps:
                raise ManifestError(f"model {model!r} given twice", locus)
            if key == "hyp":
                hyps[model] = _text_field({"hyp": value}, "hyp", "-", base, locus)
            else:
                hyps[model] = _text_field({"p": value}, "-", "p", base, locus)

    duration = obj.get("duration_s")
    if duration is not None and (isinstance(duration, bool) or not isinstance(duration, (int, float))):
        raise ManifestError("'duration_s' must be a number", locus)
    try:
        return UtteranceRecord(
            utterance_id=uid,
            scenario=obj["scenario"],
            reference=Transcript(ref, lang, f"{uid}:ref"),
            hypotheses={m: Transcript(t, lang, f"{uid}:{m}") for m, t in hyps.items()},
            duration_s=duration,
            empty_reference=bool(obj.get("empty_reference", False)),
        )
    except (ValueError, TypeError) as exc:
        raise ManifestError(str(exc), locus) from None


def parse_manifest(text: str, base_dir: str | os.PathLike = ".", source: str = "<manifest>") -> CorpusManifest:
    base = Path(base_dir)
    header = None
    records: list[UtteranceRecord] = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        locus = f"{source}:{lineno}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ManifestError(f"malformed JSON: {exc.msg}", locus) from None
        if header is None:
            if not isinstance(obj, dict) or "models" not in obj:
                raise ManifestError("first line must be a header with a 'models' list", locus)
            models = obj["models"]
            if not isinstance(models, list) or not all(isinstance(m, str) and m for m in models):
                raise ManifestError("'models' must be a list of nonempty strings", locus)
            if len(set(models)) != len(models):
                raise ManifestError("duplicate model id in header", locus)
            metadata = obj.get("metadata", {})
            if not isinstance(metadata, dict):
                raise ManifestError("'metadata' must be an object", locus)
            try:
                lang = LangHint(metadata.get("lang", "mixed"))
            except ValueError:
                raise ManifestError(f"unknown lang {metadata['lang']!r}", locus) from None
            header = (tuple(models), metadata, lang)
            continue
        rec = _parse_record(obj, base, locus, set(header[0]), header[2])
        if rec.utterance_id in seen:
            raise ManifestError(
                f"duplicate utterance id {rec.utterance_id!r} (first seen on line {seen[rec.utterance_id]})",
                locus,
            )
        seen[rec.utterance_id] = lineno
        records.append(rec)
    if header is None:
        raise ManifestError("manifest has no header line", source)
    return CorpusManifest(tuple(records), header[0], header[1])


def load_manifest(path: str | os.PathLike) -> CorpusManifest:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ManifestError("manifest not found", str(path)) from None
    except (OSError, UnicodeDecodeError) as exc:
        raise ManifestError(f"cannot read manifest: {exc}", str(path)) from None
    return parse_manifest(text, path.parent, str(path))


def dump_manifest(c: CorpusManifest) -> str:
    """Serialize with all texts inline. ``parse_manifest`` reads it back unchanged."""
    lines = [json.dumps({"models": list(c.models), "metadata": c.metadata}, ensure_ascii=False, sort_keys=True)]
    for r in c.records:
        obj = {"id": r.utterance_id, "scenario": r.scenario, "ref": r.reference.text}
        if r.hypotheses:
            obj["hyp"] = {m: t.text for m, t in r.hypotheses.items()}
        if r.duration_s is not None:
            obj["duration_s"] = r.duration_s
        if r.empty_reference:
            obj["empty_reference"] = True
        if r.reference.lang_hint is not LangHint.MIXED:
            obj["lang"] = r.reference.lang_hint.value
        lines.append(json.dumps(obj, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def save_manifest(c: CorpusManifest, path: str | os.PathLike) -> None:
    Path(path).write_text(dump_manifest(c), encoding="utf-8")


def fixture_path() -> Path:
    """Path of the synthetic five-scenario corpus shipped with the package."""
    from importlib import resources

    return Path(str(resources.files("cockpit_wer").joinpath("data").joinpath("fixture").joinpath("corpus.jsonl")))
