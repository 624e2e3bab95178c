"""Named normalization schemes as ordered stage pipelines."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TypeVar

from ..errors import ConfigError
from ..text import Transcript
from .stages import STAGE_FUNCTIONS, StageKind
from .tables import StageConfig, default_config

K = StageKind

SCHEMES = ("none", "basic", "number", "english", "proposed1", "proposed2", "proposed3")

# row labels as printed in report tables
SCHEME_LABELS = {
    "none": "No-norm",
    "basic": "Basic",
    "number": "Number",
    "english": "English",
    "proposed1": "Proposed I",
    "proposed2": "Proposed II",
    "proposed3": "Proposed III",
    "custom": "Custom",
}

BASIC_STAGES = (K.CASE_FOLD, K.STRIP_SPECIAL, K.WHITESPACE_CANONICALIZE)
NUMBER_STAGES = (K.NUMBER_TO_ARABIC, K.WHITESPACE_CANONICALIZE)
ENGLISH_STAGES = (
    K.CONTRACTION_EXPAND,
    K.SPELLING_MAP,
    K.NUMBER_TO_ARABIC,
    K.CASE_FOLD,
    K.STRIP_SPECIAL,
    K.WHITESPACE_CANONICALIZE,
)


def proposed1_stages(include_number_spelling: bool = True) -> tuple[StageKind, ...]:
    middle = (K.NUMBER_TO_ARABIC, K.SPELLING_MAP) if include_number_spelling else ()
    return (
        (K.ICAO_FOLD, K.FILLER_REMOVE)
        + middle
        + (K.CASE_FOLD, K.STRIP_SPECIAL, K.COMPOUND_FOLD, K.WHITESPACE_CANONICALIZE)
    )


SCHEME_STAGES: dict[str, tuple[StageKind, ...]] = {
    "none": (),
    "basic": BASIC_STAGES,
    "number": NUMBER_STAGES,
    "english": ENGLISH_STAGES,
    "proposed1": proposed1_stages(True),
    "proposed2": proposed1_stages(False) + ENGLISH_STAGES,
    "proposed3": ENGLISH_STAGES + proposed1_stages(False),
}

T = TypeVar("T", str, Transcript)


@dataclass(frozen=True)
class NormalizationPipeline:
    """An ordered list of stages, each with the config it runs under.

    Applying a pipeline is a pure function of its input; one pipeline can be
    shared across threads and pickled to worker processes.
    """

    stages: tuple[tuple[StageKind, StageConfig], ...]
    scheme_name: str = "custom"

    @property
    def kinds(self) -> tuple[StageKind, ...]:
        return tuple(kind for kind, _ in self.stages)

    def apply_text(self, text: str) -> str:
        for kind, cfg in self.stages:
            text = STAGE_FUNCTIONS[kind](text, cfg)
        return text

    def apply(self, t: T) -> T:
        if isinstance(t, Transcript):
            return t.with_text(self.apply_text(t.text))
        return self.apply_text(t)

    __call__ = apply

    def __add__(self, other: NormalizationPipeline) -> NormalizationPipeline:
        return NormalizationPipeline(self.stages + other.stages, "custom")


def pipeline_from_kinds(kinds, cfg: StageConfig | None = None, scheme_name: str = "custom") -> NormalizationPipeline:
    cfg = cfg or default_config()
    return NormalizationPipeline(tuple((StageKind(k), cfg) for k in kinds), scheme_name)


def _stages(kinds, cfg):
    return tuple((k, cfg) for k in kinds)


def _proposed1(cfg: StageConfig, include_number_spelling: bool):
    if include_number_spelling:
        return _stages(proposed1_stages(True), cfg)
    # the reduced form leaves word-internal apostrophes for the English
    # side's contraction stage
    keep = cfg.with_options(keep_word_apostrophes=True)
    return tuple(
        (k, keep if k is K.STRIP_SPECIAL else cfg) for k in proposed1_stages(False)
    )


def build_pipeline(scheme: str, cfg: StageConfig | None = None) -> NormalizationPipeline:
    """Return the fixed stage list for a named scheme. ``none`` is the identity."""
    if scheme not in SCHEME_STAGES:
        raise ConfigError(f"unknown normalization scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")
    cfg = cfg or default_config()
    if scheme == "proposed1":
        stages = _proposed1(cfg, True)
    elif scheme == "proposed2":
        stages = _proposed1(cfg, False) + _stages(ENGLISH_STAGES, cfg)
    elif scheme == "proposed3":
        stages = _stages(ENGLISH_STAGES, cfg) + _proposed1(cfg, False)
    else:
        stages = _stages(SCHEME_STAGES[scheme], cfg)
    return NormalizationPipeline(stages, scheme)


def _run(kinds, t, cfg):
    return pipeline_from_kinds(kinds, cfg).apply(t)


def basic_normalize(t: T, cfg: StageConfig | None = None) -> T:
    """Lowercase, replace non-alphanumerics by spaces, collapse whitespace."""
    return _run(BASIC_STAGES, t, cfg)


def number_normalize(t: T, cfg: StageConfig | None = None) -> T:
    return _run(NUMBER_STAGES, t, cfg)


def english_normalize(t: T, cfg: StageConfig | None = None) -> T:
    return _run(ENGLISH_STAGES, t, cfg)


def proposed_one(t: T, cfg: StageConfig | None = None, include_number_spelling: bool = True) -> T:
    """ICAO folding, filler removal and compound folding on top of basic cleanup.

    With ``include_number_spelling=False`` the number and spelling stages
    are left out; that reduced form is what the combined schemes use.
    """
    cfg = cfg or default_config()
    return NormalizationPipeline(_proposed1(cfg, include_number_spelling)).apply(t)


def proposed_two(t: T, cfg: StageConfig | None = None) -> T:
    return english_normalize(proposed_one(t, cfg, include_number_spelling=False), cfg)


def proposed_three(t: T, cfg: StageConfig | None = None) -> T:
    return proposed_one(english_normalize(t, cfg), cfg, include_number_spelling=False)
