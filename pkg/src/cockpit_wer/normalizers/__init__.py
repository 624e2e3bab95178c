"""Normalization stages and the named schemes built from them."""
from .schemes import (
    SCHEME_LABELS,
    SCHEME_STAGES,
    SCHEMES,
    NormalizationPipeline,
    basic_normalize,
    build_pipeline,
    english_normalize,
    number_normalize,
    pipeline_from_kinds,
    proposed1_stages,
    proposed_one,
    proposed_three,
    proposed_two,
)
from .stages import (
    StageKind,
    case_fold,
    contraction_expand,
    fold_compounds,
    icao_fold,
    number_to_arabic,
    remove_fillers,
    spelling_map,
    strip_special,
)
from .tables import IcaoMode, StageConfig, default_config, load_config

__all__ = [
    "SCHEMES", "SCHEME_LABELS", "SCHEME_STAGES", "NormalizationPipeline", "StageKind",
    "StageConfig", "IcaoMode", "build_pipeline", "pipeline_from_kinds", "proposed1_stages",
    "basic_normalize", "number_normalize", "english_normalize", "proposed_one",
    "proposed_two", "proposed_three", "icao_fold", "remove_fillers", "fold_compounds",
    "case_fold", "strip_special", "contraction_expand", "spelling_map", "number_to_arabic",
    "default_config", "load_config",
]
