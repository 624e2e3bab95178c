import re

import pytest
from hypothesis import given, settings, strategies as st

from cockpit_wer.errors import ConfigError
from cockpit_wer.normalizers import (
    SCHEMES,
    IcaoMode,
    StageConfig,
    StageKind,
    basic_normalize,
    build_pipeline,
    english_normalize,
    fold_compounds,
    icao_fold,
    load_config,
    number_normalize,
    proposed1_stages,
    proposed_one,
    proposed_three,
    proposed_two,
    remove_fillers,
)
from cockpit_wer.text import Transcript

from conftest import TOKEN_POOL

K = StageKind
CLEAN = re.compile(r"(?:[^\W_]+(?: [^\W_]+)*)?")


@pytest.mark.parametrize(
    "text, expected",
    [("Ist confirmed", "ist confirmed"), ("take-off!", "take off"), ("", ""), ("Straße ÜBER", "straße über")],
)
def test_basic(text, expected):
    assert basic_normalize(text) == expected


def test_basic_on_transcript_keeps_metadata():
    t = Transcript("GUT!", "german", "x:ref")
    out = basic_normalize(t)
    assert out == Transcript("gut", "german", "x:ref")


@pytest.mark.parametrize(
    "text, expected",
    [("won't", "will not"), ("Colour three", "color 3"), ("", ""), ("It’s centre", "it is center")],
)
def test_english(text, expected):
    assert english_normalize(text) == expected


@pytest.mark.parametrize(
    "text, expected",
    [("DELTA", "D"), ("DELTA ECHO LIMA", "D E L"), ("the hotel lobby", "the hotel lobby"),
     ("Delta Echo", "D E"), ("X-RAY", "X"), ("hotel, äh golf", "H, äh G"), ("hotel tower golf", "hotel tower golf")],
)
def test_icao_uppercase_or_run(text, expected, cfg):
    assert icao_fold(text, cfg) == expected


def test_icao_always_and_join(cfg):
    always = cfg.with_options(icao_mode=IcaoMode.ALWAYS)
    assert icao_fold("the hotel lobby", always) == "the H lobby"
    joined = cfg.with_options(icao_join_runs=True)
    assert icao_fold("DELTA ECHO LIMA tower", joined) == "DEL tower"


def test_icao_output_is_never_refolded(cfg):
    once = icao_fold("DELTA ECHO", cfg)
    assert icao_fold(once, cfg) == once


@pytest.mark.parametrize(
    "text, expected",
    [("äh gear down", "gear down"), ("gear down", "gear down"), ("ÄHM, so ja", ", so ja")],
)
def test_remove_fillers(text, expected, cfg):
    assert remove_fillers(text, cfg) == expected


def test_filler_removal_in_proposed_pipeline(cfg):
    assert proposed_one("um, checklist complete", cfg) == "checklist complete"


@pytest.mark.parametrize("text", ["take-off", "take off", "takeoff"])
def test_compound_triplet(text, cfg):
    assert fold_compounds(text, cfg) == "takeoff"


def test_compounds_longest_match_and_case(cfg):
    assert fold_compounds("over head panel check", cfg) == "overheadpanel check"
    assert fold_compounds("Take Off", cfg) == "TakeOff"
    assert fold_compounds("spoiler-pair", cfg) == "spoilerpair"


@pytest.mark.parametrize(
    "text, expected",
    [("DELTA take-off äh", "d takeoff"), ("", ""), ("gut", "gut"), ("DELTA", "d")],
)
def test_proposed_one(text, expected, cfg):
    assert proposed_one(text, cfg) == expected


def test_proposed_two_and_three_examples(cfg):
    assert proposed_two("DELTA won't", cfg) == "d will not"
    assert proposed_two("", cfg) == ""
    assert proposed_three("take off won't", cfg) == "takeoff will not"
    assert proposed_three("", cfg) == ""


def test_scheme_stage_lists(cfg):
    assert build_pipeline("none", cfg).kinds == ()
    assert build_pipeline("basic", cfg).kinds == (K.CASE_FOLD, K.STRIP_SPECIAL, K.WHITESPACE_CANONICALIZE)
    english = build_pipeline("english", cfg).kinds
    reduced = proposed1_stages(False)
    assert build_pipeline("proposed2", cfg).kinds == reduced + english
    assert build_pipeline("proposed3", cfg).kinds == english + reduced
    for scheme in ("proposed2", "proposed3"):
        kinds = build_pipeline(scheme, cfg).kinds
        assert kinds.count(K.NUMBER_TO_ARABIC) == 1
        assert kinds.count(K.SPELLING_MAP) == 1


def test_unknown_scheme():
    with pytest.raises(ConfigError):
        build_pipeline("whisper")


noisy = st.one_of(
    st.lists(st.sampled_from(TOKEN_POOL), max_size=10).map(" ".join),
    st.lists(st.one_of(st.sampled_from(TOKEN_POOL), st.text(max_size=3)), max_size=8).map("".join),
    st.text(max_size=40),
)


@settings(max_examples=400, deadline=None)
@given(noisy)
def test_idempotent_and_clean(text):
    for scheme in ("basic", "english", "proposed1", "proposed2", "proposed3"):
        p = build_pipeline(scheme)
        once = p(text)
        assert p(once) == once, scheme
        assert CLEAN.fullmatch(once), (scheme, once)


@settings(max_examples=200, deadline=None)
@given(noisy)
def test_identity_and_compositions(text):
    assert build_pipeline("none")(text) == text
    assert build_pipeline("proposed2")(text) == english_normalize(proposed_one(text, include_number_spelling=False))
    assert build_pipeline("proposed3")(text) == proposed_one(english_normalize(text), include_number_spelling=False)
    assert build_pipeline("number")(text) == number_normalize(text)


@settings(max_examples=300, deadline=None)
@given(noisy)
def test_filler_removal_only_removes_fillers(text):
    cfg = load_config()
    before = re.findall(r"[^\W_]+", text)
    after = re.findall(r"[^\W_]+", remove_fillers(text, cfg))
    kept = iter(after)
    # ``after`` is ``before`` with some filler words deleted
    for word in before:
        if word.lower() in cfg.filler_lexicon:
            continue
        assert next(kept) == word
    assert next(kept, None) is None


@settings(max_examples=300, deadline=None)
@given(noisy)
def test_compound_fold_keeps_letters(text):
    cfg = load_config()
    strip = lambda s: re.sub(r"[\s\-]", "", s)
    assert strip(fold_compounds(text, cfg)) == strip(text)


@pytest.mark.parametrize("scheme", SCHEMES)
def test_no_stray_whitespace(scheme, corpus_strings):
    if scheme == "none":
        return
    p = build_pipeline(scheme)
    for s in corpus_strings[:300]:
        out = p(s)
        assert out == out.strip() and "  " not in out


def test_config_dir_overrides(tmp_path):
    (tmp_path / "fillers.tsv").write_text("ja\n", encoding="utf-8")
    (tmp_path / "normalization.ini").write_text("[normalization]\nicao_mode = always\n", encoding="utf-8")
    cfg = load_config(tmp_path)
    assert cfg.filler_lexicon == {"ja"}
    assert cfg.icao_mode is IcaoMode.ALWAYS
    assert "won't" in cfg.contraction_table  # untouched tables stay default
    assert proposed_one("ja hotel", cfg) == "h"


def test_missing_config_dir_falls_back(tmp_path, caplog):
    cfg = load_config(tmp_path / "absent")
    assert cfg == load_config()
    assert "not found" in caplog.text


@pytest.mark.parametrize(
    "name, content",
    [
        ("compounds.tsv", "take off\ttake off\n"),
        ("compounds.tsv", "take off\tlanding\n"),
        ("spelling.tsv", "colour\tcolor\ncolor\tcolour\n"),
        ("icao.tsv", "DELTA\tDE\n"),
        ("spelling.tsv", "no tab here\n"),
        ("normalization.ini", "[normalization]\nicao_mode = sometimes\n"),
        ("normalization.ini", "[normalization]\nbogus = 1\n"),
    ],
)
def test_bad_tables_rejected(tmp_path, name, content):
    (tmp_path / name).write_text(content, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(tmp_path)


def test_default_icao_map_complete(cfg):
    letters = set(cfg.icao_map.values())
    assert letters == set("ABCDEFGHIJKLMNOPQRSTUVWXYZ")
    for variant in ("ALFA", "ALPHA", "JULIETT", "JULIET", "XRAY", "X-RAY"):
        assert variant in cfg.icao_map


def test_fold_diacritics_flag(cfg):
    assert basic_normalize("Größe", cfg) == "größe"
    assert basic_normalize("Größe", cfg.with_options(fold_diacritics=True)) == "große"


def test_stage_config_validation():
    with pytest.raises(ConfigError):
        StageConfig(icao_mode="sideways")
    with pytest.raises(ConfigError):
        StageConfig(number_scope=-1)
