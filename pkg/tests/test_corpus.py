import json

import pytest

from cockpit_wer.corpus import (
    SCENARIOS,
    CorpusManifest,
    UtteranceRecord,
    canonical_scenario,
    dump_manifest,
    filter_manifest,
    load_manifest,
    parse_manifest,
    save_manifest,
)
from cockpit_wer.errors import ManifestError
from cockpit_wer.text import LangHint, Transcript

HEADER = json.dumps({"models": ["m1", "m2"], "metadata": {"site": "sim"}})


def manifest(*records, header=HEADER):
    return "\n".join([header, *(json.dumps(r) for r in records)]) + "\n"


def rec(uid, scenario="takeoff", ref="flaps one", **hyp):
    return {"id": uid, "scenario": scenario, "ref": ref, "hyp": hyp or {"m1": ref}}


def test_fixture_shape(fixture_corpus):
    assert len(fixture_corpus) == 10
    assert fixture_corpus.models == ("m1", "m2")
    assert fixture_corpus.scenarios == list(SCENARIOS)
    iv2 = fixture_corpus.records[-1]
    assert iv2.hypotheses["m2"].text == "Callsign Delta Echo Lima."


def test_parse_inline_and_paths(tmp_path):
    (tmp_path / "r.txt").write_text("gear up\n", encoding="utf-8")
    (tmp_path / "h.txt").write_text("gear up", encoding="utf-8")
    text = manifest(
        {"id": "a", "scenario": "Landing", "ref_path": "r.txt", "hyp_path": {"m1": "h.txt"}, "duration_s": 1.5},
        rec("b", "ecam", m2="x"),
    )
    path = tmp_path / "c.jsonl"
    path.write_text("# comment\n" + text, encoding="utf-8")
    c = load_manifest(path)
    assert [r.utterance_id for r in c.records] == ["a", "b"]
    assert c.records[0].reference.text == "gear up"
    assert c.records[0].scenario == "landing"
    assert c.records[0].duration_s == 1.5
    assert c.metadata == {"site": "sim"}


@pytest.mark.parametrize(
    "text, needle",
    [
        (manifest(rec("a"), rec("a")), "duplicate utterance id 'a'"),
        (manifest(rec("a", m9="x")), "undeclared model id 'm9'"),
        (HEADER + "\n{not json\n", "malformed JSON"),
        (manifest({"id": "a", "scenario": "takeoff"}), "missing 'ref'"),
        (manifest(rec("a", ref="")), "empty reference"),
        (manifest({**rec("a"), "colour": 1}), "unknown field"),
        (manifest({**rec("a"), "duration_s": "long"}), "duration_s"),
        (json.dumps({"metadata": {}}) + "\n", "header"),
        ("", "no header"),
    ],
)
def test_malformed(text, needle):
    with pytest.raises(ManifestError) as info:
        parse_manifest(text, source="x.jsonl")
    assert needle in str(info.value)


def test_error_locus_names_line():
    with pytest.raises(ManifestError) as info:
        parse_manifest(manifest(rec("a"), rec("b"), rec("a")), source="c.jsonl")
    assert str(info.value).startswith("c.jsonl:4: duplicate")
    assert "line 2" in str(info.value)


def test_missing_transcript_file(tmp_path):
    text = manifest({"id": "a", "scenario": "ecam", "ref_path": "nope.txt"})
    with pytest.raises(ManifestError, match="not found"):
        parse_manifest(text, tmp_path)


def test_missing_manifest(tmp_path):
    with pytest.raises(ManifestError, match="manifest not found"):
        load_manifest(tmp_path / "absent.jsonl")


def test_empty_reference_allowed_when_flagged():
    c = parse_manifest(manifest({**rec("a", ref=""), "empty_reference": True}))
    assert c.records[0].empty_reference


@pytest.mark.parametrize(
    "name, canon",
    [("takeoff", "takeoff"), ("ECAM", "ecam"), ("cruise", "other:cruise"), ("other:Cruise", "other:cruise"),
     ("other:fordec", "fordec")],
)
def test_canonical_scenario(name, canon):
    assert canonical_scenario(name) == canon


def test_other_scenarios_sort_last():
    c = parse_manifest(manifest(rec("a", "zulu"), rec("b", "interview"), rec("c", "takeoff")))
    assert c.scenarios == ["takeoff", "interview", "other:zulu"]


def test_filter(fixture_corpus):
    ecam = filter_manifest(fixture_corpus, scenario="ecam")
    assert [r.utterance_id for r in ecam.records] == ["ec1", "ec2"]
    tk = fixture_corpus.filter("takeoff", "m1")
    assert len(tk) == 2 and tk.models == ("m1",)
    assert all(set(r.hypotheses) == {"m1"} for r in tk.records)
    assert len(fixture_corpus.filter("cruise")) == 0
    with pytest.raises(ManifestError, match="unknown model"):
        fixture_corpus.filter(model="m7")


def test_round_trip(fixture_corpus, tmp_path):
    path = tmp_path / "copy.jsonl"
    save_manifest(fixture_corpus, path)
    again = load_manifest(path)
    assert again == fixture_corpus
    assert dump_manifest(again) == dump_manifest(fixture_corpus)


def test_round_trip_keeps_lang_and_flags():
    c = CorpusManifest(
        (UtteranceRecord("x", "fordec", Transcript("", LangHint.GERMAN, "x:ref"), {}, 2.0, True),),
        ("m",),
    )
    assert parse_manifest(dump_manifest(c)) == c


def test_corruption_is_detected(fixture_corpus):
    lines = dump_manifest(fixture_corpus).splitlines()
    # truncate one record mid-line
    broken = lines[:3] + [lines[3][: len(lines[3]) // 2]] + lines[4:]
    with pytest.raises(ManifestError, match=":4"):
        parse_manifest("\n".join(broken))
    # duplicate a record
    with pytest.raises(ManifestError, match="duplicate"):
        parse_manifest("\n".join(lines + [lines[1]]))


def test_direct_construction_validates():
    r = UtteranceRecord("a", "ecam", Transcript("x"), {"m": Transcript("y")})
    with pytest.raises(ValueError, match="undeclared"):
        CorpusManifest((r,), ("n",))
    with pytest.raises(ValueError, match="duplicate"):
        CorpusManifest((r, r), ("m",))
