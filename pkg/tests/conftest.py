import random

import pytest

from cockpit_wer.corpus import fixture_path, load_manifest
from cockpit_wer.normalizers import default_config

TOKEN_POOL = [
    # German, umlauts, sharp s
    "Straße", "straße", "Größe", "über", "natürlich", "Blaues", "wir", "haben", "ein", "Problem", "gut",
    "Übung", "ÄH", "Ähm", "äh", "ähm", "ehm", "halt", "ja", "so",
    # English fillers and contractions
    "um", "Um,", "uh", "hmm", "mhm", "won't", "don't", "it's", "I'm", "can't", "gonna", "we're",
    # ICAO, upper and lower case
    "DELTA", "ECHO", "LIMA", "ALFA", "ALPHA", "X-RAY", "XRAY", "JULIETT", "delta", "hotel", "golf",
    "Hotel", "India", "kilo", "papa", "Whiskey",
    # number words and digits
    "one", "two", "three", "twenty", "twenty-three", "hundred", "thousand", "and", "point", "zero",
    "niner", "1", "25", "3.5", "CAT3", "V1", "250",
    # spelling and compounds
    "colour", "Colour", "centre", "metres", "take-off", "take", "off", "takeoff", "check-list", "check",
    "list", "go-around", "go", "around", "flight", "control", "line", "up", "cross-check", "over", "head", "panel",
    # punctuation and odd characters
    "-", "--", "'", "’", ",", ".", "!", "?", "(ECAM)", "slats:", "low.", "A/THR", "_", "İstanbul", "ﬁ",
    "é", "Σ", "½", "²",
]
SEPARATORS = [" ", " ", " ", "  ", ", ", "-", "\t", ". ", "'"]


def generated_strings(n=1000, seed=20240601):
    """Deterministic mix of cockpit-flavoured noisy strings."""
    rng = random.Random(seed)
    out = ["", " ", "DELTA", "take-off", "take off", "takeoff"]
    while len(out) < n:
        k = rng.randint(1, 9)
        parts = [rng.choice(TOKEN_POOL)]
        for _ in range(k - 1):
            parts.append(rng.choice(SEPARATORS))
            parts.append(rng.choice(TOKEN_POOL))
        out.append("".join(parts))
    return out


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def fixture_corpus():
    return load_manifest(fixture_path())


@pytest.fixture(scope="session")
def corpus_strings():
    return generated_strings()


# acceptance verdicts, filled by tests/test_acceptance.py
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
