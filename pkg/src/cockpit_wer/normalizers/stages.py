"""Text-to-text normalization stages.

Every stage takes a string and a StageConfig and returns a string. Stages
that look words up in a table work on letter/digit runs rather than on
whitespace tokens, so a lookup sees the same words before and after
punctuation has been stripped. Several of the idempotence guarantees of the
composed schemes rely on that.
"""
from __future__ import annotations

import enum
import re
import unicodedata

from ..text import canonicalize_whitespace
from .numbers import CardinalParser, replace_numbers
from .tables import IcaoMode, StageConfig

WORD = re.compile(r"[^\W_]+")
WORD_WITH_APOSTROPHES = re.compile(r"[^\W_]+(?:['’][^\W_]+)*")
_GLUE = re.compile(r"[^\w\s]+")
_INNER_APOSTROPHE = re.compile(r"(?<=[^\W_])(['’])(?=[^\W_])")


class StageKind(str, enum.Enum):
    CASE_FOLD = "case_fold"
    STRIP_SPECIAL = "strip_special"
    NUMBER_TO_ARABIC = "number_to_arabic"
    SPELLING_MAP = "spelling_map"
    CONTRACTION_EXPAND = "contraction_expand"
    ICAO_FOLD = "icao_fold"
    FILLER_REMOVE = "filler_remove"
    COMPOUND_FOLD = "compound_fold"
    WHITESPACE_CANONICALIZE = "whitespace_canonicalize"


def _lower_char(c: str) -> str:
    low = c.lower()
    if len(low) > 1 and c.isalnum():
        # "İ" lowers to "i" + combining dot; keep letters so words are not split
        low = "".join(x for x in low if x.isalnum())
    return low


def case_fold(text: str, cfg: StageConfig) -> str:
    # lower() rather than casefold(): casefold would turn ß into "ss"
    text = "".join(_lower_char(c) for c in unicodedata.normalize("NFC", text))
    text = unicodedata.normalize("NFC", text)
    if cfg.fold_diacritics:
        text = "".join(c for c in unicodedata.normalize("NFD", text) if unicodedata.category(c) != "Mn")
        text = unicodedata.normalize("NFC", text)
    return text


def strip_special(text: str, cfg: StageConfig | None = None) -> str:
    """Replace every character that is not a letter, digit or whitespace by a space.

    With ``keep_word_apostrophes`` an apostrophe between two letters or
    digits survives, so a later contraction stage still sees "won't".
    """
    keep = cfg is not None and cfg.keep_word_apostrophes
    out = []
    for i, c in enumerate(text):
        if c.isalnum() or c.isspace():
            out.append(c)
        elif keep and c in "'’" and 0 < i < len(text) - 1 and text[i - 1].isalnum() and text[i + 1].isalnum():
            out.append(c)
        else:
            out.append(" ")
    return "".join(out)


def whitespace_canonicalize(text: str, cfg: StageConfig | None = None) -> str:
    return canonicalize_whitespace(text)


def contraction_expand(text: str, cfg: StageConfig) -> str:
    table = cfg.contraction_table
    if not table:
        return text

    def piece(m):
        return table.get(m.group(0).lower(), m.group(0))

    def word(m):
        w = m.group(0)
        key = w.replace("’", "'").lower()
        if key in table:
            return table[key]
        if "'" in key:
            return WORD.sub(piece, w)
        return w

    return WORD_WITH_APOSTROPHES.sub(word, text)


def spelling_map(text: str, cfg: StageConfig) -> str:
    table = cfg.spelling_table
    if not table:
        return text
    return WORD.sub(lambda m: table.get(m.group(0).lower(), m.group(0)), text)


def number_to_arabic(text: str, cfg: StageConfig) -> str:
    return replace_numbers(text, CardinalParser(cfg.number_scope, cfg.oh_is_zero))


def remove_fillers(text: str, cfg: StageConfig) -> str:
    fillers = cfg.filler_lexicon
    if not fillers:
        return canonicalize_whitespace(text)
    return canonicalize_whitespace(
        WORD.sub(lambda m: "" if m.group(0).lower() in fillers else m.group(0), text)
    )


def icao_fold(text: str, cfg: StageConfig) -> str:
    """Replace ICAO code words by their letter.

    In ``uppercase_or_run`` mode a code word folds only if it is written
    fully uppercase or sits in a run of at least two code words. Filler
    words and punctuation do not break a run.
    """
    keys = cfg.icao_keys
    if not keys:
        return text
    runs = list(WORD.finditer(text))
    # units: (start, end, letter or None, is_upper, is_filler)
    units = []
    i = 0
    while i < len(runs):
        for n in range(min(cfg.icao_max_pieces, len(runs) - i), 0, -1):
            pieces = tuple(r.group(0).upper() for r in runs[i:i + n])
            # multi-piece words ("X-RAY") only match when written as one token
            joined = all(
                _GLUE.fullmatch(text, runs[k].end(), runs[k + 1].start()) for k in range(i, i + n - 1)
            )
            if pieces in keys and joined:
                upper = all(r.group(0).isupper() for r in runs[i:i + n])
                units.append((runs[i].start(), runs[i + n - 1].end(), keys[pieces], upper, False))
                i += n
                break
        else:
            w = runs[i].group(0)
            units.append((runs[i].start(), runs[i].end(), None, False, w.lower() in cfg.filler_lexicon))
            i += 1

    fold = [False] * len(units)
    if cfg.icao_mode is IcaoMode.ALWAYS:
        fold = [u[2] is not None for u in units]
    else:
        run: list[int] = []
        for idx, unit in enumerate(units + [(0, 0, None, False, False)]):
            if unit[2] is not None:
                run.append(idx)
                continue
            if unit[4]:
                continue
            for r in run:
                fold[r] = len(run) >= 2 or units[r][3]
            run = []

    out = []
    pos = 0
    prev_folded_end = None
    for idx, (start, end, letter, _, _) in enumerate(units):
        if not fold[idx]:
            if not units[idx][4]:
                prev_folded_end = None
            continue
        gap = text[pos:start]
        if cfg.icao_join_runs and prev_folded_end is not None and gap.isspace():
            gap = ""
        out.append(gap)
        out.append(letter)
        pos = end
        prev_folded_end = end
    out.append(text[pos:])
    return "".join(out)


def fold_compounds(text: str, cfg: StageConfig) -> str:
    """Dehyphenate tokens and join adjacent tokens that spell a known compound.

    Matching is case-insensitive and longest-first, scanning left to right
    in a single pass; the letters of joined tokens are kept as written. A
    word-internal apostrophe counts as a token boundary, since a later
    punctuation strip turns it into one.
    """
    # pieces as (glue before the piece, piece)
    pieces: list[tuple[str, str]] = []
    for token in text.split():
        token = token.replace("-", "")
        if not token:
            continue
        parts = _INNER_APOSTROPHE.split(token)
        pieces.append((" ", parts[0]))
        for k in range(1, len(parts), 2):
            pieces.append((parts[k], parts[k + 1]))
    forms = cfg.compound_forms
    limit = cfg.compound_max_len
    out = []
    i = 0
    while i < len(pieces):
        best = 1
        joined = pieces[i][1]
        for j in range(i + 1, len(pieces)):
            joined += pieces[j][1]
            if len(joined) > limit:
                break
            if joined.lower() in forms:
                best = j - i + 1
        out.append(pieces[i][0] + "".join(p for _, p in pieces[i:i + best]))
        i += best
    return "".join(out)[1:]


STAGE_FUNCTIONS = {
    StageKind.CASE_FOLD: case_fold,
    StageKind.STRIP_SPECIAL: strip_special,
    StageKind.NUMBER_TO_ARABIC: number_to_arabic,
    StageKind.SPELLING_MAP: spelling_map,
    StageKind.CONTRACTION_EXPAND: contraction_expand,
    StageKind.ICAO_FOLD: icao_fold,
    StageKind.FILLER_REMOVE: remove_fillers,
    StageKind.COMPOUND_FOLD: fold_compounds,
    StageKind.WHITESPACE_CANONICALIZE: whitespace_canonicalize,
}
