"""English cardinal number words to Arabic numerals.

Covers 0 to 999,999 in the usual grammar ("two thousand three hundred and
five", "twenty-three") plus decimals spoken with "point". Digit strings
read one word at a time ("two seven zero") are not a single cardinal and
come out as separate numerals.
"""
from __future__ import annotations

import re

UNITS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4,
    "five": 5, "six": 6, "seven": 7, "eight": 8, "nine": 9,
}
TEENS = {
    "ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13, "fourteen": 14,
    "fifteen": 15, "sixteen": 16, "seventeen": 17, "eighteen": 18, "nineteen": 19,
}
TENS = {
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50,
    "sixty": 60, "seventy": 70, "eighty": 80, "ninety": 90,
}

_WORD = re.compile(r"[^\W_]+")
# only whitespace and hyphens may separate the words of one number
_JOINER = re.compile(r"[\s\-]+")


class CardinalParser:
    def __init__(self, scope: int = 999_999, oh_is_zero: bool = False):
        self.scope = scope
        self.units = dict(UNITS)
        if oh_is_zero:
            self.units["oh"] = 0

    def is_start(self, word: str) -> bool:
        return word in self.units or word in TEENS or word in TENS

    def _below_hundred(self, words, i):
        if i >= len(words):
            return None
        w = words[i]
        if w in TENS:
            value = TENS[w]
            if i + 1 < len(words) and self.units.get(words[i + 1], 0) > 0:
                return value + self.units[words[i + 1]], i + 2
            return value, i + 1
        if w in TEENS:
            return TEENS[w], i + 1
        if self.units.get(w, 0) > 0:
            return self.units[w], i + 1
        return None

    def _below_thousand(self, words, i):
        head = self._below_hundred(words, i)
        if head is None:
            return None
        value, j = head
        if value < 10 and j < len(words) and words[j] == "hundred" and self.scope >= 100:
            value *= 100
            j += 1
            if j + 1 < len(words) and words[j] == "and":
                rest = self._below_hundred(words, j + 1)
            else:
                rest = self._below_hundred(words, j)
            if rest is not None:
                value += rest[0]
                j = rest[1]
        return value, j

    def _integer(self, words, i):
        if words[i] in self.units and self.units[words[i]] == 0:
            return 0, i + 1
        head = self._below_thousand(words, i)
        if head is None:
            return None
        value, j = head
        if j < len(words) and words[j] == "thousand" and value * 1000 <= self.scope:
            value *= 1000
            j += 1
            if j + 1 < len(words) and words[j] == "and":
                rest = self._below_hundred(words, j + 1)
            else:
                rest = self._below_thousand(words, j)
            if rest is not None:
                value += rest[0]
                j = rest[1]
        if value > self.scope:
            return None
        return value, j

    def parse(self, words: list[str], i: int = 0) -> tuple[str, int] | None:
        """Parse the longest number starting at ``words[i]``.

        ``words`` must be lowercase. Returns the numeral string and the index
        one past the last consumed word, or None if no number starts there.
        """
        head = self._integer(words, i)
        if head is None:
            return None
        value, j = head
        digits = []
        if j + 1 < len(words) and words[j] == "point":
            k = j + 1
            while k < len(words) and words[k] in self.units:
                digits.append(str(self.units[words[k]]))
                k += 1
            if digits:
                j = k
        text = str(value) + ("." + "".join(digits) if digits else "")
        return text, j


def replace_numbers(text: str, parser: CardinalParser) -> str:
    """Replace every maximal run of cardinal number words in ``text``.

    Words are maximal letter/digit runs; a number may span words separated
    only by whitespace or hyphens. Surrounding punctuation is kept.
    """
    words = list(_WORD.finditer(text))
    if not words:
        return text
    out = []
    pos = 0
    k = 0
    while k < len(words):
        lower = words[k].group(0).lower()
        if not parser.is_start(lower):
            k += 1
            continue
        # collect the words this number could extend over
        m = k + 1
        while m < len(words) and _JOINER.fullmatch(text, words[m - 1].end(), words[m].start()):
            m += 1
        group = [w.group(0).lower() for w in words[k:m]]
        parsed = parser.parse(group)
        if parsed is None:  # out of scope
            k += 1
            continue
        numeral, used = parsed
        out.append(text[pos:words[k].start()])
        out.append(numeral)
        pos = words[k + used - 1].end()
        k += used
    out.append(text[pos:])
    return "".join(out)
