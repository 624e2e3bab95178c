"""Transcript values and whitespace tokenization.

Word boundaries are Unicode whitespace only. Punctuation stays attached to
tokens here; stripping it is the job of the normalizer stages.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace


class LangHint(str, enum.Enum):
    GERMAN = "german"
    ENGLISH = "english"
    MIXED = "mixed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Transcript:
    """An utterance as text plus a language hint and an opaque source id."""

    text: str
    lang_hint: LangHint = LangHint.MIXED
    source_id: str = ""

    def __post_init__(self):
        if not isinstance(self.text, str):
            raise TypeError(f"transcript text must be str, got {type(self.text).__name__}")
        if "\x00" in self.text:
            raise ValueError("transcript text contains a NUL character")
        if not isinstance(self.lang_hint, LangHint):
            object.__setattr__(self, "lang_hint", LangHint(self.lang_hint))

    def with_text(self, text: str) -> Transcript:
        return replace(self, text=text)


def tokenize(text: str) -> list[str]:
    """Split on Unicode whitespace. Never yields empty tokens."""
    return text.split()


def detokenize(tokens: list[str] | tuple[str, ...]) -> str:
    return " ".join(tokens)


def canonicalize_whitespace(text: str) -> str:
    return " ".join(text.split())
