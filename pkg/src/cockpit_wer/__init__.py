"""Transcript normalization and word error rate evaluation for cockpit speech."""
from .text import LangHint, Transcript, detokenize, tokenize

__version__ = "0.1.0"
