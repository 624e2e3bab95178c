"""Word alignment and word error rate.

WER is ``(S + D + I) / N`` over whitespace tokens, where N is the number of
reference words. All rates are kept as exact fractions; rounding happens
only when a percentage is formatted.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import _kernel
from .errors import AlignmentError, UndefinedWERError
from .text import tokenize


class OpKind(str, enum.Enum):
    MATCH = "match"
    SUBSTITUTE = "substitute"
    DELETE = "delete"
    INSERT = "insert"


_CODES = (OpKind.MATCH, OpKind.SUBSTITUTE, OpKind.DELETE, OpKind.INSERT)


class Op(NamedTuple):
    kind: OpKind
    ref_index: int | None
    hyp_index: int | None


@dataclass(frozen=True)
class Alignment:
    ops: tuple[Op, ...]

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    @property
    def kinds(self) -> list[OpKind]:
        return [op.kind for op in self.ops]

    def coverage(self) -> tuple[int, int]:
        """Number of reference and hypothesis positions the ops consume.

        Raises AlignmentError if the indices are not consecutive from zero.
        """
        i = j = 0
        for op in self.ops:
            if op.kind is not OpKind.INSERT:
                if op.ref_index != i:
                    raise AlignmentError(f"reference index {op.ref_index} out of order, expected {i}")
                i += 1
            elif op.ref_index is not None:
                raise AlignmentError("insert op carries a reference index")
            if op.kind is not OpKind.DELETE:
                if op.hyp_index != j:
                    raise AlignmentError(f"hypothesis index {op.hyp_index} out of order, expected {j}")
                j += 1
            elif op.hyp_index is not None:
                raise AlignmentError("delete op carries a hypothesis index")
        return i, j


@dataclass(frozen=True)
class EditCounts:
    substitutions: int = 0
    deletions: int = 0
    insertions: int = 0
    reference_length: int = 0

    def __post_init__(self):
        if min(self.substitutions, self.deletions, self.insertions, self.reference_length) < 0:
            raise ValueError("edit counts must be nonnegative")
        if self.substitutions + self.deletions > self.reference_length:
            raise ValueError("substitutions + deletions exceed the reference length")

    S = property(lambda self: self.substitutions)
    D = property(lambda self: self.deletions)
    I = property(lambda self: self.insertions)  # noqa: E741
    N = property(lambda self: self.reference_length)

    @property
    def errors(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    def __add__(self, other: EditCounts) -> EditCounts:
        return EditCounts(
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
            self.reference_length + other.reference_length,
        )


def format_percent(rate: Fraction) -> str:
    """Format a nonnegative rate as a percentage with 2 decimals, rounding half up."""
    if rate < 0:
        raise ValueError("rate must be nonnegative")
    hundredths = Fraction(rate) * 10_000
    q = (hundredths.numerator * 2 + hundredths.denominator) // (2 * hundredths.denominator)
    return f"{q // 100}.{q % 100:02d}"


@dataclass(frozen=True)
class WerScore:
    wer: Fraction
    counts: EditCounts

    @property
    def percent(self) -> str:
        return format_percent(self.wer)


@dataclass(frozen=True)
class AggregateScore:
    """Corpus-level WER. ``items`` is the number of per-utterance counts pooled."""

    wer: Fraction
    mode: str
    counts: EditCounts
    items: int

    @property
    def percent(self) -> str:
        return format_percent(self.wer)


def _encode(ref: Sequence[str], hyp: Sequence[str]) -> tuple[list[int], list[int]]:
    vocab: dict[str, int] = {}
    ref_ids = [vocab.setdefault(w, len(vocab)) for w in ref]
    hyp_ids = [vocab.setdefault(w, len(vocab)) for w in hyp]
    return ref_ids, hyp_ids


def align(ref: Sequence[str], hyp: Sequence[str]) -> Alignment:
    """Minimal unit-cost word alignment of ``hyp`` against ``ref``.

    Among equally cheap alignments the earliest position prefers match,
    then substitute, then delete, then insert, so the result is fully
    determined by the inputs.
    """
    ref_ids, hyp_ids = _encode(ref, hyp)
    ops = []
    i = j = 0
    for code in _kernel.edit_ops(ref_ids, hyp_ids):
        kind = _CODES[code]
        if kind is OpKind.INSERT:
            ops.append(Op(kind, None, j))
            j += 1
        elif kind is OpKind.DELETE:
            ops.append(Op(kind, i, None))
            i += 1
        else:
            ops.append(Op(kind, i, j))
            i += 1
            j += 1
    return Alignment(tuple(ops))


def edit_distance(ref: Sequence[str], hyp: Sequence[str]) -> int:
    return _kernel.edit_distance(*_encode(ref, hyp))


def count_edits(a: Alignment, n: int) -> EditCounts:
    covered, _ = a.coverage()
    if covered != n:
        raise AlignmentError(f"alignment covers {covered} reference words, expected {n}")
    s = d = ins = 0
    for op in a.ops:
        if op.kind is OpKind.SUBSTITUTE:
            s += 1
        elif op.kind is OpKind.DELETE:
            d += 1
        elif op.kind is OpKind.INSERT:
            ins += 1
    return EditCounts(s, d, ins, n)


def wer(c: EditCounts) -> WerScore:
    if c.reference_length == 0:
        if c.errors:
            raise UndefinedWERError(f"WER undefined: empty reference with {c.errors} insertion(s)")
        return WerScore(Fraction(0), c)
    return WerScore(Fraction(c.errors, c.reference_length), c)


def corpus_wer(counts: Sequence[EditCounts], mode: str = "micro") -> AggregateScore:
    """Pool per-utterance counts.

    ``micro`` divides summed edits by summed reference length; ``macro``
    averages the per-utterance rates and needs every N > 0.
    """
    counts = list(counts)
    if not counts:
        raise ValueError("corpus_wer needs at least one item")
    total = sum(counts, EditCounts())
    if mode == "micro":
        return AggregateScore(wer(total).wer, mode, total, len(counts))
    if mode == "macro":
        if any(c.reference_length == 0 for c in counts):
            raise UndefinedWERError("macro WER needs every reference to be nonempty")
        mean = sum((wer(c).wer for c in counts), Fraction(0)) / len(counts)
        return AggregateScore(mean, mode, total, len(counts))
    raise ValueError(f"unknown aggregation mode {mode!r}; expected 'micro' or 'macro'")


BRUTE_FORCE_LIMIT = 12


def brute_force_distance(ref: Sequence[str], hyp: Sequence[str]) -> int:
    """Edit distance by plain exhaustive recursion. Test oracle only."""
    if len(ref) + len(hyp) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to len(ref) + len(hyp) <= {BRUTE_FORCE_LIMIT}")
    ref, hyp = tuple(ref), tuple(hyp)
    n, m = len(ref), len(hyp)

    def go(i, j):
        if i == n:
            return m - j
        if j == m:
            return n - i
        pair = go(i + 1, j + 1) + (ref[i] != hyp[j])
        drop = go(i + 1, j) + 1
        add = go(i, j + 1) + 1
        return min(pair, drop, add)

    return go(0, 0)


def substitution_pairs(a: Alignment, ref: Sequence[str], hyp: Sequence[str]) -> list[tuple[str, str]]:
    n, m = a.coverage()
    if n != len(ref) or m != len(hyp):
        raise AlignmentError("alignment does not cover the given sequences")
    return [(ref[op.ref_index], hyp[op.hyp_index]) for op in a.ops if op.kind is OpKind.SUBSTITUTE]


@dataclass(frozen=True)
class PairResult:
    ref_tokens: tuple[str, ...]
    hyp_tokens: tuple[str, ...]
    alignment: Alignment
    counts: EditCounts

    @property
    def substitutions(self) -> list[tuple[str, str]]:
        return substitution_pairs(self.alignment, self.ref_tokens, self.hyp_tokens)


def score_texts(ref_text: str, hyp_text: str) -> PairResult:
    """Tokenize two already-normalized texts, align them and count edits."""
    ref, hyp = tuple(tokenize(ref_text)), tuple(tokenize(hyp_text))
    a = align(ref, hyp)
    return PairResult(ref, hyp, a, count_edits(a, len(ref)))


def backend() -> str:
    """Name of the alignment kernel in use: ``"cython"`` or ``"python"``."""
    return _kernel.BACKEND
