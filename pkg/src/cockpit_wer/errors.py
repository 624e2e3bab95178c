"""Exception types shared across the toolkit."""


class CockpitWerError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(CockpitWerError, ValueError):
    """Unknown scheme name, malformed mapping table, or bad stage option."""


class AlignmentError(CockpitWerError):
    """An alignment does not cover the sequences it claims to describe."""


class UndefinedWERError(CockpitWerError, ZeroDivisionError):
    """WER requested for an empty reference that still has edits."""


class ManifestError(CockpitWerError, ValueError):
    """Corpus manifest failed to load or validate.

    ``locus`` names where the problem is, e.g. ``"corpus.jsonl:7"``.
    """

    def __init__(self, message: str, locus: str | None = None):
        self.locus = locus
        super().__init__(f"{locus}: {message}" if locus else message)
