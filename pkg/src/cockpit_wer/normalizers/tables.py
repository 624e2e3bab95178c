"""Stage configuration and the mapping tables behind it.

Tables are UTF-8 text files, one ``variant<TAB>canonical`` mapping per line
(the filler list has a single column). ``#`` starts a comment line. The
defaults ship inside the package; a config directory overrides any subset.
"""
from __future__ import annotations

import configparser
import enum
import logging
import os
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from importlib import resources
from pathlib import Path

from ..errors import ConfigError

log = logging.getLogger(__name__)

CONFIG_DIR_ENV = "COCKPIT_WER_CONFIG_DIR"

FILLERS_FILE = "fillers.tsv"
ICAO_FILE = "icao.tsv"
COMPOUNDS_FILE = "compounds.tsv"
SPELLING_FILE = "spelling.tsv"
CONTRACTIONS_FILE = "contractions.tsv"
OPTIONS_FILE = "normalization.ini"

_WORD = re.compile(r"[^\W_]+")
_SEPARATORS = re.compile(r"[\s\-]")


class IcaoMode(str, enum.Enum):
    ALWAYS = "always"
    UPPERCASE_OR_RUN = "uppercase_or_run"


@dataclass(frozen=True)
class StageConfig:
    """Everything the stages need beyond the text itself.

    Instances are immutable and picklable, so one config can be shared by
    worker processes.
    """

    filler_lexicon: frozenset[str] = frozenset()
    icao_map: dict[str, str] = field(default_factory=dict)
    icao_mode: IcaoMode = IcaoMode.UPPERCASE_OR_RUN
    icao_join_runs: bool = False
    compound_lexicon: dict[str, str] = field(default_factory=dict)
    spelling_table: dict[str, str] = field(default_factory=dict)
    contraction_table: dict[str, str] = field(default_factory=dict)
    number_scope: int = 999_999
    oh_is_zero: bool = False
    fold_diacritics: bool = False
    # set per stage by the combined schemes, not read from config files
    keep_word_apostrophes: bool = False

    def __post_init__(self):
        if not isinstance(self.icao_mode, IcaoMode):
            try:
                object.__setattr__(self, "icao_mode", IcaoMode(self.icao_mode))
            except ValueError:
                raise ConfigError(f"unknown icao_mode {self.icao_mode!r}") from None
        if self.number_scope < 0:
            raise ConfigError("number_scope must be nonnegative")
        for letter in self.icao_map.values():
            if len(letter) != 1 or not letter.isalpha():
                raise ConfigError(f"ICAO map value {letter!r} is not a single letter")
        for variant, canonical in self.compound_lexicon.items():
            if _SEPARATORS.search(canonical):
                raise ConfigError(f"compound canonical form {canonical!r} contains a space or hyphen")
            if _SEPARATORS.sub("", variant).lower() != canonical.lower():
                raise ConfigError(
                    f"compound variant {variant!r} does not reduce to {canonical!r} "
                    "by removing spaces and hyphens"
                )
        for variant, canonical in self.spelling_table.items():
            for word in _WORD.findall(canonical):
                if word.lower() in self.spelling_table:
                    raise ConfigError(
                        f"spelling table maps {variant!r} to {canonical!r}, which is itself a variant"
                    )

    def with_options(self, **changes) -> StageConfig:
        return replace(self, **changes)

    @cached_property
    def icao_keys(self) -> dict[tuple[str, ...], str]:
        """ICAO code words split into word pieces, uppercased. ``X-RAY`` -> ``("X", "RAY")``."""
        keys = {}
        for word, letter in self.icao_map.items():
            pieces = tuple(p.upper() for p in _WORD.findall(word))
            if pieces:
                keys[pieces] = letter
        return keys

    @cached_property
    def icao_max_pieces(self) -> int:
        return max((len(k) for k in self.icao_keys), default=0)

    @cached_property
    def compound_forms(self) -> frozenset[str]:
        return frozenset(c.lower() for c in self.compound_lexicon.values())

    @cached_property
    def compound_max_len(self) -> int:
        return max((len(c) for c in self.compound_forms), default=0)


def parse_table(text: str, source: str = "<table>", columns: int = 2) -> dict[str, str]:
    """Parse a tab-separated mapping table. Raises ConfigError with a line locus."""
    table: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if columns == 1:
            if len(parts) != 1:
                raise ConfigError(f"{source}:{lineno}: expected one column, got {len(parts)}")
            table[parts[0].strip().lower()] = ""
            continue
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ConfigError(f"{source}:{lineno}: expected 'variant<TAB>canonical'")
        table[parts[0].strip().lower()] = parts[1].strip()
    return table


def _read_default(name: str) -> str:
    return resources.files("cockpit_wer").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def _parse_options(text: str, source: str) -> dict:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    if not parser.has_section("normalization"):
        raise ConfigError(f"{source}: missing [normalization] section")
    sec = parser["normalization"]
    known = {"icao_mode", "icao_join_runs", "fold_diacritics", "oh_is_zero", "number_scope"}
    unknown = set(sec) - known
    if unknown:
        raise ConfigError(f"{source}: unknown option(s) {', '.join(sorted(unknown))}")
    opts: dict = {}
    try:
        if "icao_mode" in sec:
            opts["icao_mode"] = sec["icao_mode"].strip()
        for flag in ("icao_join_runs", "fold_diacritics", "oh_is_zero"):
            if flag in sec:
                opts[flag] = sec.getboolean(flag)
        if "number_scope" in sec:
            opts["number_scope"] = sec.getint("number_scope")
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    return opts


def load_config(config_dir: str | os.PathLike | None = None) -> StageConfig:
    """Build a StageConfig from the embedded defaults, overridden by files in ``config_dir``.

    A missing directory is not an error: the defaults are used and a notice
    is logged.
    """
    texts = {
        name: (_read_default(name), f"<default>/{name}")
        for name in (FILLERS_FILE, ICAO_FILE, COMPOUNDS_FILE, SPELLING_FILE, CONTRACTIONS_FILE, OPTIONS_FILE)
    }
    if config_dir is not None:
        root = Path(config_dir)
        if not root.is_dir():
            log.warning("config dir %s not found; using embedded defaults", root)
        else:
            for name in texts:
                path = root / name
                if path.is_file():
                    texts[name] = (path.read_text(encoding="utf-8"), str(path))

    def table(name, columns=2):
        text, source = texts[name]
        return parse_table(text, source, columns)

    # contraction keys may use a typographic apostrophe; fold to ASCII
    contractions = {k.replace("’", "'"): v for k, v in table(CONTRACTIONS_FILE).items()}
    return StageConfig(
        filler_lexicon=frozenset(table(FILLERS_FILE, columns=1)),
        icao_map={k.upper(): v.upper() for k, v in table(ICAO_FILE).items()},
        compound_lexicon=table(COMPOUNDS_FILE),
        spelling_table=table(SPELLING_FILE),
        contraction_table=contractions,
        **_parse_options(*texts[OPTIONS_FILE]),
    )


_default: StageConfig | None = None


def default_config() -> StageConfig:
    """The embedded defaults, loaded once."""
    global _default
    if _default is None:
        _default = load_config()
    return _default
