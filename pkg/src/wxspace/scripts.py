"""Script identifiers and the WX mapping tables that back the codec.

Tables are plain TSV files under ``wxspace/data/tables`` (one per script).
Set ``WXSPACE_TABLE_DIR`` to load corrected tables from elsewhere without
touching code.
"""
from __future__ import annotations

import enum
import functools
import os
import pathlib
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import FormatError

TABLE_DIR_ENV = "WXSPACE_TABLE_DIR"
_BUNDLED_TABLES = pathlib.Path(__file__).parent / "data" / "tables"


class ScriptId(enum.Enum):
    """Supported source scripts.  Enumeration order breaks detection ties."""

    DEVANAGARI = ("Devanagari", 0x0900, 0x097F, True)
    GUJARATI = ("Gujarati", 0x0A80, 0x0AFF, True)
    GURMUKHI = ("Gurmukhi", 0x0A00, 0x0A7F, True)
    PERSOARABIC = ("PersoArabic", 0x0600, 0x06FF, False)

    def __init__(self, label, first, last, invertible):
        self.label = label
        self.first = first
        self.last = last
        self.invertible = invertible

    @property
    def block(self) -> range:
        return range(self.first, self.last + 1)

    def contains(self, ch: str) -> bool:
        return self.first <= ord(ch) <= self.last

    @classmethod
    def parse(cls, name: "str | ScriptId") -> "ScriptId":
        if isinstance(name, ScriptId):
            return name
        key = name.strip().lower().replace("-", "").replace("_", "")
        aliases = {"hindi": "devanagari", "deva": "devanagari", "guj": "gujarati",
                   "gujr": "gujarati", "punjabi": "gurmukhi", "guru": "gurmukhi",
                   "gurumukhi": "gurmukhi", "urdu": "persoarabic", "arabic": "persoarabic",
                   "arab": "persoarabic"}
        key = aliases.get(key, key)
        for member in cls:
            if member.label.lower() == key:
                return member
        raise ValueError(f"unknown script {name!r}; expected one of "
                         f"{', '.join(m.label for m in cls)}")

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ScriptTable:
    """Codepoint to WX mapping for one script, plus the decode inverses."""

    script: ScriptId
    version: str
    vowels: Mapping[str, str]
    matras: Mapping[str, str]
    consonants: Mapping[str, str]
    signs: Mapping[str, str]
    digits: Mapping[str, str]
    punct: Mapping[str, str]
    aliases: Mapping[str, str]
    nukta: str | None = None
    virama: str | None = None
    # PersoArabic only: multi-codepoint sequences, longest first.
    sequences: tuple[tuple[str, str, str], ...] = ()
    inverse: Mapping[str, Mapping[str, str]] = field(default_factory=dict)

    @property
    def invertible(self) -> bool:
        return self.script.invertible

    def wx_letters(self) -> frozenset[str]:
        """Every WX string this table can emit for a letter or sign."""
        out = set()
        for m in (self.vowels, self.matras, self.consonants, self.signs):
            out.update(m.values())
        if self.nukta:
            out.add("Z")
        return frozenset(out)

    def entries(self) -> dict[int, str]:
        """Block offset -> WX for every single-codepoint entry (aliases excluded)."""
        out = {}
        for m in (self.vowels, self.matras, self.consonants, self.signs, self.digits):
            for ch, wx in m.items():
                out[ord(ch) - self.script.first] = wx
        if self.nukta:
            out[ord(self.nukta) - self.script.first] = "Z"
        if self.virama:
            out[ord(self.virama) - self.script.first] = ""
        return out


def table_dir() -> pathlib.Path:
    override = os.environ.get(TABLE_DIR_ENV)
    return pathlib.Path(override) if override else _BUNDLED_TABLES


def _parse_rows(path: pathlib.Path):
    meta = {}
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                key, sep, value = line[1:].partition(":")
                if sep:
                    meta[key.strip()] = value.strip()
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise FormatError(f"{path}:{lineno}: expected 4 tab-separated columns")
            cps, ch, cls, wx = parts
            try:
                decoded = "".join(chr(int(c, 16)) for c in cps.split("+"))
            except ValueError:
                raise FormatError(f"{path}:{lineno}: bad codepoint {cps!r}") from None
            if decoded != ch:
                raise FormatError(f"{path}:{lineno}: codepoint column does not match {ch!r}")
            rows.append((lineno, ch, cls, wx))
    return meta, rows


@functools.lru_cache(maxsize=None)
def _load(script: ScriptId, directory: str) -> ScriptTable:
    path = pathlib.Path(directory) / f"{script.label.lower()}.tsv"
    if not path.exists():
        raise FormatError(f"no table for {script.label} at {path}")
    meta, rows = _parse_rows(path)
    buckets = {k: {} for k in ("vowel", "matra", "consonant", "sign", "digit", "punct", "alias")}
    nukta = virama = None
    sequences = []
    for lineno, ch, cls, wx in rows:
        if not script.invertible:
            sequences.append((ch, cls, wx))
            continue
        if len(ch) != 1 or not script.contains(ch):
            raise FormatError(f"{path}:{lineno}: {ch!r} is outside the {script.label} block")
        if cls == "nukta":
            nukta = ch
        elif cls == "virama":
            virama = ch
        elif cls in buckets:
            buckets[cls][ch] = wx
        else:
            raise FormatError(f"{path}:{lineno}: unknown class {cls!r}")

    sequences.sort(key=lambda r: -len(r[0]))
    inverse = {}
    for cls in ("vowel", "matra", "consonant", "sign", "digit"):
        inv = {}
        for ch, wx in buckets[cls].items():
            if wx in inv:
                raise FormatError(f"{path}: {cls} WX {wx!r} is not uniquely invertible")
            inv[wx] = ch
        inverse[cls] = MappingProxyType(inv)

    frozen = {k: MappingProxyType(v) for k, v in buckets.items()}
    return ScriptTable(
        script=script,
        version=meta.get("version", "0"),
        vowels=frozen["vowel"],
        matras=frozen["matra"],
        consonants=frozen["consonant"],
        signs=frozen["sign"],
        digits=frozen["digit"],
        punct=frozen["punct"],
        aliases=frozen["alias"],
        nukta=nukta,
        virama=virama,
        sequences=tuple(sequences),
        inverse=MappingProxyType(inverse),
    )


def load_table(script: "ScriptId | str", directory: "str | os.PathLike | None" = None) -> ScriptTable:
    """Load (and cache) the mapping table for *script*."""
    script = ScriptId.parse(script)
    return _load(script, str(directory or table_dir()))
