"""Transliteration between Indic scripts and WX notation.

Encoding is a left-to-right transducer over codepoints.  A consonant
emits its WX letter followed by the inherent ``a`` unless the next sign
is a virama (no vowel) or a dependent vowel sign (that vowel instead).
Independent vowels and their dependent forms share one WX letter, so
``आ`` and ``ा`` both become ``A``.  Anything outside the script block is
copied untouched and recorded as a passthrough span.

Decoding inverts this deterministically for the Brahmi scripts::

    >>> encode("रविवार", "devanagari").wx
    'ravivAra'
    >>> decode("ravivAra", "devanagari")
    'रविवार'

Note that :func:`decode` reads *every* ASCII letter as WX.  Text that
mixes Latin passthrough with WX must be restored with :func:`restore`,
which uses the spans recorded at encode time.
"""
from __future__ import annotations

import logging
import unicodedata
from collections import Counter
from dataclasses import dataclass, field

from .errors import NoIndicContent, NonInvertibleScript
from .scripts import ScriptId, ScriptTable, load_table

log = logging.getLogger(__name__)

TRANSLITERATED = "transliterated"
PASSTHROUGH = "passthrough"

# ASCII punctuation that survives a decode/encode cycle unchanged.
WX_PUNCTUATION = frozenset(".,;:!?'\"()-/")


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    kind: str
    original: str | None = None  # source text of a repaired piece, replayed by restore

    def to_list(self):
        item = [self.start, self.end, self.kind[0]]
        return item if self.original is None else item + [self.original]

    @classmethod
    def from_list(cls, item):
        start, end, k, *rest = item
        return cls(start, end, TRANSLITERATED if k == "t" else PASSTHROUGH, *rest[:1])


@dataclass(frozen=True)
class Diagnostic:
    offset: int
    code: str
    message: str


@dataclass(frozen=True)
class EncodedText:
    wx: str
    spans: tuple[Span, ...]
    source_script: ScriptId
    diagnostics: tuple[Diagnostic, ...] = field(default=())

    def __str__(self):
        return self.wx

    def passthrough(self) -> str:
        return "".join(self.wx[s.start:s.end] for s in self.spans if s.kind == PASSTHROUGH)


class _Builder:
    """Accumulates output pieces and merges them into spans."""

    def __init__(self):
        self.parts = []
        self.spans = []
        self.pos = 0
        self.diagnostics = []
        self.bare = False  # last output is a consonant written with a virama

    def emit(self, text, kind=TRANSLITERATED):
        if not text:
            return
        self.parts.append(text)
        end = self.pos + len(text)
        last = self.spans[-1] if self.spans else None
        if last and last[2] == kind and last[1] == self.pos and len(last) == 3:
            self.spans[-1][1] = end
        else:
            self.spans.append([self.pos, end, kind])
        self.pos = end
        self.bare = False

    def emit_repair(self, text, original):
        """Emit *text* as its own span that restores to *original*."""
        self.parts.append(text)
        self.spans.append([self.pos, self.pos + len(text), TRANSLITERATED, original])
        self.pos += len(text)
        self.bare = False

    def flag(self, offset, code, message):
        self.diagnostics.append(Diagnostic(offset, code, message))

    def result(self, script):
        return EncodedText("".join(self.parts), tuple(Span(*s) for s in self.spans),
                           script, tuple(self.diagnostics))


def _decompose_block(text: str, script: ScriptId):
    """Canonically decompose in-block codepoints only; keep source offsets."""
    chars, offsets = [], []
    for i, ch in enumerate(text):
        if script.contains(ch):
            for part in unicodedata.normalize("NFD", ch):
                chars.append(part)
                offsets.append(i)
        else:
            chars.append(ch)
            offsets.append(i)
    return chars, offsets


def _encode_brahmi(text: str, table: ScriptTable) -> EncodedText:
    script = table.script
    chars, offsets = _decompose_block(text, script)
    out = _Builder()
    n = len(chars)
    i = 0
    while i < n:
        ch = chars[i]
        if ch in table.consonants:
            piece = table.consonants[ch]
            j = i + 1
            twin = None
            if j < n and chars[j] == table.nukta:
                piece += "Z"
                j += 1
                # e.g. Gurmukhi dda + nukta spells the WX of the separate letter rra
                twin = table.inverse["consonant"].get(piece)
            nxt = chars[j] if j < n else None
            bare = nxt is not None and nxt == table.virama
            if bare:
                j += 1
            elif nxt in table.matras:
                piece += table.matras[nxt]
                j += 1
            else:
                piece += "a"
            if twin is not None:
                out.emit_repair(piece, "".join(chars[i:j]))
                out.flag(offsets[i], "nukta-collision", f"{ch!r} with nukta is spelled like {twin!r}")
            else:
                out.emit(piece)
            out.bare = bare
            i = j
            continue
        if ch in table.vowels and out.bare:
            # WX would read the vowel as a matra on the preceding consonant
            out.emit_repair(table.vowels[ch], ch)
            out.flag(offsets[i], "virama-vowel",
                     f"independent vowel {ch!r} after a virama reads back as a dependent vowel")
        elif ch in table.vowels:
            out.emit(table.vowels[ch])
        elif ch in table.signs:
            out.emit(table.signs[ch])
        elif ch in table.digits:
            out.emit(table.digits[ch])
        elif ch in table.punct:
            out.emit(table.punct[ch])
        elif ch in table.matras:
            out.emit_repair(table.matras[ch], ch)
            out.flag(offsets[i], "orphan-matra",
                     f"dependent vowel {ch!r} without a consonant; emitted as independent")
        elif ch == table.nukta:
            out.emit_repair("Z", ch)
            out.flag(offsets[i], "orphan-nukta", "nukta without a consonant")
        elif ch == table.virama:
            out.emit_repair("", ch)
            out.flag(offsets[i], "orphan-virama", "virama without a consonant; dropped")
        elif ch in table.aliases:
            out.emit_repair(table.aliases[ch], ch)
            out.flag(offsets[i], "alias", f"{ch!r} encoded as {table.aliases[ch]!r}; plain decode differs")
        elif script.contains(ch):
            out.emit(ch, PASSTHROUGH)
            out.flag(offsets[i], "unmapped", f"{ch!r} (U+{ord(ch):04X}) has no WX mapping")
        else:
            out.emit(ch, PASSTHROUGH)
        i += 1
    return out.result(script)


def _encode_sequences(text: str, table: ScriptTable) -> EncodedText:
    script = table.script
    out = _Builder()
    i = 0
    n = len(text)
    while i < n:
        for seq, cls, wx in table.sequences:
            if text.startswith(seq, i):
                out.emit(wx)
                i += len(seq)
                break
        else:
            ch = text[i]
            if script.contains(ch):
                out.emit(ch, PASSTHROUGH)
                out.flag(i, "unmapped", f"{ch!r} (U+{ord(ch):04X}) has no WX mapping")
            else:
                out.emit(ch, PASSTHROUGH)
            i += 1
    return out.result(script)


def encode(text: str, script: "ScriptId | str", table: ScriptTable | None = None) -> EncodedText:
    """Project *text* written in *script* into WX.

    Total: malformed sequences are repaired and reported in
    ``EncodedText.diagnostics`` rather than raised.
    """
    table = table or load_table(script)
    if table.invertible:
        return _encode_brahmi(text, table)
    return _encode_sequences(text, table)


def _letter_tokens(table: ScriptTable):
    """WX letters grouped by role, two-character forms first."""
    roles = {}
    for cls in ("consonant", "vowel", "sign"):
        for wx in table.inverse[cls]:
            roles.setdefault(wx, cls)
    for wx in table.inverse["matra"]:
        roles.setdefault(wx, "vowel")
    return roles


def decode_with_diagnostics(wx: str, script: "ScriptId | str",
                            table: ScriptTable | None = None) -> tuple[str, list[Diagnostic]]:
    """Inverse of :func:`encode`; also returns a list of problems found."""
    table = table or load_table(script)
    if not table.invertible:
        raise NonInvertibleScript(f"{table.script.label} cannot be decoded from WX")
    inv = table.inverse
    roles = _letter_tokens(table)
    out = []
    diags = []
    pending = False  # last emitted codepoint is a consonant still owed a vowel

    def settle():
        nonlocal pending
        if pending:
            out.append(table.virama)
            pending = False

    i = 0
    n = len(wx)
    while i < n:
        ch = wx[i]
        if ch.isascii() and ch.isalpha():
            tok = wx[i:i + 2]
            if tok not in roles:
                tok = ch
            role = roles.get(tok)
            if role == "consonant":
                settle()
                out.append(inv["consonant"][tok])
                pending = True
                i += len(tok)
                if i < n and wx[i] == "Z" and table.nukta:
                    # recompose where Unicode has a canonical nukta letter (e.g. U+0931)
                    composed = unicodedata.normalize("NFC", out[-1] + table.nukta)
                    if len(composed) == 1:
                        out[-1] = composed
                    else:
                        out.append(table.nukta)
                    i += 1
                continue
            if role == "vowel":
                if pending:
                    pending = False
                    if tok != "a":
                        if tok in inv["matra"]:
                            out.append(inv["matra"][tok])
                        else:
                            out.append(table.virama)
                            out.append(tok)
                            diags.append(Diagnostic(i, "unmappable", f"no dependent form for {tok!r}"))
                elif tok in inv["vowel"]:
                    out.append(inv["vowel"][tok])
                else:
                    out.append(tok)
                    diags.append(Diagnostic(i, "unmappable", f"no independent form for {tok!r}"))
                i += len(tok)
                continue
            settle()
            if role == "sign":
                out.append(inv["sign"][tok])
                i += len(tok)
                continue
            if ch == "Z" and table.nukta:
                out.append(table.nukta)
                diags.append(Diagnostic(i, "orphan-nukta", "'Z' does not follow a consonant"))
            else:
                out.append(ch)
                diags.append(Diagnostic(i, "unmappable", f"{ch!r} is not a WX letter for {table.script.label}"))
            i += 1
            continue
        settle()
        if ch in inv["digit"]:
            out.append(inv["digit"][ch])
        else:
            out.append(ch)
        i += 1
    settle()
    return "".join(out), diags


def decode(wx: str, script: "ScriptId | str", table: ScriptTable | None = None) -> str:
    """Convert WX back to native script text.

    Raises :class:`NonInvertibleScript` for PersoArabic.  Symbols with no
    table entry are copied through (see :func:`decode_with_diagnostics`).
    """
    text, diags = decode_with_diagnostics(wx, script, table)
    if diags:
        log.debug("decode: %d diagnostic(s), first: %s", len(diags), diags[0])
    return text


def restore(encoded: EncodedText, script: "ScriptId | str | None" = None) -> str:
    """Invert :func:`encode` using the recorded spans.

    Exact for NFC input, including pieces the encoder had to repair; other
    input comes back canonically equivalent.
    """
    table = load_table(script or encoded.source_script)
    parts = []
    for span in encoded.spans:
        piece = encoded.wx[span.start:span.end]
        if span.original is not None:
            parts.append(span.original)
        else:
            parts.append(piece if span.kind == PASSTHROUGH else decode(piece, table.script, table))
    return "".join(parts)


def detect_script(text: str) -> tuple[ScriptId, float]:
    """Return the script owning the plurality of letters and its share.

    Letters are codepoints of Unicode category L* or M*, so dependent
    vowel signs count alongside the consonants they attach to.
    """
    counts = Counter()
    total = 0
    for ch in text:
        if unicodedata.category(ch)[0] not in "LM":
            continue
        total += 1
        for script in ScriptId:
            if script.contains(ch):
                counts[script] += 1
                break
    if not counts:
        raise NoIndicContent("no codepoints from a supported Indic block")
    best = max(ScriptId, key=lambda s: (counts[s], -list(ScriptId).index(s)))
    return best, counts[best] / total


def validate_wx(wx: str, script: "ScriptId | str" = ScriptId.DEVANAGARI) -> list[Diagnostic]:
    """Report anything that would keep ``encode(decode(wx))`` from returning *wx*."""
    table = load_table(script)
    roles = _letter_tokens(table)
    native = {}
    for s in ScriptId:
        if s.invertible:
            t = load_table(s)
            for m in (t.vowels, t.matras, t.consonants, t.signs, t.digits):
                native.update(dict.fromkeys(m))
    diags = []
    prev_consonant = False
    i = 0
    n = len(wx)
    while i < n:
        ch = wx[i]
        if ch.isascii() and ch.isalpha():
            tok = wx[i:i + 2]
            if tok not in roles:
                tok = ch
            role = roles.get(tok)
            if role is None:
                if ch == "Z":
                    if not prev_consonant:
                        diags.append(Diagnostic(i, "structure", "'Z' must follow a consonant"))
                else:
                    diags.append(Diagnostic(i, "alphabet", f"{ch!r} is not a WX letter"))
                prev_consonant = False
                i += 1
                continue
            prev_consonant = role == "consonant"
            i += len(tok)
            continue
        prev_consonant = False
        if ch.isascii():
            if not (ch.isdigit() or ch.isspace() or ch in WX_PUNCTUATION):
                diags.append(Diagnostic(i, "alphabet", f"{ch!r} is not in the WX alphabet"))
        elif ch in native:
            diags.append(Diagnostic(i, "native", f"native letter {ch!r} inside WX text"))
        i += 1
    return diags
