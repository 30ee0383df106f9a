import json
import pathlib
import shutil
import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grammar import well_formed
from wxspace.codec import (
    PASSTHROUGH,
    TRANSLITERATED,
    Span,
    decode,
    decode_with_diagnostics,
    detect_script,
    encode,
    restore,
    validate_wx,
)
from wxspace.errors import FormatError, NoIndicContent, NonInvertibleScript
from wxspace.scripts import TABLE_DIR_ENV, ScriptId, load_table, table_dir

DATA = pathlib.Path(__file__).parent / "data"
BRAHMI = [ScriptId.DEVANAGARI, ScriptId.GUJARATI, ScriptId.GURMUKHI]


# -- fixed examples -------------------------------------------------------------

@pytest.mark.parametrize("text, wx", [
    ("रविवार", "ravivAra"),
    ("", ""),
    ("क्", "k"),
    ("कि", "ki"),
    ("क", "ka"),
    ("आ", "A"),
    ("ा", "A"),
    ("ज़", "jZa"),
    ("ळ", "lYa"),
    ("कं", "kaM"),
    ("कः", "kaH"),
    ("काँ", "kAz"),
    ("१२३", "123"),
    ("क्षत्रिय", "kRawriya"),
])
def test_encode_examples(text, wx):
    assert encode(text, "devanagari").wx == wx


@pytest.mark.parametrize("wx, text", [
    ("ravivAra", "रविवार"),
    ("", ""),
    ("ki", "कि"),
    ("k", "क्"),
    ("jZa", "ज़"),
])
def test_decode_examples(wx, text):
    assert decode(wx, "devanagari") == unicodedata.normalize("NFC", text)


def test_precomposed_nukta_letters_encode_like_their_decomposition():
    assert encode("ज़", "devanagari").wx == encode("ज़", "devanagari").wx == "jZa"


def test_canonical_nukta_letter_comes_back_composed():
    # U+0931 has a canonical composition, so NFC input survives the round trip
    assert encode("ऱ्या", "devanagari").wx == "rZyA"
    assert decode("rZyA", "devanagari") == "ऱ्या"


@pytest.mark.parametrize("script", ["devanagari", "gujarati", "gurmukhi"])
def test_frozen_reference_values(script):
    pairs = json.loads((DATA / "reference_wx.json").read_text(encoding="utf-8"))[script]
    assert len(pairs) >= 40
    for native, wx in pairs:
        assert encode(native, script).wx == wx, native
        assert decode(wx, script) == native


def test_code_switched_text_keeps_latin_spans():
    text = "मैं Python सीख रहा हूँ"
    enc = encode(text, "devanagari")
    assert enc.wx == "mEM Python sIKa rahA hUz"
    assert "Python" in enc.passthrough()
    assert restore(enc) == text


def test_orphan_matra_is_repaired_and_flagged():
    enc = encode("ि", "devanagari")
    assert enc.wx == "i"
    assert [d.code for d in enc.diagnostics] == ["orphan-matra"]
    assert restore(enc) == "ि"


def test_vowel_after_virama_is_flagged_and_restorable():
    enc = encode("क्इ", "devanagari")
    assert enc.wx == "ki"
    assert [d.code for d in enc.diagnostics] == ["virama-vowel"]
    assert decode(enc.wx, "devanagari") == "कि"
    assert restore(enc) == "क्इ"


def test_repaired_pieces_survive_span_serialisation():
    enc = encode("्क ਕੰ", "devanagari")
    spans = tuple(Span.from_list(json.loads(json.dumps(s.to_list()))) for s in enc.spans)
    assert spans == enc.spans
    assert Span.from_list([0, 2, "t"]) == Span(0, 2, TRANSLITERATED)


def test_unmapped_in_block_codepoint_passes_through_with_diagnostic():
    enc = encode("ॐ", "devanagari")
    assert enc.wx == "ॐ"
    assert enc.spans == (Span(0, 1, PASSTHROUGH),)
    assert enc.diagnostics[0].code == "unmapped"


def test_gurmukhi_tippi_is_an_alias_for_anusvara():
    enc = encode("ਪਿੰਡ", "gurmukhi")
    assert enc.wx == "piMda"
    assert any(d.code == "alias" for d in enc.diagnostics)
    assert decode(enc.wx, "gurmukhi") == "ਪਿਂਡ"
    assert restore(enc) == "ਪਿੰਡ"


def test_decode_flags_unknown_letters():
    text, diags = decode_with_diagnostics("kaYx", "devanagari")
    assert "Y" in text
    assert [d.offset for d in diags] == [2]


def test_decode_reads_ascii_digits_as_native_digits():
    assert decode("12", "gujarati") == "૧૨"


def test_persoarabic_is_encode_only():
    enc = encode("سلام", "persoarabic")
    assert enc.wx and enc.wx.isascii()
    with pytest.raises(NonInvertibleScript):
        decode("salAm", "persoarabic")


# -- detection and validation -------------------------------------------------------

def test_detect_script_examples():
    assert detect_script("रविवार") == (ScriptId.DEVANAGARI, 1.0)
    with pytest.raises(NoIndicContent):
        detect_script("hello")
    # six Devanagari letters, two Latin
    assert detect_script("रविवार ab") == (ScriptId.DEVANAGARI, 0.75)
    assert detect_script("ગુજરાતી")[0] is ScriptId.GUJARATI


def test_validate_wx_examples():
    assert validate_wx("ravivAra") == []
    diags = validate_wx("ra#va")
    assert [d.offset for d in diags] == [2]
    assert validate_wx("kZa") == []
    assert validate_wx("Za")[0].code == "structure"
    assert validate_wx("कa")[0].code == "native"


# -- tables --------------------------------------------------------------------------

def test_script_blocks_and_invertibility():
    assert ScriptId.DEVANAGARI.block == range(0x0900, 0x0980)
    assert ScriptId.GUJARATI.block == range(0x0A80, 0x0B00)
    assert ScriptId.GURMUKHI.block == range(0x0A00, 0x0A80)
    assert [s.invertible for s in ScriptId] == [True, True, True, False]
    assert ScriptId.parse("Hindi") is ScriptId.DEVANAGARI
    assert ScriptId.parse("urdu") is ScriptId.PERSOARABIC
    with pytest.raises(ValueError):
        ScriptId.parse("klingon")


@pytest.mark.parametrize("script", BRAHMI)
def test_vowels_share_letters_with_their_matras(script):
    t = load_table(script)
    vowel_letters = set(t.vowels.values())
    assert set(t.matras.values()) <= vowel_letters


@pytest.mark.parametrize("other", [ScriptId.GUJARATI, ScriptId.GURMUKHI])
def test_aligned_block_offsets_share_wx(other):
    dev = load_table(ScriptId.DEVANAGARI).entries()
    oth = load_table(other).entries()
    shared = dev.keys() & oth.keys()
    assert len(shared) > 40
    assert {k: dev[k] for k in shared} == {k: oth[k] for k in shared}


def test_table_dir_override(tmp_path, monkeypatch):
    for f in table_dir().glob("*.tsv"):
        shutil.copy(f, tmp_path / f.name)
    path = tmp_path / "devanagari.tsv"
    path.write_text(path.read_text(encoding="utf-8").replace("0915\tक\tconsonant\tk",
                                                             "0915\tक\tconsonant\tq1"),
                    encoding="utf-8")
    monkeypatch.setenv(TABLE_DIR_ENV, str(tmp_path))
    assert encode("क", "devanagari").wx == "q1a"


def test_malformed_table_is_rejected(tmp_path):
    (tmp_path / "devanagari.tsv").write_text("0915\tक\tconsonant\n", encoding="utf-8")
    with pytest.raises(FormatError):
        load_table("devanagari", tmp_path)


def test_duplicate_wx_is_rejected(tmp_path):
    (tmp_path / "devanagari.tsv").write_text(
        "0915\tक\tconsonant\tk\n0916\tख\tconsonant\tk\n", encoding="utf-8")
    with pytest.raises(FormatError, match="uniquely invertible"):
        load_table("devanagari", tmp_path)


# -- properties ----------------------------------------------------------------------

def _wx_char_ok(ch, letters):
    return ch in letters or ch.isspace() or ch.isdigit() or unicodedata.category(ch).startswith("P")


@pytest.mark.parametrize("script", BRAHMI, ids=str)
@given(data=st.data())
def test_round_trip(script, data):
    text = data.draw(well_formed(script))
    assert decode(encode(text, script).wx, script) == text


@pytest.mark.parametrize("script", BRAHMI, ids=str)
@given(data=st.data())
def test_wx_round_trip(script, data):
    wx = encode(data.draw(well_formed(script)), script).wx
    assert encode(decode(wx, script), script).wx == wx


@pytest.mark.parametrize("script", BRAHMI, ids=str)
@given(data=st.data())
def test_spans_cover_output_and_alphabet_is_wx(script, data):
    enc = encode(data.draw(well_formed(script)) + " abc, ✓", script)
    pos = 0
    for span in enc.spans:
        assert span.start == pos and span.end > span.start
        pos = span.end
    assert pos == len(enc.wx)
    letters = set("".join(load_table(script).wx_letters()))
    for span in enc.spans:
        if span.kind == TRANSLITERATED:
            assert all(_wx_char_ok(c, letters) for c in enc.wx[span.start:span.end])


@given(st.text(alphabet=st.sampled_from("रविकाम्ा abcXYZ1.,✓é\n"), max_size=30))
def test_passthrough_identity(text):
    enc = encode(text, "devanagari")
    assert enc.passthrough() == "".join(c for c in text if not ScriptId.DEVANAGARI.contains(c))


@given(st.text(max_size=40))
def test_encode_is_total(text):
    enc = encode(text, "devanagari")
    assert isinstance(enc.wx, str)
    if not any(ScriptId.DEVANAGARI.contains(c) for c in text):
        assert enc.wx == text


@pytest.mark.parametrize("script", BRAHMI, ids=str)
@given(data=st.data())
def test_restore_recovers_code_switched_text(script, data):
    native = data.draw(well_formed(script))
    latin = data.draw(st.text(alphabet="abcxyzKAM-", min_size=1, max_size=8))
    text = f"{native} {latin} {native}"
    assert restore(encode(text, script)) == text


def _undecomposed_block(script):
    return [c for c in map(chr, script.block)
            if unicodedata.category(c) != "Cn" and unicodedata.decomposition(c) == ""]


@pytest.mark.parametrize("script", BRAHMI, ids=str)
@given(data=st.data())
def test_restore_is_exact_even_on_malformed_text(script, data):
    # any mix of block codepoints, including orphan signs and stray viramas
    alphabet = _undecomposed_block(script) + list("ab Z1.")
    text = data.draw(st.text(alphabet=st.sampled_from(alphabet), max_size=25))
    nfc = unicodedata.normalize("NFC", text)
    assert restore(encode(nfc, script)) == nfc
    # non-NFC input comes back canonically equivalent
    assert unicodedata.normalize("NFC", restore(encode(text, script))) == nfc


def test_nukta_spelling_that_collides_with_another_letter_is_flagged():
    enc = encode("ਡ਼", "gurmukhi")
    assert enc.wx == "dZa" == encode("ੜ", "gurmukhi").wx
    assert [d.code for d in enc.diagnostics] == ["nukta-collision"]
    assert restore(enc) == "ਡ਼"
