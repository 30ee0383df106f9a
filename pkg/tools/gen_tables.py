"""Regenerate the bundled Brahmi script tables.

The Devanagari entries below are the normative WX table.  Gujarati and
Gurmukhi tables are derived by block-offset alignment: an entry is copied
when the sister block assigns a codepoint at the same offset and that
codepoint has no canonical decomposition.  Run from the repository root::

    python tools/gen_tables.py
"""
import pathlib
import unicodedata

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "wxspace" / "data" / "tables"

# (offset, class, wx)
DEVANAGARI = [
    (0x05, "vowel", "a"), (0x06, "vowel", "A"), (0x07, "vowel", "i"),
    (0x08, "vowel", "I"), (0x09, "vowel", "u"), (0x0A, "vowel", "U"),
    (0x0B, "vowel", "q"), (0x60, "vowel", "Q"), (0x0F, "vowel", "e"),
    (0x10, "vowel", "E"), (0x13, "vowel", "o"), (0x14, "vowel", "O"),
    (0x0D, "vowel", "EY"), (0x11, "vowel", "OY"),
    (0x3E, "matra", "A"), (0x3F, "matra", "i"), (0x40, "matra", "I"),
    (0x41, "matra", "u"), (0x42, "matra", "U"), (0x43, "matra", "q"),
    (0x44, "matra", "Q"), (0x47, "matra", "e"), (0x48, "matra", "E"),
    (0x4B, "matra", "o"), (0x4C, "matra", "O"), (0x45, "matra", "EY"),
    (0x49, "matra", "OY"),
    (0x15, "consonant", "k"), (0x16, "consonant", "K"), (0x17, "consonant", "g"),
    (0x18, "consonant", "G"), (0x19, "consonant", "f"), (0x1A, "consonant", "c"),
    (0x1B, "consonant", "C"), (0x1C, "consonant", "j"), (0x1D, "consonant", "J"),
    (0x1E, "consonant", "F"), (0x1F, "consonant", "t"), (0x20, "consonant", "T"),
    (0x21, "consonant", "d"), (0x22, "consonant", "D"), (0x23, "consonant", "N"),
    (0x24, "consonant", "w"), (0x25, "consonant", "W"), (0x26, "consonant", "x"),
    (0x27, "consonant", "X"), (0x28, "consonant", "n"), (0x2A, "consonant", "p"),
    (0x2B, "consonant", "P"), (0x2C, "consonant", "b"), (0x2D, "consonant", "B"),
    (0x2E, "consonant", "m"), (0x2F, "consonant", "y"), (0x30, "consonant", "r"),
    (0x32, "consonant", "l"), (0x33, "consonant", "lY"), (0x35, "consonant", "v"),
    (0x36, "consonant", "S"), (0x37, "consonant", "R"), (0x38, "consonant", "s"),
    (0x39, "consonant", "h"),
    (0x01, "sign", "z"), (0x02, "sign", "M"), (0x03, "sign", "H"),
    (0x3C, "nukta", "Z"), (0x4D, "virama", ""),
] + [(0x66 + d, "digit", str(d)) for d in range(10)] + [
    (0x64, "punct", "।"), (0x65, "punct", "॥"),
]

SISTERS = {
    "gujarati": (0x0A80, "Gujarati", "0A80-0AFF"),
    "gurmukhi": (0x0A00, "Gurmukhi", "0A00-0A7F"),
}

# Script-specific extras: (codepoint, class, wx)
EXTRA = {
    "gurmukhi": [
        (0x0A5C, "consonant", "dZ"),  # rra is atomic here but a nukta form in Devanagari
        (0x0A70, "alias", "M"),  # tippi is written for anusvara
    ],
}


def header(name, block, invertible):
    return [
        f"# script: {name}",
        "# version: 1",
        f"# block: {block}",
        f"# invertible: {'yes' if invertible else 'no'}",
        "# columns: codepoint  char  class  wx",
    ]


def row(cp, cls, wx):
    ch = chr(cp)
    return f"{cp:04X}\t{ch}\t{cls}\t{wx}"


def write(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    lines = header("Devanagari", "0900-097F", True)
    lines += [row(0x0900 + off, cls, wx) for off, cls, wx in DEVANAGARI]
    write(OUT / "devanagari.tsv", lines)

    for key, (base, name, block) in SISTERS.items():
        lines = header(name, block, True)
        for off, cls, wx in DEVANAGARI:
            cp = base + off
            if unicodedata.name(chr(cp), None) is None:
                continue
            if unicodedata.decomposition(chr(cp)):
                continue
            if cls == "punct":
                continue  # sister scripts borrow the Devanagari danda
            if cls == "digit":
                wx = str(unicodedata.digit(chr(cp)))
            lines.append(row(cp, cls, wx))
        lines += [row(cp, cls, wx) for cp, cls, wx in EXTRA.get(key, [])]
        write(OUT / f"{key}.tsv", lines)


if __name__ == "__main__":
    main()
