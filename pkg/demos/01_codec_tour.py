"""Walk through the WX codec on a few sentences from three scripts.

Run: python3 demos/01_codec_tour.py
"""
from wxspace.codec import decode, encode, restore, validate_wx

SENTENCES = [
    ("devanagari", "आज रविवार है"),
    ("gujarati", "આજે રવિવાર છે"),
    ("gurmukhi", "ਅੱਜ ਐਤਵਾਰ ਹੈ"),
]

print("Three scripts, one ASCII space:")
for script, text in SENTENCES:
    enc = encode(text, script)
    print(f"  {script:<11} {text:<16} -> {enc.wx}")
print("  (the Gurmukhi addak has no WX letter, so it is carried through as is)")

print("\nThe same word looks alike once projected:")
for script, word in [("devanagari", "रविवार"), ("gujarati", "રવિવાર")]:
    print(f"  {script:<11} {word} -> {encode(word, script).wx}")

print("\nLatin words pass straight through, and spans remember where they were:")
enc = encode("मैं Python सीख रहा हूँ", "hindi")
print(f"  wx:    {enc.wx}")
for span in enc.spans:
    print(f"  span:  {span}")
print(f"  restored: {restore(enc)}")

print("\nDecoding checks its input; stray symbols are reported, not fatal:")
for wx in ["ravivAra", "Zka", "ra#va"]:
    problems = [d.code for d in validate_wx(wx, "devanagari")]
    print(f"  {wx:<10} -> {decode(wx, 'devanagari'):<8} problems: {problems or 'none'}")
