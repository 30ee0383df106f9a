"""Learn BPE merges on WX text and show how words split.

Run: python3 demos/02_subwords.py
"""
from wxspace.bpe import apply_bpe, learn_bpe, undo_bpe
from wxspace.codec import encode
from wxspace.samples import load_sample

hindi = [encode(line, "devanagari").wx for line in load_sample("hindi")]
model = learn_bpe(hindi, merge_count=400)
print(f"learned {len(model.merges)} merges; vocabulary of {len(model.vocab)} symbols")
print("first ten merges:", ", ".join(f"{a}+{b}" for a, b in model.merges[:10]))

# a Marathi sentence segmented with the Hindi model: shared WX spellings
# let the subwords carry over across languages
for name in ("hindi", "marathi", "nepali"):
    line = encode(load_sample(name)[3], "devanagari").wx
    tokens = apply_bpe(model, line)
    print(f"\n{name}: {line}")
    print("  tokens:", " ".join(tokens))
    print(f"  {len(tokens)} tokens for {len(line.split())} words; joins back: {undo_bpe(tokens) == line}")
