"""Compare the bundled sample corpora: entropy before and after WX, then
language-model based relatedness scores.

Run: python3 demos/03_relatedness.py
"""
import numpy as np

from wxspace.analysis import entropy_report, perplexity_matrix, ssnglm_matrix
from wxspace.codec import encode
from wxspace.samples import SAMPLES, load_sample

native = {name: load_sample(name) for name in SAMPLES}
wx = {name: [encode(l, SAMPLES[name]).wx for l in lines] for name, lines in native.items()}

print(f"{'corpus':<10} {'native H':>9} {'WX H':>7} {'drop':>6}  alphabet native/WX")
for name in SAMPLES:
    a, b = entropy_report(native[name]), entropy_report(wx[name])
    print(f"{name:<10} {a.corpus_char_entropy:9.4f} {b.corpus_char_entropy:7.4f} "
          f"{a.corpus_char_entropy - b.corpus_char_entropy:6.3f}  {a.alphabet_size}/{b.alphabet_size}")

langs = list(SAMPLES)
np.set_printoptions(precision=3, suppress=True)
ss = ssnglm_matrix(wx, order=4)
print("\nLM cross-scores in WX space (row model, column corpus; 1 = closest):")
print("          " + " ".join(f"{l[:8]:>8}" for l in langs))
for lang, row in zip(langs, ss.normalized):
    print(f"{lang:<10}" + " ".join("       -" if np.isnan(v) else f"{v:8.3f}" for v in row))

pp = perplexity_matrix(wx, order=4, symmetrize=True)
closest = {l: langs[int(np.argsort(r)[1])] for l, r in zip(langs, pp.normalized)}
print("\nnearest neighbour by symmetric perplexity:", closest)
