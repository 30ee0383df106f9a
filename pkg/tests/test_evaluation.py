import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (
    bleu_oracle,
    char_bleu_oracle,
    chrf_oracle,
    edit_distance,
    ter_oracle,
    ter_segment_oracle,
    wer_oracle,
)
from wxspace.errors import AlignmentMismatch, EmptyReference
from wxspace.evaluation import (
    bleu,
    char_bleu,
    chrf2,
    evaluate,
    levenshtein,
    ter,
    ter_sentence,
    wer,
)

IMPLEMENTED = {"bleu": bleu, "char_bleu": char_bleu, "chrf2": chrf2, "wer": wer, "ter": ter}
ORACLES = {"bleu": bleu_oracle, "char_bleu": char_bleu_oracle, "chrf2": chrf_oracle,
           "wer": wer_oracle, "ter": ter_oracle}


def random_pairs(seed, count=50, vocab="a b c d e ab".split(), max_tokens=8):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, 3)
        hyps = [" ".join(rng.choice(vocab) for _ in range(rng.randint(1, max_tokens))) for _ in range(n)]
        refs = [" ".join(rng.choice(vocab) for _ in range(rng.randint(1, max_tokens))) for _ in range(n)]
        out.append((hyps, refs))
    return out


def close(a, b, rel=1e-9):
    return a == b or abs(a - b) <= rel * max(abs(a), abs(b))


# -- examples ------------------------------------------------------------------------------

def test_identity_extremes():
    lines = ["ravivAra ko Gara", "vaha AyA"]
    scores = {r.metric: r.score for r in evaluate(lines, lines, ["bleu", "char_bleu", "chrf2", "wer", "ter"])}
    assert scores == {"bleu": 100.0, "char_bleu": 100.0, "chrf2": 100.0, "wer": 0.0, "ter": 0.0}
    assert bleu(lines, lines, mode="plain_product").score == 100.0


def test_bleu_examples():
    assert bleu(["x y z"], ["a b c"]).score == 0.0
    assert bleu(["x y z"], ["a b c"], mode="plain_product").score == 0.0
    result = bleu(["the the the"], ["the cat"])
    assert result.details["matches"][0] == 1 and result.details["totals"][0] == 3
    assert result.score == pytest.approx(bleu_oracle(["the the the"], ["the cat"]), rel=1e-12)
    # effective order 3, p = (1/3, 1e-9, 1e-9), no brevity penalty
    assert result.score == pytest.approx(100 * (1 / 3 * 1e-9 * 1e-9) ** (1 / 3), rel=1e-12)


def test_plain_product_bleu():
    r = bleu(["a b c d"], ["a b c e f"], mode="plain_product")
    # length factor 4/5, precisions 3/4, 2/3, 1/2, 0
    assert r.score == 0.0
    r = bleu(["a b c"], ["a b c d"], mode="plain_product")
    assert r.score == pytest.approx(100 * 3 / 4, rel=1e-12)
    with pytest.raises(ValueError):
        bleu(["a"], ["a"], mode="other")


def test_char_bleu_examples():
    assert char_bleu(["abc"], ["xyz"]).score == 0.0
    hyp, ref = ["ab ca", "kala"], ["abc a", "kAla"]
    assert char_bleu(hyp, ref).score == pytest.approx(char_bleu_oracle(hyp, ref), rel=1e-12)


def test_chrf_examples():
    assert chrf2([""], ["abc"]).score == 0.0
    assert chrf2(["abcd"], ["abce"]).score == pytest.approx(chrf_oracle(["abcd"], ["abce"]), rel=1e-12)
    # n=1: p=r=3/4, n=2: 2/3, n=3: 1/2, n=4: 0
    assert chrf2(["abcd"], ["abce"]).score == pytest.approx(100 * (3 / 4 + 2 / 3 + 1 / 2) / 4, rel=1e-12)


def test_wer_examples():
    assert wer(["a b c"], ["a b c"]).score == 0.0
    assert wer(["a x c"], ["a b c"]).score == pytest.approx(100 / 3)
    assert wer([""], ["a b c d"]).score == 100.0


def test_ter_examples():
    assert ter(["a b"], ["a b"]).score == 0.0
    r = ter(["b a"], ["a b"])
    assert r.score == 0.5
    assert r.details["shifts"] == 1 and r.details["edits"] == 0


def test_ter_shift_distance_limit():
    hyp = "z a b c d e f g h i j k l".split()
    ref = "a b c d e f g h i j k l z".split()
    assert ter_sentence(hyp, ref) == (0, 2)  # too far to shift: delete + insert
    assert ter_sentence(hyp, ref, max_shift_distance=12) == (1, 0)


def test_errors():
    for fn in IMPLEMENTED.values():
        with pytest.raises(AlignmentMismatch):
            fn(["a"], ["a", "b"])
    for fn in (bleu, wer, ter):
        with pytest.raises(EmptyReference):
            fn(["a"], [""])
    with pytest.raises(ValueError):
        evaluate(["a"], ["a"], ["meteor"])


def test_ratio_can_exceed_one():
    assert ter(["a b c d e"], ["a"]).score == 4.0
    assert wer(["a b c d e"], ["x"]).score == 500.0


# -- oracle equivalence ------------------------------------------------------------------------

@pytest.mark.parametrize("metric", sorted(IMPLEMENTED))
def test_matches_brute_force_oracle(metric):
    for hyps, refs in random_pairs(seed=sum(map(ord, metric))):
        got = IMPLEMENTED[metric](hyps, refs).score
        want = ORACLES[metric](hyps, refs)
        assert close(got, want), (metric, hyps, refs, got, want)


@given(st.lists(st.sampled_from("abcd"), max_size=7), st.lists(st.sampled_from("abcd"), max_size=7))
def test_levenshtein_matches_recursive_definition(a, b):
    assert levenshtein(a, b) == edit_distance(a, b)


@given(st.lists(st.sampled_from("abcd"), max_size=7), st.lists(st.sampled_from("abcd"), min_size=1, max_size=7))
def test_ter_segment_matches_exhaustive_search(hyp, ref):
    assert ter_sentence(hyp, ref) == ter_segment_oracle(hyp, ref)


# -- properties --------------------------------------------------------------------------------

@given(st.randoms(use_true_random=False))
def test_scores_stay_in_range_and_are_order_invariant(rng):
    hyps, refs = random_pairs(rng.randint(0, 10**6), count=1)[0]
    order = list(range(len(hyps)))
    rng.shuffle(order)
    for name, fn in IMPLEMENTED.items():
        a = fn(hyps, refs).score
        b = fn([hyps[i] for i in order], [refs[i] for i in order]).score
        assert close(a, b, 1e-12), name
        if name in ("bleu", "char_bleu", "chrf2"):
            assert 0 <= a <= 100
        else:
            assert a >= 0


@given(st.lists(st.sampled_from("abcdefg"), min_size=2, max_size=8, unique=True), st.data())
def test_ter_beats_wer_on_block_transposition(words, data):
    cut = data.draw(st.integers(1, len(words) - 1))
    hyp = " ".join(words[cut:] + words[:cut])
    ref = " ".join(words)
    # one shift fixes a rotation, while WER needs at least two edits
    assert ter([hyp], [ref]).score * 100 < wer([hyp], [ref]).score


@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=6), st.lists(st.sampled_from("xyz"), min_size=1, max_size=6))
def test_ter_equals_wer_without_shared_words(hyp, ref):
    # no block occurs in the reference, so no shift is possible
    assert ter([" ".join(hyp)], [" ".join(ref)]).score * 100 == pytest.approx(
        wer([" ".join(hyp)], [" ".join(ref)]).score)


# -- third-party cross-checks --------------------------------------------------------------------

def test_agrees_with_sacrebleu_where_conventions_coincide():
    pytest.importorskip("sacrebleu")
    from sacrebleu.metrics import BLEU, CHRF, TER

    checked = 0
    for hyps, refs in random_pairs(seed=42, count=300, vocab="a b c d".split()):
        result = bleu(hyps, refs)
        if all(m > 0 for m, t in zip(result.details["matches"], result.details["totals"]) if t):
            ref_score = BLEU(tokenize="none", smooth_method="none", effective_order=True)
            assert close(result.score, ref_score.corpus_score(hyps, [refs]).score, 1e-9)
            checked += 1
        # sacrebleu skips per-sentence orders longer than either side; avoid those
        if all(len("".join(x.split())) >= 6 for x in hyps + refs):
            theirs = CHRF(word_order=0, eps_smoothing=False).corpus_score(hyps, [refs]).score
            assert close(chrf2(hyps, refs).score, theirs, 1e-9)
    assert checked >= 10
    for hyp, ref in [("b a", "a b"), ("c d a b", "a b c d"), ("a b c", "a b c"), ("x y", "a b")]:
        theirs = TER(case_sensitive=True).corpus_score([hyp], [[ref]]).score / 100
        assert math.isclose(ter([hyp], [ref]).score, theirs, rel_tol=1e-9)
