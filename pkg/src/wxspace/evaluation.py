"""Corpus-level MT metrics: BLEU, char-BLEU, chrF2, WER and TER.

All functions take parallel lists of hypothesis and reference lines and
tokenise on whitespace; nothing is lower-cased or punctuation-split.
BLEU and chrF are on a 0-100 scale, WER is a percentage, and TER is a
plain ratio of edits to reference words (so 0.5, not 50).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import AlignmentMismatch, EmptyReference

BLEU_EPSILON = 1e-9


@dataclass
class EvalResult:
    metric: str
    score: float
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"metric": self.metric, "score": self.score, "details": self.details}


def _check(hyps, refs):
    if len(hyps) != len(refs):
        raise AlignmentMismatch(f"{len(hyps)} hypothesis lines vs {len(refs)} reference lines")


def ngrams(seq: Sequence, n: int) -> Counter:
    return Counter(tuple(seq[i:i + n]) for i in range(len(seq) - n + 1))


# -- BLEU ------------------------------------------------------------------

def _bleu_from_units(hyp_units, ref_units, max_order, mode, metric):
    matches = [0] * max_order
    totals = [0] * max_order
    hyp_len = ref_len = 0
    for h, r in zip(hyp_units, ref_units):
        hyp_len += len(h)
        ref_len += len(r)
        for n in range(1, max_order + 1):
            hc = ngrams(h, n)
            rc = ngrams(r, n)
            matches[n - 1] += sum(min(c, rc[g]) for g, c in hc.items())
            totals[n - 1] += max(len(h) - n + 1, 0)
    if ref_len == 0:
        raise EmptyReference("references contain no tokens")

    # orders with no hypothesis n-grams (very short output) are left out
    orders = [i for i in range(max_order) if totals[i] > 0]
    precisions = [matches[i] / totals[i] if totals[i] else 0.0 for i in range(max_order)]
    details = {"precisions": [100 * p for p in precisions], "matches": matches,
               "totals": totals, "hyp_len": hyp_len, "ref_len": ref_len,
               "max_order": max_order, "effective_order": len(orders), "mode": mode}

    if mode == "plain_product":
        ratio = min(1.0, hyp_len / ref_len)
        score = ratio * math.prod(precisions[i] for i in orders) if orders else 0.0
        details["length_factor"] = ratio
        return EvalResult(metric, 100 * score, details)
    if mode != "standard":
        raise ValueError(f"unknown BLEU mode {mode!r}")

    if hyp_len == 0 or matches[0] == 0:
        return EvalResult(metric, 0.0, details)
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len)
    log_mean = sum(math.log(precisions[i] or BLEU_EPSILON) for i in orders) / len(orders)
    details["brevity_penalty"] = bp
    return EvalResult(metric, 100 * bp * math.exp(log_mean), details)


def bleu(hypotheses: Sequence[str], references: Sequence[str], max_order: int = 4,
         mode: str = "standard") -> EvalResult:
    """Corpus BLEU over whitespace tokens.

    ``mode="standard"`` is the usual geometric mean with the exponential
    brevity penalty (zero higher-order precisions floored at 1e-9).
    ``mode="plain_product"`` computes ``min(1, hyp_len/ref_len) * prod(p_n)``.
    """
    _check(hypotheses, references)
    return _bleu_from_units([h.split() for h in hypotheses], [r.split() for r in references],
                            max_order, mode, "bleu")


def char_bleu(hypotheses: Sequence[str], references: Sequence[str], max_order: int = 4,
              mode: str = "standard") -> EvalResult:
    """BLEU over characters; spaces count as characters."""
    _check(hypotheses, references)
    return _bleu_from_units([list(h) for h in hypotheses], [list(r) for r in references],
                            max_order, mode, "char_bleu")


# -- chrF --------------------------------------------------------------------

def chrf(hypotheses: Sequence[str], references: Sequence[str], char_order: int = 6,
         beta: float = 2.0) -> EvalResult:
    """Character n-gram F-score (whitespace removed).

    Precision and recall are summed over the corpus per order, averaged over
    the orders where both sides have n-grams, then combined as F-beta.
    """
    _check(hypotheses, references)
    stats = [[0, 0, 0] for _ in range(char_order)]  # hyp, ref, match
    for h, r in zip(hypotheses, references):
        h = "".join(h.split())
        r = "".join(r.split())
        for n in range(1, char_order + 1):
            hc = ngrams(h, n)
            rc = ngrams(r, n)
            s = stats[n - 1]
            s[0] += sum(hc.values())
            s[1] += sum(rc.values())
            s[2] += sum((hc & rc).values())
    prec_sum = rec_sum = 0.0
    effective = 0
    for n_hyp, n_ref, n_match in stats:
        if n_hyp > 0 and n_ref > 0:
            prec_sum += n_match / n_hyp
            rec_sum += n_match / n_ref
            effective += 1
    details = {"char_order": char_order, "beta": beta, "stats": stats, "effective_order": effective}
    if effective == 0:
        return EvalResult("chrf", 0.0, details)
    p = prec_sum / effective
    r = rec_sum / effective
    details["precision"] = 100 * p
    details["recall"] = 100 * r
    if p + r == 0:
        return EvalResult("chrf", 0.0, details)
    b2 = beta * beta
    return EvalResult("chrf", 100 * (1 + b2) * p * r / (b2 * p + r), details)


def chrf2(hypotheses: Sequence[str], references: Sequence[str], char_order: int = 6) -> EvalResult:
    result = chrf(hypotheses, references, char_order=char_order, beta=2.0)
    result.metric = "chrf2"
    return result


# -- edit distances -------------------------------------------------------------

def levenshtein(a: Sequence, b: Sequence) -> int:
    """Unit-cost edit distance between two token sequences."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def wer(hypotheses: Sequence[str], references: Sequence[str]) -> EvalResult:
    """Word error rate: total edits / total reference words, times 100."""
    _check(hypotheses, references)
    edits = words = 0
    for h, r in zip(hypotheses, references):
        rt = r.split()
        edits += levenshtein(h.split(), rt)
        words += len(rt)
    if words == 0:
        raise EmptyReference("references contain no words")
    return EvalResult("wer", 100 * edits / words, {"edits": edits, "ref_words": words})


def _shift(words, start, length, target):
    """Move ``words[start:start+length]`` so it begins at *target* in the result."""
    block = words[start:start + length]
    rest = words[:start] + words[start + length:]
    return rest[:target] + block + rest[target:]


def ter_sentence(hyp: Sequence[str], ref: Sequence[str], max_shift_distance: int = 10,
                 max_shift_size: int = 10) -> tuple[int, int]:
    """Greedy TER for one segment; returns ``(shifts, edits)``.

    A candidate block must occur verbatim somewhere in the reference and
    may move at most ``max_shift_distance`` positions.  Each round applies
    the candidate with the largest drop in edit distance (ties: longer
    block, then earlier start, then earlier target) and rounds continue
    while that drop is positive.
    """
    hyp = list(hyp)
    ref = list(ref)
    ref_blocks = set()
    for n in range(1, max_shift_size + 1):
        ref_blocks.update(ngrams(ref, n))
    shifts = 0
    current = levenshtein(hyp, ref)
    while current > 0:
        best = None
        n = len(hyp)
        for start in range(n):
            for length in range(1, min(max_shift_size, n - start) + 1):
                if tuple(hyp[start:start + length]) not in ref_blocks:
                    break
                lo = max(0, start - max_shift_distance)
                hi = min(n - length, start + max_shift_distance)
                for target in range(lo, hi + 1):
                    if target == start:
                        continue
                    cand = _shift(hyp, start, length, target)
                    gain = current - levenshtein(cand, ref)
                    key = (gain, length, -start, -target)
                    if best is None or key > best[0]:
                        best = (key, cand)
        if best is None or best[0][0] <= 0:
            break
        hyp = best[1]
        current -= best[0][0]
        shifts += 1
    return shifts, current


def ter(hypotheses: Sequence[str], references: Sequence[str],
        max_shift_distance: int = 10, max_shift_size: int = 10) -> EvalResult:
    """Translation edit rate: (shifts + edits) / reference words."""
    _check(hypotheses, references)
    shifts = edits = words = 0
    for h, r in zip(hypotheses, references):
        rt = r.split()
        s, e = ter_sentence(h.split(), rt, max_shift_distance, max_shift_size)
        shifts += s
        edits += e
        words += len(rt)
    if words == 0:
        raise EmptyReference("references contain no words")
    return EvalResult("ter", (shifts + edits) / words,
                      {"shifts": shifts, "edits": edits, "ref_words": words,
                       "max_shift_distance": max_shift_distance, "max_shift_size": max_shift_size})


METRICS = {
    "bleu": bleu,
    "char_bleu": char_bleu,
    "chrf2": chrf2,
    "ter": ter,
    "wer": wer,
}


def evaluate(hypotheses: Sequence[str], references: Sequence[str],
             metrics: Sequence[str] = ("bleu", "chrf2", "ter", "wer")) -> list[EvalResult]:
    unknown = set(metrics) - METRICS.keys()
    if unknown:
        raise ValueError(f"unknown metric(s): {', '.join(sorted(unknown))}")
    return [METRICS[m](hypotheses, references) for m in metrics]
