"""Corpus similarity and complexity measures.

* character entropy and Shannon redundancy, per corpus and per word type
* SSNGLM similarity: char LMs trained on each language score every other
  language's corpus; scores are min-max normalised over the off-diagonal
  pairs
* perplexity distance matrices, directed or symmetrised
* surface similarity of a parallel corpus via char-BLEU, chrF2 and TER
"""
from __future__ import annotations

import json
import logging
import math
import statistics
from collections import Counter
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import evaluation
from .charlm import Smoothing, corpus_score, perplexity, train_char_lm
from .errors import AlignmentMismatch, DegenerateAlphabet, EmptyCorpus
from .textio import atomic_write_text

log = logging.getLogger(__name__)


def _chars(corpus: Iterable[str], max_lines: int | None = None) -> Counter:
    counts = Counter()
    for line in islice(corpus, max_lines):
        counts.update(ch for ch in line if not ch.isspace())
    return counts


def entropy_of_counts(counts: Mapping[str, int]) -> float:
    total = sum(counts.values())
    h = 0.0
    for c in counts.values():
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def char_entropy(corpus: "Iterable[str] | str", max_lines: int | None = None) -> float:
    """Shannon entropy (bits) of the corpus character distribution, whitespace excluded."""
    if isinstance(corpus, str):
        corpus = [corpus]
    counts = _chars(corpus, max_lines)
    if not counts:
        raise EmptyCorpus("corpus has no non-whitespace characters")
    return entropy_of_counts(counts)


@dataclass(frozen=True)
class WordEntropyStats:
    max: float
    median: float
    average: float
    word_types: int


def word_char_entropy_stats(corpus: "Iterable[str] | str",
                            max_lines: int | None = None) -> WordEntropyStats:
    """Character entropy of each word type, summarised over the vocabulary.

    For an even number of types the median is the lower middle value.
    """
    if isinstance(corpus, str):
        corpus = [corpus]
    types = set()
    for line in islice(corpus, max_lines):
        types.update(line.split())
    if not types:
        raise EmptyCorpus("corpus has no words")
    values = sorted(entropy_of_counts(Counter(w)) for w in types)
    return WordEntropyStats(max=values[-1], median=statistics.median_low(values),
                            average=math.fsum(values) / len(values), word_types=len(values))


def redundancy(corpus: "Iterable[str] | str", alphabet_size: int | None = None,
               max_lines: int | None = None) -> float:
    """``1 - H / log2(V)``; V defaults to the number of observed characters."""
    if isinstance(corpus, str):
        corpus = [corpus]
    counts = _chars(corpus, max_lines)
    if not counts:
        raise EmptyCorpus("corpus has no non-whitespace characters")
    v = alphabet_size if alphabet_size is not None else len(counts)
    if v < 2:
        raise DegenerateAlphabet(f"redundancy needs an alphabet of at least 2, got {v}")
    if v < len(counts):
        raise ValueError(f"declared alphabet size {v} is smaller than the {len(counts)} observed characters")
    return 1.0 - entropy_of_counts(counts) / math.log2(v)


@dataclass
class EntropyReport:
    corpus_char_entropy: float
    per_word_entropy: WordEntropyStats
    redundancy: float | None
    alphabet_size: int

    def to_json(self) -> dict:
        return {
            "corpus_char_entropy": self.corpus_char_entropy,
            "per_word_entropy": {"max": self.per_word_entropy.max,
                                 "median": self.per_word_entropy.median,
                                 "average": self.per_word_entropy.average,
                                 "word_types": self.per_word_entropy.word_types},
            "redundancy": self.redundancy,
            "alphabet_size": self.alphabet_size,
        }


def entropy_report(lines: Sequence[str], max_lines: int | None = None) -> EntropyReport:
    lines = list(islice(lines, max_lines))
    counts = _chars(lines)
    if not counts:
        raise EmptyCorpus("corpus has no non-whitespace characters")
    h = entropy_of_counts(counts)
    v = len(counts)
    red = 1.0 - h / math.log2(v) if v >= 2 else None
    return EntropyReport(h, word_char_entropy_stats(lines), red, v)


# -- matrices --------------------------------------------------------------------

@dataclass
class SimilarityMatrix:
    languages: list[str]
    raw: np.ndarray
    normalized: np.ndarray
    kind: str
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def clean(m):
            return [[None if not np.isfinite(x) else float(x) for x in row] for row in m]
        return {"languages": list(self.languages), "kind": self.kind,
                "raw": clean(self.raw), "normalized": clean(self.normalized), **self.meta}

    def to_tsv(self, which: str = "normalized") -> str:
        m = self.normalized if which == "normalized" else self.raw
        rows = ["\t".join([self.kind] + list(self.languages))]
        for lang, row in zip(self.languages, m):
            rows.append("\t".join([lang] + ["-" if not np.isfinite(x) else f"{x:.6f}" for x in row]))
        return "\n".join(rows) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "SimilarityMatrix":
        def arr(m):
            return np.array([[np.nan if x is None else x for x in row] for row in m], dtype=float)
        meta = {k: v for k, v in data.items() if k not in ("languages", "kind", "raw", "normalized")}
        return cls(list(data["languages"]), arr(data["raw"]), arr(data["normalized"]), data["kind"], meta)


def minmax_normalize(values: np.ndarray, mask: np.ndarray | None = None) -> np.ndarray:
    """Scale entries selected by *mask* onto [0, 1]; the rest become NaN.

    If every selected entry is equal the scaled values are all 0.
    """
    values = np.asarray(values, dtype=float)
    if mask is None:
        mask = np.ones(values.shape, dtype=bool)
    out = np.full(values.shape, np.nan)
    sel = values[mask]
    if sel.size == 0:
        return out
    lo, hi = sel.min(), sel.max()
    if hi == lo:
        log.warning("min-max normalisation over identical values; returning zeros")
        out[mask] = 0.0
    else:
        out[mask] = (sel - lo) / (hi - lo)
    return out


def _check_languages(corpora):
    if len(corpora) < 2:
        raise ValueError("need corpora for at least two languages")
    for lang, lines in corpora.items():
        if not lines:
            raise EmptyCorpus(f"corpus for {lang!r} is empty")


def ssnglm_matrix(corpora: Mapping[str, Sequence[str]], order: int = 6,
                  smoothing: "Smoothing | str" = Smoothing.KNESER_NEY) -> SimilarityMatrix:
    """Train one char LM per source language and score every target corpus.

    ``raw[i][j]`` is the per-character average log10 probability of corpus
    *j* under the model of language *i*.  ``normalized`` rescales the
    off-diagonal entries to [0, 1]; the diagonal is left undefined (NaN).
    """
    _check_languages(corpora)
    langs = list(corpora)
    n = len(langs)
    raw = np.zeros((n, n))
    for i, sl in enumerate(langs):
        lm = train_char_lm(corpora[sl], order=order, smoothing=smoothing)
        for j, tl in enumerate(langs):
            raw[i, j] = corpus_score(lm, corpora[tl])
    off = ~np.eye(n, dtype=bool)
    return SimilarityMatrix(langs, raw, minmax_normalize(raw, off), "ssnglm",
                            {"order": order, "smoothing": Smoothing(smoothing).value})


def perplexity_matrix(corpora: Mapping[str, Sequence[str]], order: int = 6,
                      symmetrize: bool = False,
                      smoothing: "Smoothing | str" = Smoothing.KNESER_NEY) -> SimilarityMatrix:
    """Perplexity of each target corpus under each source-language model.

    Normalisation is min-max over every directed pair, diagonal included.
    With ``symmetrize`` each cell becomes the mean of the two normalised
    directions.
    """
    _check_languages(corpora)
    langs = list(corpora)
    n = len(langs)
    raw = np.zeros((n, n))
    for i, sl in enumerate(langs):
        lm = train_char_lm(corpora[sl], order=order, smoothing=smoothing)
        for j, tl in enumerate(langs):
            raw[i, j] = perplexity(lm, corpora[tl])
    normalized = minmax_normalize(raw)
    kind = "perplexity_raw"
    if symmetrize:
        normalized = (normalized + normalized.T) / 2.0
        kind = "perplexity_symmetric"
    return SimilarityMatrix(langs, raw, normalized, kind,
                            {"order": order, "smoothing": Smoothing(smoothing).value})


@dataclass
class MetricReport:
    scores: dict[str, float]
    details: dict[str, dict] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"scores": dict(self.scores), "details": self.details}


SURFACE_METRICS = {
    "char_bleu": evaluation.char_bleu,
    "chrf2": evaluation.chrf2,
    "ter": evaluation.ter,
}


def pairwise_surface_similarity(hypothesis_side: Sequence[str], reference_side: Sequence[str],
                                metrics: Sequence[str] = ("char_bleu", "chrf2", "ter")) -> MetricReport:
    """Compare two sides of a parallel corpus written in the same (WX) script."""
    if len(hypothesis_side) != len(reference_side):
        raise AlignmentMismatch(
            f"parallel sides differ in length: {len(hypothesis_side)} vs {len(reference_side)}")
    report = MetricReport({})
    for name in metrics:
        try:
            fn = SURFACE_METRICS[name]
        except KeyError:
            raise ValueError(f"unknown surface metric {name!r}") from None
        result = fn(hypothesis_side, reference_side)
        report.scores[name] = result.score
        report.details[name] = result.details
    return report


def save_matrix(matrix: SimilarityMatrix, stem) -> tuple[str, str]:
    """Write ``<stem>.tsv`` and ``<stem>.json``; returns both paths."""
    tsv, js = f"{stem}.tsv", f"{stem}.json"
    atomic_write_text(tsv, matrix.to_tsv())
    atomic_write_text(js, json.dumps(matrix.to_json(), ensure_ascii=False, indent=1) + "\n")
    return tsv, js
