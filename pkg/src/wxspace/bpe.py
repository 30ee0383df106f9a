"""Byte-pair-encoding subwords over whitespace-tokenised text.

Each word starts as a list of characters whose first element carries the
word-boundary marker (``"▁"``), so ``"ravi"`` begins as
``["▁r", "a", "v", "i"]``.  Learning repeatedly merges the most frequent
adjacent pair (ties go to the lexicographically smallest pair) until the
merge budget, the vocabulary cap, or the minimum pair frequency stops it.
"""
from __future__ import annotations

import heapq
import io
import os
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptyCorpus, FormatError

MARKER = "▁"
FORMAT_VERSION = 1
_HEADER_TAG = "#wxspace-bpe"


@dataclass
class BpeModel:
    merges: list[tuple[str, str]]
    vocab: dict[str, int]
    boundary_marker: str = MARKER
    vocab_cap: int = 5000
    merge_count: int = 5000
    min_frequency: int = 2
    _ranks: dict = field(default=None, init=False, repr=False, compare=False)
    _cache: dict = field(default=None, init=False, repr=False, compare=False)

    @property
    def ranks(self) -> dict[tuple[str, str], int]:
        if self._ranks is None:
            self._ranks = {pair: r for r, pair in enumerate(self.merges)}
            self._cache = {}
        return self._ranks

    def segment_word(self, word: str) -> tuple[str, ...]:
        """Split one word and replay the merges in learned order."""
        ranks = self.ranks
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        symbols = _initial_symbols(word, self.boundary_marker)
        last = -1
        while len(symbols) > 1:
            # next merge to replay: smallest rank above the last one applied
            best = None
            for pair in zip(symbols, symbols[1:]):
                r = ranks.get(pair)
                if r is not None and r > last and (best is None or r < best):
                    best = r
            if best is None:
                break
            symbols = _merge_pair(symbols, self.merges[best])
            last = best
        result = tuple(symbols)
        if len(self._cache) < 100_000:
            self._cache[word] = result
        return result


def _initial_symbols(word: str, marker: str) -> list[str]:
    if not word:
        return []
    return [marker + word[0], *word[1:]]


def _merge_pair(symbols: list[str], pair: tuple[str, str]) -> list[str]:
    left, right = pair
    out = []
    i = 0
    n = len(symbols)
    while i < n:
        if i + 1 < n and symbols[i] == left and symbols[i + 1] == right:
            out.append(left + right)
            i += 2
        else:
            out.append(symbols[i])
            i += 1
    return out


def _word_counts(corpus: Iterable[str]) -> Counter:
    counts = Counter()
    for line in corpus:
        counts.update(line.split())
    return counts


def learn_bpe(corpus: Iterable[str], merge_count: int = 5000, vocab_cap: int = 5000,
              min_frequency: int = 2, boundary_marker: str = MARKER) -> BpeModel:
    """Learn merges from *corpus* (an iterable of lines).

    Stops after ``merge_count`` merges, once the vocabulary holds
    ``vocab_cap`` symbols, or when no pair occurs ``min_frequency`` times.
    """
    words = _word_counts(corpus)
    if not words:
        raise EmptyCorpus("BPE training corpus has no words")
    if any(boundary_marker in w for w in words):
        raise ValueError(f"corpus contains the boundary marker {boundary_marker!r}")

    # one entry per word type: [symbols, count]
    types = [[_initial_symbols(w, boundary_marker), c] for w, c in sorted(words.items())]
    vocab = Counter()
    pair_freq = Counter()
    where = defaultdict(set)
    for idx, (syms, c) in enumerate(types):
        for s in syms:
            vocab[s] += c
        for pair in zip(syms, syms[1:]):
            pair_freq[pair] += c
            where[pair].add(idx)
    vocab = dict(vocab)

    heap = [(-f, p) for p, f in pair_freq.items()]
    heapq.heapify(heap)
    merges = []
    while len(merges) < merge_count and len(vocab) < vocab_cap and heap:
        negf, pair = heapq.heappop(heap)
        freq = pair_freq.get(pair, 0)
        if freq != -negf:
            if freq > 0:
                heapq.heappush(heap, (-freq, pair))
            continue
        if freq < min_frequency:
            break
        merges.append(pair)
        merged = pair[0] + pair[1]
        vocab.setdefault(merged, freq)

        for idx in sorted(where.pop(pair, ())):
            syms, c = types[idx]
            if len(syms) < 2:
                continue
            for p in zip(syms, syms[1:]):
                pair_freq[p] -= c
                if pair_freq[p] <= 0:
                    del pair_freq[p]
            new = _merge_pair(syms, pair)
            types[idx][0] = new
            touched = set()
            for p in zip(new, new[1:]):
                pair_freq[p] += c
                where[p].add(idx)
                touched.add(p)
            for p in touched:
                heapq.heappush(heap, (-pair_freq[p], p))
        pair_freq.pop(pair, None)

    return BpeModel(merges=merges, vocab=vocab, boundary_marker=boundary_marker,
                    vocab_cap=vocab_cap, merge_count=merge_count, min_frequency=min_frequency)


def apply_bpe(model: BpeModel, line: str) -> list[str]:
    tokens = []
    for word in line.split():
        tokens.extend(model.segment_word(word))
    return tokens


def undo_bpe(tokens: Sequence[str], boundary_marker: str = MARKER) -> str:
    return "".join(tokens).replace(boundary_marker, " ").strip()


def dumps_bpe(model: BpeModel) -> str:
    buf = io.StringIO()
    buf.write(f"{_HEADER_TAG} version={FORMAT_VERSION} marker=U+{ord(model.boundary_marker):04X} "
              f"merge_count={model.merge_count} vocab_cap={model.vocab_cap} "
              f"min_frequency={model.min_frequency} merges={len(model.merges)}\n")
    for left, right in model.merges:
        buf.write(f"{left} {right}\n")
    buf.write("#vocab\n")
    for sym, freq in sorted(model.vocab.items()):
        buf.write(f"{sym}\t{freq}\n")
    return buf.getvalue()


def loads_bpe(text: str) -> BpeModel:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith(_HEADER_TAG + " "):
        raise FormatError("missing BPE model header")
    try:
        settings = dict(kv.split("=", 1) for kv in lines[0].split()[1:])
        version = int(settings["version"])
        marker = chr(int(settings["marker"].removeprefix("U+"), 16))
        merge_count = int(settings["merge_count"])
        vocab_cap = int(settings["vocab_cap"])
        min_frequency = int(settings["min_frequency"])
        n_merges = int(settings["merges"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad BPE header: {exc}") from None
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported BPE model version {version}")
    body = lines[1:]
    if len(body) < n_merges + 1 or body[n_merges] != "#vocab":
        raise FormatError("truncated BPE model: merge list or vocab section missing")
    merges = []
    for lineno, line in enumerate(body[:n_merges], 2):
        parts = line.split(" ")
        if len(parts) != 2 or not all(parts):
            raise FormatError(f"line {lineno}: expected 'left right'")
        merges.append((parts[0], parts[1]))
    vocab = {}
    for lineno, line in enumerate(body[n_merges + 1:], n_merges + 3):
        sym, tab, freq = line.rpartition("\t")
        if not tab or not sym:
            raise FormatError(f"line {lineno}: expected 'symbol<TAB>frequency'")
        try:
            vocab[sym] = int(freq)
        except ValueError:
            raise FormatError(f"line {lineno}: bad frequency {freq!r}") from None
    return BpeModel(merges=merges, vocab=vocab, boundary_marker=marker, vocab_cap=vocab_cap,
                    merge_count=merge_count, min_frequency=min_frequency)


def save_bpe(model: BpeModel, path: "str | os.PathLike") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_bpe(model))


def load_bpe(path: "str | os.PathLike") -> BpeModel:
    with open(path, encoding="utf-8") as fh:
        return loads_bpe(fh.read())
