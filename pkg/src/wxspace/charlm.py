"""Character n-gram language models.

Sentences are padded with ``order - 1`` BOS symbols and closed with one
EOS event; whitespace is an ordinary character.  Characters never seen in
training are scored as ``UNK``.

Every smoothing mode is compiled at training time into backoff tables of
the same shape an ARPA file holds: ``log10 p(w | h)`` for observed n-grams
and a backoff weight per history.  Scoring walks those tables, so a model
reloaded from ARPA scores exactly like the one that was saved.

Kneser-Ney here is the interpolated form with one absolute discount per
order.  Lower orders use continuation counts, and the unigram level
interpolates with a uniform distribution over the vocabulary, which is
where ``UNK`` gets its probability mass.
"""
from __future__ import annotations

import enum
import math
import os
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyCorpus, FormatError, InvalidOrder

BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"
RESERVED = (BOS, EOS, UNK)
NEG_INF = float("-inf")


class Smoothing(str, enum.Enum):
    KNESER_NEY = "kneser_ney"
    WITTEN_BELL = "witten_bell"
    MLE = "mle"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class SentenceScore:
    total_log10_prob: float
    scored_tokens: int


class CharNGramLM:
    """Backoff tables plus the vocabulary of predictable symbols.

    ``vocab`` holds the observed characters and the reserved EOS/UNK
    symbols; BOS only ever appears as history.
    """

    def __init__(self, order, vocab, probs, backoffs, smoothing, use_eos=True,
                 counts=None, discounts=None):
        self.order = order
        self.vocab = frozenset(vocab)
        self.probs = probs          # tuple ngram -> log10 prob
        self.backoffs = backoffs    # tuple history -> log10 backoff weight
        self.smoothing = Smoothing(smoothing)
        self.use_eos = use_eos
        self.counts = counts
        self.discounts = discounts

    @property
    def alphabet_size(self) -> int:
        return len(self.vocab)

    @property
    def alphabet(self) -> frozenset[str]:
        return self.vocab | {BOS}

    def symbol(self, ch: str) -> str:
        return ch if ch in self.vocab else UNK

    def log10_prob(self, history: Sequence[str], token: str) -> float:
        """log10 p(token | history), using at most ``order - 1`` history symbols.

        Symbols outside the vocabulary (other than BOS) are read as UNK.
        """
        history = tuple(history)[max(0, len(history) - self.order + 1):]
        vocab = self.vocab
        if token not in vocab:
            token = UNK
        if not all(h in vocab or h == BOS for h in history):
            history = tuple(h if h in vocab or h == BOS else UNK for h in history)
        weight = 0.0
        probs = self.probs
        backoffs = self.backoffs
        while True:
            lp = probs.get(history + (token,))
            if lp is not None:
                return weight + lp
            if not history:
                return NEG_INF
            weight += backoffs.get(history, 0.0)
            if weight == NEG_INF:
                return NEG_INF
            history = history[1:]

    def prob(self, history: Sequence[str], token: str) -> float:
        return 10.0 ** self.log10_prob(history, token)

    def events(self, line: str):
        """Yield ``(history, token)`` pairs scored for *line*."""
        syms = [BOS] * (self.order - 1) + [self.symbol(ch) for ch in line]
        if self.use_eos:
            syms.append(EOS)
        start = self.order - 1
        for j in range(start, len(syms)):
            yield tuple(syms[j - start:j]), syms[j]


def _pad(line: str, order: int, use_eos: bool) -> list[str]:
    syms = [BOS] * (order - 1) + list(line)
    if use_eos:
        syms.append(EOS)
    return syms


def _count(corpus: Iterable[str], order: int, use_eos: bool):
    """Raw n-gram counts for every order, keyed by length."""
    counts = {k: Counter() for k in range(1, order + 1)}
    chars = set()
    n_lines = 0
    for line in corpus:
        line = line.rstrip("\n")
        n_lines += 1
        chars.update(line)
        syms = _pad(line, order, use_eos)
        for j in range(order - 1, len(syms)):
            for k in range(1, order + 1):
                counts[k][tuple(syms[j - k + 1:j + 1])] += 1
    return counts, chars, n_lines


def _continuation(counts, order):
    """N1+(. g): number of distinct left extensions of each lower-order n-gram."""
    cont = {order: counts[order]}
    for k in range(order - 1, 0, -1):
        c = Counter()
        for gram in counts[k + 1]:
            c[gram[1:]] += 1
        cont[k] = c
    return cont


def _by_history(table):
    totals = Counter()
    types = Counter()
    for gram, c in table.items():
        totals[gram[:-1]] += c
        types[gram[:-1]] += 1
    return totals, types


def _estimate_discount(table):
    coc = Counter(table.values())
    n1, n2 = coc.get(1, 0), coc.get(2, 0)
    if n1 == 0 or n2 == 0:
        return None
    return n1 / (n1 + 2 * n2)


def _log10(p):
    return math.log10(p) if p > 0 else NEG_INF


def train_char_lm(corpus: Iterable[str], order: int = 6,
                  smoothing: "Smoothing | str" = Smoothing.KNESER_NEY,
                  discount: "float | str" = 0.75, use_eos: bool = True) -> CharNGramLM:
    """Train a character model.

    ``discount`` is the Kneser-Ney absolute discount; pass ``"auto"`` to
    estimate ``n1 / (n1 + 2 n2)`` per order, in which case any order whose
    count-of-counts makes that undefined is smoothed with Witten-Bell.
    """
    if order < 1:
        raise InvalidOrder(f"order must be >= 1, got {order}")
    smoothing = Smoothing(smoothing)
    counts, chars, n_lines = _count(corpus, order, use_eos)
    if n_lines == 0:
        raise EmptyCorpus("language model training corpus is empty")
    vocab = set(chars) | {UNK}
    if use_eos:
        vocab.add(EOS)
    if vocab & {BOS}:
        raise ValueError("corpus contains reserved symbol text")  # pragma: no cover

    probs = {}
    backoffs = {}
    discounts = {}

    if smoothing is Smoothing.UNIFORM:
        lp = -math.log10(len(vocab))
        probs = {(w,): lp for w in vocab}
        return CharNGramLM(order, vocab, probs, backoffs, smoothing, use_eos, counts)

    if smoothing is Smoothing.MLE:
        for k in range(1, order + 1):
            totals, _ = _by_history(counts[k])
            for gram, c in counts[k].items():
                probs[gram] = math.log10(c / totals[gram[:-1]])
            if k > 1:
                for hist in totals:
                    backoffs[hist] = NEG_INF
        for w in vocab:
            probs.setdefault((w,), NEG_INF)
        return CharNGramLM(order, vocab, probs, backoffs, smoothing, use_eos, counts)

    # Interpolated modes.  Level k tables: KN uses continuation counts below
    # the top order, Witten-Bell uses raw counts throughout.
    kn = smoothing is Smoothing.KNESER_NEY
    tables = _continuation(counts, order) if kn else counts
    lower = {}  # probability at level k-1, keyed by ngram, linear domain
    uniform = 1.0 / len(vocab)
    for k in range(1, order + 1):
        table = tables[k]
        totals, types = _by_history(table)
        if kn:
            d = _estimate_discount(table) if discount == "auto" else float(discount)
            if d is not None and not 0.0 <= d < 1.0:
                raise ValueError(f"Kneser-Ney discount must be in [0, 1), got {d}")
        else:
            d = None
        discounts[k] = d
        level = {}

        def base(gram):
            if k == 1:
                return uniform
            return lower[gram[1:]]

        for gram, c in table.items():
            hist = gram[:-1]
            total, n_types = totals[hist], types[hist]
            if d is not None:
                p = (c - d) / total + d * n_types / total * base(gram)
            else:
                p = (c + n_types * base(gram)) / (total + n_types)
            level[gram] = p
        for hist in totals:
            total, n_types = totals[hist], types[hist]
            if d is not None:
                gamma = d * n_types / total
            else:
                gamma = n_types / (total + n_types)
            if k == 1:
                # unigram level interpolates with uniform: fold into explicit entries
                for w in vocab:
                    if (w,) not in level:
                        level[(w,)] = gamma * uniform
            else:
                backoffs[hist] = _log10(gamma)
        if k == 1 and not totals:
            level = {(w,): uniform for w in vocab}
        for gram, p in level.items():
            probs[gram] = _log10(p)
        lower = level

    return CharNGramLM(order, vocab, probs, backoffs, smoothing, use_eos, counts, discounts)


def sentence_logprob(lm: CharNGramLM, line: str) -> SentenceScore:
    total = 0.0
    n = 0
    for hist, tok in lm.events(line):
        total += lm.log10_prob(hist, tok)
        n += 1
    return SentenceScore(total, n)


def _corpus_totals(lm, corpus):
    total = 0.0
    n = 0
    lines = 0
    for line in corpus:
        s = sentence_logprob(lm, line.rstrip("\n"))
        total += s.total_log10_prob
        n += s.scored_tokens
        lines += 1
    if lines == 0:
        raise EmptyCorpus("scoring corpus is empty")
    return total, n


def corpus_score(lm: CharNGramLM, corpus: Iterable[str]) -> float:
    """Sum of sentence log10 probabilities divided by the scored events."""
    total, n = _corpus_totals(lm, corpus)
    return total / n if n else 0.0


def perplexity(lm: CharNGramLM, corpus: Iterable[str]) -> float:
    """``10 ** (-total_log10_prob / W)``, W counting every scored character event."""
    total, n = _corpus_totals(lm, corpus)
    if n == 0:
        return 1.0
    if lm.smoothing is Smoothing.UNIFORM:
        # every event has probability 1/V; avoid log/exp round-off
        return float(lm.alphabet_size)
    if total == NEG_INF:
        return math.inf
    return 10.0 ** (-total / n)


# -- ARPA -------------------------------------------------------------------

def _arpa_token(sym: str) -> str:
    if sym in RESERVED:
        return sym
    if sym.isspace() or sym in "<\\" or not sym.isprintable():
        return f"<U+{ord(sym):04X}>"
    return sym


def _arpa_symbol(tok: str) -> str:
    if tok in RESERVED:
        return tok
    if tok.startswith("<U+") and tok.endswith(">"):
        return chr(int(tok[3:-1], 16))
    if len(tok) != 1:
        raise FormatError(f"ARPA token {tok!r} is not a single character")
    return tok


def _fmt(x: float) -> str:
    if x == NEG_INF:
        return "-inf"
    return repr(x)


def dumps_arpa(lm: CharNGramLM) -> str:
    by_order = defaultdict(dict)
    for gram, lp in lm.probs.items():
        by_order[len(gram)][gram] = lp
    # histories need an entry to carry their backoff weight
    for hist in lm.backoffs:
        by_order[len(hist)].setdefault(hist, None)
    lines = [f"# wxspace char-lm order={lm.order} smoothing={lm.smoothing.value} "
             f"eos={'yes' if lm.use_eos else 'no'}",
             "# vocab " + " ".join(sorted(_arpa_token(w) for w in lm.vocab)),
             "", "\\data\\"]
    for k in range(1, lm.order + 1):
        lines.append(f"ngram {k}={len(by_order.get(k, {}))}")
    for k in range(1, lm.order + 1):
        lines.append("")
        lines.append(f"\\{k}-grams:")
        for gram in sorted(by_order.get(k, {})):
            lp = by_order[k][gram]
            fields = [_fmt(-99.0 if lp is None else lp), " ".join(_arpa_token(s) for s in gram)]
            if gram in lm.backoffs:
                fields.append(_fmt(lm.backoffs[gram]))
            lines.append("\t".join(fields))
    lines += ["", "\\end\\", ""]
    return "\n".join(lines)


def loads_arpa(text: str) -> CharNGramLM:
    lines = text.split("\n")
    meta = {}
    vocab = None
    declared = {}
    probs = {}
    backoffs = {}
    section = None
    saw_data = saw_end = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip("\n")
        if not line.strip():
            continue
        if line.startswith("# wxspace char-lm"):
            meta = dict(kv.partition("=")[::2] for kv in line.split()[3:])
            continue
        if line.startswith("# vocab"):
            vocab = {_arpa_symbol(t) for t in line.split()[2:]}
            continue
        if line.startswith("#"):
            continue
        if line == "\\data\\":
            saw_data = True
            section = "data"
            continue
        if line == "\\end\\":
            saw_end = True
            break
        if line.startswith("\\") and line.endswith("-grams:"):
            try:
                section = int(line[1:-len("-grams:")])
            except ValueError:
                raise FormatError(f"line {lineno}: bad section header") from None
            continue
        if section == "data":
            if not line.startswith("ngram "):
                raise FormatError(f"line {lineno}: expected 'ngram k=count'")
            k, _, c = line[6:].partition("=")
            try:
                declared[int(k)] = int(c)
            except ValueError:
                raise FormatError(f"line {lineno}: bad n-gram count {line!r}") from None
            continue
        if not isinstance(section, int):
            raise FormatError(f"line {lineno}: entry outside an n-gram section")
        fields = line.split("\t")
        if len(fields) not in (2, 3):
            raise FormatError(f"line {lineno}: expected 'log10prob<TAB>ngram[<TAB>backoff]'")
        try:
            lp = float(fields[0])
            gram = tuple(_arpa_symbol(t) for t in fields[1].split(" "))
            bo = float(fields[2]) if len(fields) == 3 else None
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if len(gram) != section:
            raise FormatError(f"line {lineno}: {len(gram)}-gram in the {section}-gram section")
        if not (gram[-1] == BOS and lp == -99.0):
            probs[gram] = lp
        if bo is not None:
            backoffs[gram] = bo
    if not saw_data or not saw_end:
        raise FormatError("not an ARPA file: missing \\data\\ or \\end\\")
    if not declared or not any(declared.values()):
        raise FormatError("ARPA model has no n-grams")
    order = max(declared)
    if vocab is None:
        vocab = {g[0] for g in probs if len(g) == 1}
    try:
        smoothing = Smoothing(meta.get("smoothing", Smoothing.KNESER_NEY.value))
    except ValueError:
        raise FormatError(f"unknown smoothing {meta.get('smoothing')!r}") from None
    return CharNGramLM(int(meta.get("order", order)), vocab, probs, backoffs, smoothing,
                       use_eos=meta.get("eos", "yes") == "yes")


def save_arpa(lm: CharNGramLM, path: "str | os.PathLike") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_arpa(lm))


def load_arpa(path: "str | os.PathLike") -> CharNGramLM:
    with open(path, encoding="utf-8") as fh:
        return loads_arpa(fh.read())
