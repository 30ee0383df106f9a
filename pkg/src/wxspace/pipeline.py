"""End-to-end corpus plumbing around an external translation trainer.

``prepare`` turns native-script parallel corpora into WX text, learns BPE
models and writes subword token files.  Whatever trainer consumes those
files returns token hypotheses, which ``postprocess`` joins and decodes
back to native script.  ``analyze`` and ``evaluate`` wrap the analysis and
metric modules with file I/O.

A manifest is a TOML file::

    [options]
    output_dir = "out"          # relative to the manifest
    merge_count = 5000
    joint_bpe = false

    [[pairs]]
    source_lang = "ne"
    target_lang = "hi"
    source_script = "devanagari"
    target_script = "devanagari"
    train = { source = "train.ne", target = "train.hi" }
    valid = { source = "dev.ne", target = "dev.hi" }
    test = { source = "test.ne", target = "test.hi" }

Every input line is whitespace-normalised (runs collapsed to one space,
ends trimmed) before encoding, because BPE tokens cannot carry the
original spacing.
"""
from __future__ import annotations

import datetime as _dt
import hashlib
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import __version__
from .analysis import (entropy_report, pairwise_surface_similarity, perplexity_matrix,
                       save_matrix, ssnglm_matrix)
from .bpe import apply_bpe, dumps_bpe, learn_bpe, load_bpe, undo_bpe
from .codec import PASSTHROUGH, EncodedText, Span, decode, encode, restore, validate_wx
from .errors import AlignmentMismatch, EmptyCorpus, ManifestError, NonInvertibleScript
from .evaluation import METRICS
from .scripts import ScriptId
from .textio import atomic_write_text, normalize_whitespace, read_lines, write_lines

log = logging.getLogger(__name__)

SPLITS = ("train", "valid", "test")
SIDES = ("source", "target")
RUN_RECORD = "run.json"
MAX_RECORDED_ISSUES = 100

OPTION_DEFAULTS = {
    "output_dir": "wxspace-out",
    "merge_count": 5000,
    "vocab_cap": 5000,
    "min_frequency": 2,
    "lm_order": 6,
    "joint_bpe": False,
    "allow_lossy": False,
}
_INT_OPTIONS = ("merge_count", "vocab_cap", "min_frequency", "lm_order")
_BOOL_OPTIONS = ("joint_bpe", "allow_lossy")
_PAIR_KEYS = {"source_lang", "target_lang", "source_script", "target_script", "bpe_from", *SPLITS}


# -- manifest -----------------------------------------------------------------------

@dataclass(frozen=True)
class PairSpec:
    source_lang: str
    target_lang: str
    source_script: ScriptId
    target_script: ScriptId
    splits: Mapping[str, Mapping[str, Path]]  # split -> side -> file
    bpe_from: str | None = None

    @property
    def name(self) -> str:
        return f"{self.source_lang}-{self.target_lang}"

    def lang(self, side: str) -> str:
        return self.source_lang if side == "source" else self.target_lang

    def script(self, side: str) -> ScriptId:
        return self.source_script if side == "source" else self.target_script


def _parse_pair(n: int, raw: Mapping, base: Path) -> PairSpec:
    bad = set(raw) - _PAIR_KEYS
    if bad:
        raise ManifestError(f"pair {n}: unknown key(s) {', '.join(sorted(bad))}")
    try:
        src, tgt = str(raw["source_lang"]), str(raw["target_lang"])
        scripts = [ScriptId.parse(raw[k]) for k in ("source_script", "target_script")]
    except KeyError as exc:
        raise ManifestError(f"pair {n}: missing {exc.args[0]}") from None
    except ValueError as exc:
        raise ManifestError(f"pair {n}: {exc}") from None
    if src == tgt:
        raise ManifestError(f"pair {n}: source and target language are both {src!r}")
    splits = {}
    for split in SPLITS:
        entry = raw.get(split)
        if entry is None:
            continue
        if not isinstance(entry, Mapping) or set(entry) != set(SIDES):
            raise ManifestError(f"pair {n}: split {split!r} needs exactly 'source' and 'target' paths")
        splits[split] = {side: base / entry[side] for side in SIDES}
    if not splits:
        raise ManifestError(f"pair {n}: no splits given")
    return PairSpec(src, tgt, scripts[0], scripts[1], splits, raw.get("bpe_from"))


@dataclass(frozen=True)
class CorpusManifest:
    pairs: tuple[PairSpec, ...]
    options: Mapping[str, object]
    base_dir: Path

    @property
    def output_dir(self) -> Path:
        return (self.base_dir / str(self.options["output_dir"])).resolve()

    @classmethod
    def from_dict(cls, data: Mapping, base_dir: "str | os.PathLike" = ".",
                  overrides: Mapping | None = None) -> "CorpusManifest":
        base = Path(base_dir)
        unknown = set(data) - {"options", "pairs"}
        if unknown:
            raise ManifestError(f"unknown manifest section(s): {', '.join(sorted(unknown))}")
        raw_opts = dict(data.get("options", {}))
        bad = set(raw_opts) - set(OPTION_DEFAULTS)
        if bad:
            raise ManifestError(f"unknown option(s): {', '.join(sorted(bad))}")
        options = {**OPTION_DEFAULTS, **raw_opts,
                   **{k: v for k, v in (overrides or {}).items() if v is not None}}
        for key in _INT_OPTIONS:
            v = options[key]
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ManifestError(f"option {key} must be a positive integer, got {v!r}")
        for key in _BOOL_OPTIONS:
            if not isinstance(options[key], bool):
                raise ManifestError(f"option {key} must be true or false")

        raw_pairs = data.get("pairs")
        if not raw_pairs:
            raise ManifestError("manifest declares no pairs")
        pairs = tuple(_parse_pair(n, raw, base) for n, raw in enumerate(raw_pairs, 1))
        names = {p.name: p for p in pairs}
        if len(names) != len(pairs):
            raise ManifestError("pair names (source-target) must be unique")
        for p in pairs:
            if p.bpe_from is not None:
                donor = names.get(p.bpe_from)
                if donor is None or donor is p:
                    raise ManifestError(f"pair {p.name}: bpe_from must name another pair, got {p.bpe_from!r}")
                if donor.bpe_from is not None:
                    raise ManifestError(f"pair {p.name}: bpe_from {donor.name!r} borrows its models too")
            if not options["allow_lossy"]:
                for s in (p.source_script, p.target_script):
                    if not s.invertible:
                        raise ManifestError(f"pair {p.name}: {s.label} cannot be restored from WX; "
                                            "set allow_lossy = true to accept a one-way projection")
        return cls(pairs, options, base)

    @classmethod
    def load(cls, path: "str | os.PathLike", **overrides) -> "CorpusManifest":
        path = Path(path)
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except FileNotFoundError:
            raise ManifestError(f"manifest not found: {path}") from None
        except tomllib.TOMLDecodeError as exc:
            raise ManifestError(f"{path}: {exc}") from None
        return cls.from_dict(data, path.parent, overrides)

    def pair(self, name: str) -> PairSpec:
        for p in self.pairs:
            if p.name == name:
                return p
        raise ManifestError(f"no pair {name!r}; manifest has {', '.join(p.name for p in self.pairs)}")

    def validate_files(self) -> dict[tuple[str, str], int]:
        """Check every split exists and is aligned; returns line counts."""
        counts = {}
        for p in self.pairs:
            for split, files in p.splits.items():
                lens = []
                for side in SIDES:
                    if not files[side].is_file():
                        raise ManifestError(f"pair {p.name}: {split} {side} file not found: {files[side]}")
                    lens.append(len(read_lines(files[side])))
                if lens[0] != lens[1]:
                    raise AlignmentMismatch(
                        f"pair {p.name}, {split}: {files['source']} has {lens[0]} lines "
                        f"but {files['target']} has {lens[1]}")
                counts[(p.name, split)] = lens[0]
        return counts


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def settings_hash(manifest: CorpusManifest) -> str:
    """Hash of the options, pair layout and input file contents.

    Paths enter only by file name, so moving the corpus directory keeps
    the hash.
    """
    canon = {
        "version": __version__,
        "options": {k: v for k, v in sorted(manifest.options.items()) if k != "output_dir"},
        "pairs": [{
            "name": p.name,
            "scripts": [p.source_script.label, p.target_script.label],
            "bpe_from": p.bpe_from,
            "splits": {split: {side: [f.name, _file_digest(f)] for side, f in files.items()}
                       for split, files in sorted(p.splits.items())},
        } for p in manifest.pairs],
    }
    blob = json.dumps(canon, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the clock so run records can be reproduced byte for byte
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = (_dt.datetime.fromtimestamp(int(epoch), _dt.timezone.utc) if epoch
              else _dt.datetime.now(_dt.timezone.utc))
    return moment.replace(microsecond=0).isoformat()


# -- run record -------------------------------------------------------------------

@dataclass
class PipelineRun:
    run_id: str
    settings_hash: str
    output_dir: Path
    outputs: dict[str, str] = field(default_factory=dict)
    pairs: dict[str, dict] = field(default_factory=dict)
    issues: list[dict] = field(default_factory=list)
    issue_count: int = 0
    provenance: dict = field(default_factory=dict)

    def record(self, key: str, path: Path) -> Path:
        self.outputs[key] = Path(os.path.relpath(path, self.output_dir)).as_posix()
        return path

    def path(self, key: str) -> Path:
        try:
            return self.output_dir / self.outputs[key]
        except KeyError:
            raise ManifestError(f"run {self.run_id} has no output {key!r}") from None

    def flag(self, **issue) -> None:
        self.issue_count += 1
        if len(self.issues) < MAX_RECORDED_ISSUES:
            self.issues.append(issue)

    def to_json(self) -> dict:
        return {"run_id": self.run_id, "settings_hash": self.settings_hash,
                "provenance": self.provenance, "pairs": self.pairs,
                "outputs": dict(sorted(self.outputs.items())),
                "issue_count": self.issue_count, "issues": self.issues}

    def save(self) -> Path:
        return atomic_write_text(self.output_dir / RUN_RECORD,
                                 json.dumps(self.to_json(), ensure_ascii=False, indent=1) + "\n")

    @classmethod
    def load(cls, path: "str | os.PathLike") -> "PipelineRun":
        path = Path(path)
        if path.is_dir():
            path = path / RUN_RECORD
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            return cls(data["run_id"], data["settings_hash"], path.parent.resolve(),
                       dict(data["outputs"]), dict(data.get("pairs", {})),
                       list(data.get("issues", [])), int(data.get("issue_count", 0)),
                       dict(data.get("provenance", {})))
        except FileNotFoundError:
            raise ManifestError(f"run record not found: {path}") from None
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ManifestError(f"{path}: not a run record ({exc})") from None


def output_key(pair: str, split: str, side: str, kind: str) -> str:
    return f"{pair}/{split}/{side}/{kind}"


# -- prepare ------------------------------------------------------------------------

def _encode_file(run: PipelineRun, pair: PairSpec, split: str, side: str) -> list[str]:
    src = pair.splits[split][side]
    script = pair.script(side)
    out_dir = run.output_dir / pair.name
    stem = f"{split}.{pair.lang(side)}"
    wx_lines, span_lines = [], []
    for lineno, raw in enumerate(read_lines(src), 1):
        enc = encode(normalize_whitespace(raw), script)
        wx_lines.append(enc.wx)
        span_lines.append(json.dumps([s.to_list() for s in enc.spans], separators=(",", ":")))
        for d in enc.diagnostics:
            run.flag(stage="prepare", file=str(src), line=lineno, column=d.offset,
                     code=d.code, message=d.message)
    run.record(output_key(pair.name, split, side, "wx"), write_lines(out_dir / f"{stem}.wx", wx_lines))
    run.record(output_key(pair.name, split, side, "spans"),
               write_lines(out_dir / f"{stem}.spans.jsonl", span_lines))
    return wx_lines


def prepare(manifest: CorpusManifest) -> PipelineRun:
    """Encode, learn BPE and tokenise every split of every pair.

    BPE is learned on the training split; a pair with no training lines
    learns it on its first non-empty split unless ``bpe_from`` names a
    pair whose models it should reuse.
    """
    counts = manifest.validate_files()
    digest = settings_hash(manifest)
    run = PipelineRun(run_id=digest[:12], settings_hash=digest, output_dir=manifest.output_dir)
    run.provenance = {"tool": "wxspace", "version": __version__, "started": _timestamp(),
                      "options": {k: v for k, v in manifest.options.items() if k != "output_dir"}}
    opts = manifest.options
    bpe_settings = {k: opts[k] for k in ("merge_count", "vocab_cap", "min_frequency")}
    models: dict[str, dict[str, str]] = {}  # pair -> side -> output key of its BPE model

    # donors first so borrowers find their models
    for pair in sorted(manifest.pairs, key=lambda p: p.bpe_from is not None):
        pair_dir = run.output_dir / pair.name
        wx = {(split, side): _encode_file(run, pair, split, side)
              for split in SPLITS if split in pair.splits for side in SIDES}

        learned_on = None
        if pair.bpe_from is not None:
            models[pair.name] = models[pair.bpe_from]
        else:
            learned_on = next((s for s in SPLITS if counts.get((pair.name, s), 0) > 0), None)
            if learned_on is None:
                raise EmptyCorpus(f"pair {pair.name}: every split is empty, nothing to learn BPE from")
            if learned_on != "train":
                log.warning("pair %s has no training lines; learning BPE on %s", pair.name, learned_on)
            if opts["joint_bpe"]:
                model = learn_bpe(wx[(learned_on, "source")] + wx[(learned_on, "target")], **bpe_settings)
                key = f"{pair.name}/bpe/joint"
                run.record(key, atomic_write_text(pair_dir / "bpe.joint.model", dumps_bpe(model)))
                models[pair.name] = {"source": key, "target": key}
            else:
                models[pair.name] = {}
                for side in SIDES:
                    model = learn_bpe(wx[(learned_on, side)], **bpe_settings)
                    key = f"{pair.name}/bpe/{side}"
                    path = pair_dir / f"bpe.{pair.lang(side)}.model"
                    run.record(key, atomic_write_text(path, dumps_bpe(model)))
                    models[pair.name][side] = key

        loaded = {side: load_bpe(run.path(key)) for side, key in models[pair.name].items()}
        for (split, side), lines in wx.items():
            tokens = [" ".join(apply_bpe(loaded[side], line)) for line in lines]
            path = pair_dir / f"{split}.{pair.lang(side)}.bpe"
            run.record(output_key(pair.name, split, side, "bpe"), write_lines(path, tokens))
        run.pairs[pair.name] = {
            "source_lang": pair.source_lang, "target_lang": pair.target_lang,
            "source_script": pair.source_script.label, "target_script": pair.target_script.label,
            "lines": {s: counts[(pair.name, s)] for s in SPLITS if s in pair.splits},
            "bpe_models": models[pair.name], "bpe_learned_on": learned_on,
            "bpe_from": pair.bpe_from,
        }
    run.provenance["finished"] = _timestamp()
    run.save()
    return run


# -- postprocess --------------------------------------------------------------------

@dataclass
class PostprocessReport:
    output: Path
    lines: int
    restored_from_spans: int
    flagged: list[dict]

    def to_json(self) -> dict:
        return {"output": str(self.output), "lines": self.lines,
                "restored_from_spans": self.restored_from_spans,
                "flagged_count": len(self.flagged), "flagged": self.flagged[:MAX_RECORDED_ISSUES]}


def _load_spans(path: Path) -> list[tuple[Span, ...]]:
    return [tuple(Span.from_list(s) for s in json.loads(line)) for line in read_lines(path)]


def _passthrough_words(wx: str, spans: Sequence[Span]) -> set[str]:
    words = set()
    for s in spans:
        if s.kind == PASSTHROUGH:
            words.update(wx[s.start:s.end].split())
    return words


def _decode_line(wx: str, script: ScriptId, keep: set[str]) -> tuple[str, list]:
    """Decode word by word, copying *keep* words verbatim."""
    out, problems = [], []
    for word in wx.split(" "):
        if word in keep:
            out.append(word)
            continue
        problems.extend(validate_wx(word, script))
        out.append(decode(word, script))
    return " ".join(out), problems


def postprocess(hypotheses: "str | os.PathLike", output: "str | os.PathLike",
                target_script: "ScriptId | str | None" = None, run: "PipelineRun | None" = None,
                pair: str | None = None, split: str = "test") -> PostprocessReport:
    """Join BPE tokens and decode WX hypotheses to native script.

    With a run record, each hypothesis line that reproduces the prepared
    target WX line is restored exactly from its spans, and Latin words that
    were passed through on either side of that line are kept verbatim in
    other hypotheses.  A line that does not validate as WX is written out
    unchanged and reported; the run carries on.
    """
    wx_ref = spans_ref = None
    keep_by_line: list[set[str]] = []
    if run is not None:
        if pair is None:
            if len(run.pairs) != 1:
                raise ManifestError(f"run has pairs {', '.join(run.pairs)}; choose one")
            pair = next(iter(run.pairs))
        info = run.pairs.get(pair)
        if info is None:
            raise ManifestError(f"run has no pair {pair!r}")
        if target_script is None:
            target_script = info["target_script"]
        key = output_key(pair, split, "target", "wx")
        if key in run.outputs:
            wx_ref = read_lines(run.path(key))
            spans_ref = _load_spans(run.path(output_key(pair, split, "target", "spans")))
            keep_by_line = [_passthrough_words(w, s) for w, s in zip(wx_ref, spans_ref)]
            src_key = output_key(pair, split, "source", "wx")
            if src_key in run.outputs:
                src_wx = read_lines(run.path(src_key))
                src_spans = _load_spans(run.path(output_key(pair, split, "source", "spans")))
                for keep, w, s in zip(keep_by_line, src_wx, src_spans):
                    keep |= _passthrough_words(w, s)
    if target_script is None:
        raise ValueError("target script is required without a run record")
    script = ScriptId.parse(target_script)
    if not script.invertible:
        raise NonInvertibleScript(f"{script.label} cannot be decoded from WX")

    out_lines, flagged = [], []
    restored = 0
    for i, line in enumerate(read_lines(hypotheses)):
        wx = normalize_whitespace(undo_bpe(line.split()))
        if wx_ref is not None and i < len(wx_ref) and wx == wx_ref[i]:
            out_lines.append(restore(EncodedText(wx, spans_ref[i], script)))
            restored += 1
            continue
        keep = keep_by_line[i] if i < len(keep_by_line) else set()
        text, problems = _decode_line(wx, script, keep)
        if problems:
            flagged.append({"line": i + 1, "wx": wx,
                            "problems": [{"column": d.offset, "code": d.code, "message": d.message}
                                         for d in problems[:5]]})
            text = wx
        out_lines.append(text)
    if wx_ref is not None and len(out_lines) != len(wx_ref):
        log.warning("hypotheses have %d lines, prepared %s split has %d",
                    len(out_lines), split, len(wx_ref))
    write_lines(output, out_lines)
    report = PostprocessReport(Path(output), len(out_lines), restored, flagged)
    if flagged:
        log.warning("%d line(s) could not be decoded and were kept as WX", len(flagged))
    return report


# -- analyze ------------------------------------------------------------------------

ANALYSES = ("entropy", "redundancy", "ssnglm", "perplexity", "surface")


def _write_json(path: Path, data) -> Path:
    return atomic_write_text(path, json.dumps(data, ensure_ascii=False, indent=1) + "\n")


def analyze(corpora: Mapping[str, Sequence[str]], out_dir: "str | os.PathLike",
            which: Sequence[str] = ANALYSES, scripts: Mapping[str, "ScriptId | str"] | None = None,
            parallel: Mapping[str, tuple[Sequence[str], Sequence[str]]] | None = None,
            order: int = 6, max_lines: int | None = None) -> dict[str, str]:
    """Write analysis reports for monolingual corpora keyed by language.

    Languages listed in *scripts* are projected into WX first; their
    entropy report then also holds the raw-script figures and the
    difference.  Similarity matrices are computed in WX space.  *parallel*
    maps a name to two line lists compared with the surface metrics (both
    are projected with the scripts of their languages when the name is
    ``"src-tgt"`` and both languages have scripts).
    """
    unknown = set(which) - set(ANALYSES)
    if unknown:
        raise ValueError(f"unknown analysis {', '.join(sorted(unknown))}; choose from {', '.join(ANALYSES)}")
    out = Path(out_dir)
    scripts = {lang: ScriptId.parse(s) for lang, s in (scripts or {}).items()}

    def to_wx(lang, lines):
        lines = [normalize_whitespace(l) for l in lines[:max_lines] if l.strip()]
        if lang in scripts:
            lines = [encode(l, scripts[lang]).wx for l in lines]
        return lines

    wx = {lang: to_wx(lang, list(lines)) for lang, lines in corpora.items()}
    written = {}

    if "entropy" in which or "redundancy" in which:
        records = {}
        for lang, lines in corpora.items():
            lines = list(lines)[:max_lines]
            rec = {"wx": entropy_report(wx[lang]).to_json()}
            if lang in scripts:
                raw = entropy_report(lines).to_json()
                rec["raw"] = raw
                rec["difference"] = raw["corpus_char_entropy"] - rec["wx"]["corpus_char_entropy"]
                rec["script"] = scripts[lang].label
            records[lang] = rec
        if "entropy" in which:
            written["entropy"] = str(_write_json(out / "entropy.json", records))
            rows = ["language\traw_entropy\twx_entropy\tdifference\tword_max\tword_median\tword_average"]
            for lang, rec in records.items():
                w = rec["wx"]
                raw_h = rec.get("raw", {}).get("corpus_char_entropy")
                diff = rec.get("difference")
                pw = w["per_word_entropy"]
                rows.append("\t".join([lang, _num(raw_h), _num(w["corpus_char_entropy"]), _num(diff),
                                       _num(pw["max"]), _num(pw["median"]), _num(pw["average"])]))
            written["entropy_tsv"] = str(atomic_write_text(out / "entropy.tsv", "\n".join(rows) + "\n"))
        if "redundancy" in which:
            rows = ["language\traw_redundancy\twx_redundancy\traw_alphabet\twx_alphabet"]
            for lang, rec in records.items():
                raw = rec.get("raw", {})
                rows.append("\t".join([lang, _num(raw.get("redundancy")), _num(rec["wx"]["redundancy"]),
                                       str(raw.get("alphabet_size", "-")), str(rec["wx"]["alphabet_size"])]))
            written["redundancy"] = str(atomic_write_text(out / "redundancy.tsv", "\n".join(rows) + "\n"))

    if "ssnglm" in which:
        m = ssnglm_matrix(wx, order=order)
        tsv, js = save_matrix(m, out / "ssnglm")
        written["ssnglm"] = js
    if "perplexity" in which:
        for sym, stem in ((False, "perplexity_raw"), (True, "perplexity_symmetric")):
            m = perplexity_matrix(wx, order=order, symmetrize=sym)
            written[stem] = save_matrix(m, out / stem)[1]
    if "surface" in which and parallel:
        surface = {}
        for name, (hyp, ref) in parallel.items():
            langs = name.split("-", 1)
            hyp, ref = list(hyp)[:max_lines], list(ref)[:max_lines]
            if len(langs) == 2:
                hyp, ref = to_wx(langs[0], hyp), to_wx(langs[1], ref)
            surface[name] = pairwise_surface_similarity(hyp, ref).to_json()
        written["surface"] = str(_write_json(out / "surface.json", surface))
    return written


def _num(x) -> str:
    return "-" if x is None else f"{x:.6f}"


def manifest_corpora(manifest: CorpusManifest):
    """Monolingual corpora, scripts and parallel sides taken from a manifest.

    Each language contributes the first non-empty split it appears in,
    preferring training data.
    """
    corpora, scripts, parallel = {}, {}, {}
    for pair in manifest.pairs:
        split = next((s for s in SPLITS if s in pair.splits and read_lines(pair.splits[s]["source"])), None)
        if split is None:
            continue
        sides = {side: read_lines(pair.splits[split][side]) for side in SIDES}
        for side in SIDES:
            corpora.setdefault(pair.lang(side), sides[side])
            scripts.setdefault(pair.lang(side), pair.script(side))
        parallel[pair.name] = (sides["source"], sides["target"])
    return corpora, scripts, parallel


# -- evaluate -----------------------------------------------------------------------

def metric_signature(result) -> str:
    d = result.details
    parts = [f"metric:{result.metric}", "tok:whitespace", f"version:{__version__}"]
    for key in ("max_order", "mode", "char_order", "beta", "max_shift_distance", "max_shift_size"):
        if key in d:
            parts.append(f"{key}:{d[key]}")
    return "|".join(parts)


def evaluate_files(hypotheses: "str | os.PathLike", references: "str | os.PathLike",
                   metrics: Sequence[str] = ("bleu", "chrf2", "ter", "wer"),
                   signature: bool = False) -> list[dict]:
    unknown = set(metrics) - METRICS.keys()
    if unknown:
        raise ValueError(f"unknown metric(s): {', '.join(sorted(unknown))}")
    hyp_lines = read_lines(hypotheses)
    ref_lines = read_lines(references)
    if len(hyp_lines) != len(ref_lines):
        raise AlignmentMismatch(f"{hypotheses} has {len(hyp_lines)} lines but "
                                f"{references} has {len(ref_lines)}")
    records = []
    for name in metrics:
        result = METRICS[name](hyp_lines, ref_lines)
        rec = result.to_json()
        if signature:
            rec["signature"] = metric_signature(result)
        records.append(rec)
    return records
