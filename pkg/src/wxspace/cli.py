"""Command-line front end: ``wxspace <command> ...``.

Exit status is 0 on success, 1 for usage errors and 2 when the input data
is bad (missing files, misaligned corpora, malformed models).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .bpe import MARKER, apply_bpe, dumps_bpe, learn_bpe, load_bpe, undo_bpe
from .charlm import Smoothing, dumps_arpa, load_arpa, perplexity, sentence_logprob, train_char_lm
from .codec import EncodedText, Span, decode_with_diagnostics, detect_script, encode, restore
from .errors import DataError
from .evaluation import METRICS
from .pipeline import (ANALYSES, CorpusManifest, PipelineRun, analyze, evaluate_files,
                       manifest_corpora, postprocess, prepare)
from .scripts import TABLE_DIR_ENV, ScriptId
from .textio import atomic_write_text, read_lines, write_lines

log = logging.getLogger("wxspace")

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _input_lines(path) -> list[str]:
    if path in (None, "-"):
        data = sys.stdin.buffer.read().decode("utf-8").removeprefix("\ufeff")
        lines = data.replace("\r\n", "\n").split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        return lines
    return read_lines(path)


def _output(path, lines) -> None:
    if path in (None, "-"):
        out = sys.stdout
        for line in lines:
            out.write(line + "\n")
        out.flush()
    else:
        write_lines(path, lines)


def _script(name) -> ScriptId:
    try:
        return ScriptId.parse(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- codec ------------------------------------------------------------------------------

def cmd_encode(args) -> int:
    lines = _input_lines(args.input)
    if args.script == "auto":
        sample = "\n".join(lines[:1000])
        script, share = detect_script(sample)
        log.info("detected %s (%.0f%% of letters)", script.label, 100 * share)
    else:
        script = _script(args.script)
    if not script.invertible and not args.allow_lossy:
        raise UsageError(f"{script.label} cannot be decoded back from WX; pass --allow-lossy")
    wx, spans, n_diag = [], [], 0
    for lineno, line in enumerate(lines, 1):
        enc = encode(line, script)
        wx.append(enc.wx)
        spans.append(json.dumps([s.to_list() for s in enc.spans], separators=(",", ":")))
        for d in enc.diagnostics:
            n_diag += 1
            if args.verbose or n_diag <= 20:
                print(f"line {lineno}, col {d.offset}: {d.code}: {d.message}", file=sys.stderr)
    _output(args.output, wx)
    if args.spans:
        write_lines(args.spans, spans)
    if n_diag:
        print(f"{n_diag} diagnostic(s)", file=sys.stderr)
    return 0


def cmd_decode(args) -> int:
    script = _script(args.script)
    lines = _input_lines(args.input)
    out, n_diag = [], 0
    spans = None
    if args.spans:
        spans = [tuple(Span.from_list(s) for s in json.loads(l)) for l in read_lines(args.spans)]
        if len(spans) != len(lines):
            raise DataError(f"{args.spans} has {len(spans)} lines but the input has {len(lines)}")
    for lineno, line in enumerate(lines, 1):
        if spans is not None:
            out.append(restore(EncodedText(line, spans[lineno - 1], script)))
            continue
        text, diags = decode_with_diagnostics(line, script)
        out.append(text)
        for d in diags:
            n_diag += 1
            if args.verbose or n_diag <= 20:
                print(f"line {lineno}, col {d.offset}: {d.code}: {d.message}", file=sys.stderr)
    _output(args.output, out)
    if n_diag:
        print(f"{n_diag} diagnostic(s)", file=sys.stderr)
    return 0


# -- bpe -----------------------------------------------------------------------------

def cmd_bpe_learn(args) -> int:
    model = learn_bpe(_input_lines(args.input), merge_count=args.merges, vocab_cap=args.vocab_cap,
                      min_frequency=args.min_frequency)
    atomic_write_text(args.model, dumps_bpe(model))
    print(f"{len(model.merges)} merges, {len(model.vocab)} vocabulary entries -> {args.model}",
          file=sys.stderr)
    return 0


def cmd_bpe_apply(args) -> int:
    model = load_bpe(args.model)
    _output(args.output, (" ".join(apply_bpe(model, line)) for line in _input_lines(args.input)))
    return 0


def cmd_bpe_undo(args) -> int:
    marker = args.marker
    _output(args.output, (undo_bpe(line.split(), marker) for line in _input_lines(args.input)))
    return 0


# -- lm -------------------------------------------------------------------------------

def cmd_lm_train(args) -> int:
    discount = args.discount if args.discount == "auto" else float(args.discount)
    lm = train_char_lm(_input_lines(args.input), order=args.order, smoothing=args.smoothing,
                       discount=discount, use_eos=not args.no_eos)
    atomic_write_text(args.model, dumps_arpa(lm))
    print(f"order {lm.order} {lm.smoothing.value} model, {lm.alphabet_size} symbols -> {args.model}",
          file=sys.stderr)
    return 0


def cmd_lm_score(args) -> int:
    lm = load_arpa(args.model)
    total = n = 0
    rows = []
    for line in _input_lines(args.input):
        s = sentence_logprob(lm, line)
        total += s.total_log10_prob
        n += s.scored_tokens
        rows.append(f"{s.total_log10_prob:.6f}\t{s.scored_tokens}")
    _output(args.output, rows)
    avg = total / n if n else 0.0
    print(f"total log10 prob {total:.6f} over {n} events, average {avg:.6f}", file=sys.stderr)
    return 0


def cmd_lm_ppl(args) -> int:
    lm = load_arpa(args.model)
    pp = perplexity(lm, _input_lines(args.input))
    print(json.dumps({"perplexity": pp, "order": lm.order, "smoothing": lm.smoothing.value}))
    return 0


# -- pipeline -------------------------------------------------------------------------

def _lang_file(spec: str):
    lang, sep, path = spec.partition("=")
    if not sep or not lang or not path:
        raise UsageError(f"expected LANG=FILE, got {spec!r}")
    return lang, path


def cmd_analyze(args) -> int:
    which = args.which.split(",") if args.which else list(ANALYSES)
    bad = set(which) - set(ANALYSES)
    if bad:
        raise UsageError(f"unknown analysis {', '.join(sorted(bad))}; choose from {', '.join(ANALYSES)}")
    order = args.order
    if args.manifest:
        manifest = CorpusManifest.load(args.manifest)
        corpora, scripts, parallel = manifest_corpora(manifest)
        order = order or manifest.options["lm_order"]
    else:
        if not args.corpus:
            raise UsageError("give --manifest or at least one --corpus LANG=FILE")
        corpora, scripts, parallel = {}, {}, {}
        for spec in args.corpus:
            lang, path = _lang_file(spec)
            corpora[lang] = read_lines(path)
        for spec in args.script or ():
            lang, name = _lang_file(spec)
            if lang not in corpora:
                raise UsageError(f"--script for unknown language {lang!r}")
            scripts[lang] = _script(name)
        for spec in args.parallel or ():
            a, _, b = spec.partition(",")
            if a not in corpora or b not in corpora:
                raise UsageError(f"--parallel needs two known languages, got {spec!r}")
            parallel[f"{a}-{b}"] = (corpora[a], corpora[b])
    needs_two = {"ssnglm", "perplexity"} & set(which)
    if needs_two and len(corpora) < 2:
        raise UsageError(f"{', '.join(sorted(needs_two))} need at least two languages")
    written = analyze(corpora, args.out, which, scripts=scripts, parallel=parallel,
                      order=order or 6, max_lines=args.max_lines)
    print(json.dumps(written, indent=1))
    return 0


def cmd_evaluate(args) -> int:
    metrics = args.metrics.split(",")
    bad = set(metrics) - METRICS.keys()
    if bad:
        raise UsageError(f"unknown metric(s) {', '.join(sorted(bad))}; choose from {', '.join(METRICS)}")
    records = evaluate_files(args.hyp, args.ref, metrics, signature=args.signature)
    _output(args.output, (json.dumps(r, ensure_ascii=False) for r in records))
    return 0


def cmd_prepare(args) -> int:
    overrides = {"output_dir": args.output_dir, "merge_count": args.merges,
                 "joint_bpe": True if args.joint else None,
                 "allow_lossy": True if args.allow_lossy else None}
    run = prepare(CorpusManifest.load(args.manifest, **overrides))
    print(f"run {run.run_id}: {len(run.outputs)} files in {run.output_dir}, "
          f"{run.issue_count} diagnostic(s)", file=sys.stderr)
    print(run.output_dir / "run.json")
    return 0


def cmd_postprocess(args) -> int:
    run = PipelineRun.load(args.run) if args.run else None
    if run is None and not args.script:
        raise UsageError("give --run or --script")
    report = postprocess(args.hyp, args.output, target_script=args.script, run=run,
                         pair=args.pair, split=args.split)
    print(json.dumps(report.to_json(), ensure_ascii=False, indent=1))
    return 0


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wxspace", description="Project Indic scripts into WX, learn subwords, "
                "and measure cross-lingual similarity.",
                epilog=f"Set {TABLE_DIR_ENV} to load script tables from another directory.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log more detail")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io(sp, out=True):
        sp.add_argument("-i", "--input", default="-", help="input file (default: stdin)")
        if out:
            sp.add_argument("-o", "--output", default="-", help="output file (default: stdout)")

    sp = sub.add_parser("encode", help="native script -> WX")
    sp.add_argument("-s", "--script", required=True, help="source script, or 'auto' to detect")
    sp.add_argument("--spans", help="also write per-line span annotations (JSON lines)")
    sp.add_argument("--allow-lossy", action="store_true", help="accept one-way (PersoArabic) encoding")
    io(sp)
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="WX -> native script")
    sp.add_argument("-s", "--script", required=True)
    sp.add_argument("--spans", help="span file from 'encode --spans' for exact restoration")
    io(sp)
    sp.set_defaults(func=cmd_decode)

    bpe = sub.add_parser("bpe", help="byte-pair-encoding subwords")
    bsub = bpe.add_subparsers(dest="bpe_command", required=True, parser_class=_Parser)
    sp = bsub.add_parser("learn", help="learn merges from a corpus")
    sp.add_argument("-m", "--model", required=True, help="model file to write")
    sp.add_argument("--merges", type=int, default=5000)
    sp.add_argument("--vocab-cap", type=int, default=5000)
    sp.add_argument("--min-frequency", type=int, default=2)
    io(sp, out=False)
    sp.set_defaults(func=cmd_bpe_learn)
    sp = bsub.add_parser("apply", help="segment text into subword tokens")
    sp.add_argument("-m", "--model", required=True)
    io(sp)
    sp.set_defaults(func=cmd_bpe_apply)
    sp = bsub.add_parser("undo", help="join subword tokens back into words")
    sp.add_argument("--marker", default=MARKER, help="word-boundary marker (default U+2581)")
    io(sp)
    sp.set_defaults(func=cmd_bpe_undo)

    lm = sub.add_parser("lm", help="character n-gram language models")
    lsub = lm.add_subparsers(dest="lm_command", required=True, parser_class=_Parser)
    sp = lsub.add_parser("train", help="train and write an ARPA file")
    sp.add_argument("-m", "--model", required=True)
    sp.add_argument("--order", type=int, default=6)
    sp.add_argument("--smoothing", choices=[s.value for s in Smoothing], default="kneser_ney")
    sp.add_argument("--discount", default="0.75", help="Kneser-Ney discount or 'auto'")
    sp.add_argument("--no-eos", action="store_true", help="do not model the end of sentence")
    io(sp, out=False)
    sp.set_defaults(func=cmd_lm_train)
    sp = lsub.add_parser("score", help="per-line log10 probabilities")
    sp.add_argument("-m", "--model", required=True)
    io(sp)
    sp.set_defaults(func=cmd_lm_score)
    sp = lsub.add_parser("ppl", help="corpus perplexity")
    sp.add_argument("-m", "--model", required=True)
    io(sp, out=False)
    sp.set_defaults(func=cmd_lm_ppl)

    sp = sub.add_parser("analyze", help="entropy, redundancy and similarity reports")
    sp.add_argument("--manifest", help="take corpora from a pipeline manifest")
    sp.add_argument("--corpus", action="append", metavar="LANG=FILE")
    sp.add_argument("--script", action="append", metavar="LANG=SCRIPT",
                    help="project LANG into WX from SCRIPT before analysis")
    sp.add_argument("--parallel", action="append", metavar="LANG1,LANG2",
                    help="line-aligned languages to compare with surface metrics")
    sp.add_argument("--which", help=f"comma list from {','.join(ANALYSES)} (default: all)")
    sp.add_argument("--order", type=int, help="language model order (default: the manifest's lm_order, else 6)")
    sp.add_argument("--max-lines", type=int, help="only read this many lines per corpus")
    sp.add_argument("-o", "--out", required=True, help="report directory")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("evaluate", help="score hypotheses against references")
    sp.add_argument("--hyp", required=True)
    sp.add_argument("--ref", required=True)
    sp.add_argument("--metrics", default="bleu,chrf2,ter,wer")
    sp.add_argument("--signature", action="store_true", help="record metric parameters")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("prepare", help="encode, learn BPE and tokenise a manifest's corpora")
    sp.add_argument("manifest")
    sp.add_argument("--output-dir")
    sp.add_argument("--merges", type=int)
    sp.add_argument("--joint", action="store_true", help="one BPE model per pair")
    sp.add_argument("--allow-lossy", action="store_true")
    sp.set_defaults(func=cmd_prepare)

    sp = sub.add_parser("postprocess", help="join BPE hypotheses and decode to native script")
    sp.add_argument("--hyp", required=True)
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--run", help="run.json (or its directory) written by prepare")
    sp.add_argument("--pair", help="pair name when the run has several")
    sp.add_argument("--split", default="test")
    sp.add_argument("-s", "--script", help="target script (taken from the run if omitted)")
    sp.set_defaults(func=cmd_postprocess)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wxspace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"wxspace: error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_DATA
    except (DataError, ValueError, UnicodeDecodeError) as exc:
        print(f"wxspace: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
