import io
import json
import sys

import pytest

from wxspace.cli import main
from wxspace.textio import read_lines


def write(path, lines):
    path.write_text("".join(l + "\n" for l in lines), encoding="utf-8")
    return str(path)


def feed_stdin(monkeypatch, text):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(text.encode("utf-8")), encoding="utf-8"))


def test_encode_and_decode_through_files(workdir, capsys):
    src = write(workdir / "in.txt", ["आज रविवार है", "ॐ"])
    assert main(["encode", "-s", "hindi", "-i", src, "-o", "wx.txt", "--spans", "spans.jsonl"]) == 0
    assert read_lines(workdir / "wx.txt") == ["Aja ravivAra hE", "ॐ"]
    assert "1 diagnostic(s)" in capsys.readouterr().err
    assert main(["decode", "-s", "devanagari", "-i", "wx.txt", "--spans", "spans.jsonl", "-o", "back.txt"]) == 0
    assert read_lines(workdir / "back.txt") == ["आज रविवार है", "ॐ"]


def test_encode_from_stdin_with_detection(workdir, capsys, monkeypatch):
    feed_stdin(monkeypatch, "ਪੰਜਾਬੀ ਭਾਸ਼ਾ\n")
    assert main(["encode", "-s", "auto"]) == 0
    assert capsys.readouterr().out == "paMjAbI BAsZA\n"


def test_decode_reports_bad_wx(workdir, capsys, monkeypatch):
    feed_stdin(monkeypatch, "ravivAra\nZka\n")
    assert main(["decode", "-s", "gujarati"]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == "રવિવાર"
    assert "line 2, col 0: orphan-nukta" in captured.err


def test_lossy_script_needs_flag(workdir, capsys, monkeypatch):
    feed_stdin(monkeypatch, "سلام\n")
    assert main(["encode", "-s", "urdu"]) == 1
    assert "--allow-lossy" in capsys.readouterr().err
    feed_stdin(monkeypatch, "سلام\n")
    assert main(["encode", "-s", "urdu", "--allow-lossy"]) == 0


def test_bpe_commands(workdir, capsys):
    corpus = write(workdir / "c.txt", ["ravivAra somavAra", "ravivAra"])
    assert main(["bpe", "learn", "-i", corpus, "-m", "m.bpe", "--merges", "5"]) == 0
    assert main(["bpe", "apply", "-m", "m.bpe", "-i", corpus, "-o", "seg.txt"]) == 0
    assert main(["bpe", "undo", "-i", "seg.txt", "-o", "joined.txt"]) == 0
    assert read_lines(workdir / "joined.txt") == read_lines(corpus)
    assert read_lines(workdir / "seg.txt")[1].startswith("▁")


def test_lm_commands(workdir, capsys):
    corpus = write(workdir / "c.txt", ["abab", "abba"])
    assert main(["lm", "train", "-i", corpus, "-m", "lm.arpa", "--order", "3", "--discount", "auto"]) == 0
    assert (workdir / "lm.arpa").read_text(encoding="utf-8").rstrip().endswith("\\end\\")
    capsys.readouterr()
    assert main(["lm", "score", "-m", "lm.arpa", "-i", corpus]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert [r.split("\t")[1] for r in rows] == ["5", "5"]
    assert main(["lm", "ppl", "-m", "lm.arpa", "-i", corpus]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 3
    assert main(["lm", "train", "-i", corpus, "-m", "u.arpa", "--smoothing", "uniform"]) == 0
    capsys.readouterr()
    assert main(["lm", "ppl", "-m", "u.arpa", "-i", corpus]) == 0
    assert json.loads(capsys.readouterr().out)["perplexity"] == pytest.approx(4)  # a, b, EOS, UNK


def test_evaluate_command(workdir, capsys):
    ref = write(workdir / "ref.txt", ["a b c", "d e"])
    assert main(["evaluate", "--hyp", ref, "--ref", ref, "--metrics", "bleu,ter", "--signature"]) == 0
    records = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert [(r["metric"], r["score"]) for r in records] == [("bleu", 100.0), ("ter", 0.0)]
    assert main(["evaluate", "--hyp", ref, "--ref", ref, "--metrics", "meteor"]) == 1


def test_analyze_command(workdir, capsys):
    a = write(workdir / "a.txt", ["aaaa", "aa aa"])
    b = write(workdir / "b.txt", ["abab", "ba"])
    assert main(["analyze", "--corpus", f"a={a}", "--corpus", f"b={b}", "--order", "2", "-o", "rep"]) == 0
    written = json.loads(capsys.readouterr().out)
    assert {"entropy", "ssnglm", "perplexity_symmetric"} <= set(written)
    assert main(["analyze", "--corpus", f"a={a}", "--which", "ssnglm", "-o", "rep"]) == 1
    assert main(["analyze", "--corpus", f"a={a}", "--which", "nope", "-o", "rep"]) == 1
    assert main(["analyze", "-o", "rep"]) == 1


def test_prepare_and_postprocess_commands(workdir, capsys):
    write(workdir / "s.txt", ["म घर जान्छु", "आज आइतबार हो"])
    write(workdir / "t.txt", ["मैं घर जाता हूँ", "आज रविवार है"])
    (workdir / "m.toml").write_text(
        '[[pairs]]\nsource_lang = "ne"\ntarget_lang = "hi"\nsource_script = "devanagari"\n'
        'target_script = "devanagari"\ntest = { source = "s.txt", target = "t.txt" }\n', encoding="utf-8")
    assert main(["prepare", "m.toml", "--output-dir", "out", "--merges", "10"]) == 0
    assert capsys.readouterr().out.strip().endswith("run.json")
    assert main(["postprocess", "--hyp", "out/ne-hi/test.hi.bpe", "--run", "out", "-o", "hyp.hi"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["restored_from_spans"] == 2
    assert read_lines(workdir / "hyp.hi") == read_lines(workdir / "t.txt")
    assert main(["postprocess", "--hyp", "out/ne-hi/test.hi.bpe", "-o", "x"]) == 1


def test_analyze_takes_order_from_manifest(workdir, capsys):
    write(workdir / "s.txt", ["म घर जान्छु"])
    write(workdir / "t.txt", ["मैं घर जाता हूँ"])
    (workdir / "m.toml").write_text(
        '[options]\nlm_order = 2\n[[pairs]]\nsource_lang = "ne"\ntarget_lang = "hi"\n'
        'source_script = "devanagari"\ntarget_script = "devanagari"\n'
        'test = { source = "s.txt", target = "t.txt" }\n', encoding="utf-8")
    assert main(["analyze", "--manifest", "m.toml", "--which", "ssnglm", "-o", "rep"]) == 0
    assert json.loads((workdir / "rep/ssnglm.json").read_text(encoding="utf-8"))["order"] == 2
    assert main(["analyze", "--manifest", "m.toml", "--which", "ssnglm", "--order", "3", "-o", "rep"]) == 0
    assert json.loads((workdir / "rep/ssnglm.json").read_text(encoding="utf-8"))["order"] == 3


@pytest.mark.parametrize("argv", [
    ["encode", "-s", "hindi", "-i", "missing.txt"],
    ["bpe", "apply", "-m", "missing.bpe", "-i", "missing.txt"],
    ["lm", "ppl", "-m", "missing.arpa", "-i", "x"],
    ["evaluate", "--hyp", "missing.txt", "--ref", "missing.txt"],
])
def test_missing_files_exit_with_data_error(workdir, capsys, argv):
    assert main(argv) == 2
    assert "file not found: missing." in capsys.readouterr().err


def test_data_errors_exit_two(workdir, capsys):
    write(workdir / "bad.bpe", ["not a model"])
    assert main(["bpe", "apply", "-m", "bad.bpe", "-i", "bad.bpe"]) == 2
    write(workdir / "one.txt", ["a"])
    write(workdir / "two.txt", ["a", "b"])
    assert main(["evaluate", "--hyp", "one.txt", "--ref", "two.txt"]) == 2
    assert main(["prepare", "nope.toml"]) == 2
    (workdir / "raw.bin").write_bytes(b"\xff\xfe\x00bad")
    assert main(["encode", "-s", "hindi", "-i", "raw.bin"]) == 2
    assert "error" in capsys.readouterr().err


def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["encode"])
    assert exc.value.code == 1


def test_unknown_script_is_a_usage_error(workdir):
    assert main(["encode", "-s", "klingon", "-i", write(workdir / "x.txt", ["a"])]) == 1


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("wxspace ")
