"""Bundled sample corpora (original prose, one sentence per line)."""
from __future__ import annotations

from importlib import resources

from .scripts import ScriptId

SAMPLES = {
    "hindi": ScriptId.DEVANAGARI,
    "marathi": ScriptId.DEVANAGARI,
    "nepali": ScriptId.DEVANAGARI,
    "gujarati": ScriptId.GUJARATI,
    "punjabi": ScriptId.GURMUKHI,
}


def sample_path(name: str):
    if name not in SAMPLES:
        raise KeyError(f"no sample {name!r}; have {', '.join(SAMPLES)}")
    return resources.files("wxspace") / "data" / "samples" / f"{name}.txt"


def load_sample(name: str) -> list[str]:
    return sample_path(name).read_text(encoding="utf-8").splitlines()


def samples_in(script: "ScriptId | str") -> list[str]:
    script = ScriptId.parse(script)
    return [name for name, s in SAMPLES.items() if s is script]
