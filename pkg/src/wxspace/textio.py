"""Line-oriented UTF-8 file helpers shared by the pipeline and the CLI."""
from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Iterable

from .errors import FormatError

BOM = "\ufeff"


def normalize_whitespace(line: str) -> str:
    """Collapse whitespace runs to one space and trim both ends."""
    return " ".join(line.split())


def read_lines(path: "str | os.PathLike") -> list[str]:
    """Read a UTF-8 file as a list of lines without their terminators.

    A leading BOM is dropped and CRLF is treated as LF.  Invalid UTF-8
    raises :class:`FormatError` naming the file and line.
    """
    path = Path(path)
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[:exc.start].count(b"\n") + 1
        raise FormatError(f"{path}:{line}: invalid UTF-8") from None
    text = text.removeprefix(BOM).replace("\r\n", "\n")
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return lines


def atomic_write_text(path: "str | os.PathLike", text: str) -> Path:
    """Write *text* to a sibling temp file, then rename it over *path*."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return path


def write_lines(path: "str | os.PathLike", lines: Iterable[str]) -> Path:
    return atomic_write_text(path, "".join(f"{line}\n" for line in lines))
