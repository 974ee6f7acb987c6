"""Plain-text histogram files.

    # x=<int> y=<int>
    k,count            (one line per k, ascending)
    # sha256=<hex>     (digest of everything above it)
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import warnings
from pathlib import Path

from ..sieve import NuHistogram


class CacheWarning(UserWarning):
    pass


def format_histogram(h: NuHistogram) -> str:
    body = f"# x={h.x} y={h.y}\n" + "".join(f"{k},{c}\n" for k, c in sorted(h.counts.items()))
    digest = hashlib.sha256(body.encode()).hexdigest()
    return body + f"# sha256={digest}\n"


def parse_histogram(text: str) -> NuHistogram:
    """Inverse of ``format_histogram``; raises ValueError on any inconsistency."""
    body, sep, trailer = text.rpartition("# sha256=")
    if not sep or hashlib.sha256(body.encode()).hexdigest() != trailer.strip():
        raise ValueError("checksum mismatch")
    lines = body.splitlines()
    head = lines[0].split()
    if len(head) != 3 or head[0] != "#" or not head[1].startswith("x=") or not head[2].startswith("y="):
        raise ValueError(f"bad header {lines[0]!r}")
    counts = {}
    for line in lines[1:]:
        k, c = line.split(",")
        counts[int(k)] = int(c)
    if list(counts) != sorted(counts):
        raise ValueError("k not ascending")
    return NuHistogram(int(head[1][2:]), int(head[2][2:]), counts)


def cache_path(x: int, y: int, directory) -> Path:
    return Path(directory) / f"nu_x{int(x)}_y{int(y)}.txt"


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def cache_store(h: NuHistogram, directory) -> Path:
    path = cache_path(h.x, h.y, directory)
    write_atomic(path, format_histogram(h))
    return path


def cache_load(x: int, y: int, directory) -> NuHistogram | None:
    """The cached histogram, or None if absent or corrupt (with a CacheWarning)."""
    path = cache_path(x, y, directory)
    try:
        text = path.read_text()
    except FileNotFoundError:
        return None
    try:
        h = parse_histogram(text)
    except ValueError as exc:
        warnings.warn(f"ignoring corrupt cache file {path}: {exc}", CacheWarning, stacklevel=2)
        return None
    if (h.x, h.y) != (int(x), int(y)):
        warnings.warn(f"cache file {path} holds x={h.x} y={h.y}", CacheWarning, stacklevel=2)
        return None
    return h
