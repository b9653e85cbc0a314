"""On-disk cache of D_r(n) prefixes.

The file is canonical JSON: entries sorted by (r, n), values as decimal
strings, and a SHA-256 checksum over the serialized entries.  The cache is
advisory: a file that fails to parse, checksum, or match the recurrence is
ignored with a warning.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .core import MEMO, DerangementMemo

FORMAT_VERSION = 1
ENV_VAR = "RDERANGEMENTS_CACHE"
MAX_CACHED_N = 500

log = logging.getLogger(__name__)


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "rderangements" / "sequences.json"


def _checksum(entries: list) -> str:
    blob = json.dumps(entries, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def dumps(rows: dict[int, list[int]]) -> str:
    entries = [[r, n, str(v)] for r in sorted(rows) for n, v in enumerate(rows[r])]
    doc = {"format_version": FORMAT_VERSION, "entries": entries, "checksum": _checksum(entries)}
    return json.dumps(doc, separators=(",", ":")) + "\n"


def loads(text: str) -> dict[int, list[int]]:
    """Parse and validate a cache document; raises ValueError on any defect."""
    doc = json.loads(text)
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported cache version {doc.get('format_version')!r}")
    entries = doc["entries"]
    if _checksum(entries) != doc.get("checksum"):
        raise ValueError("cache checksum mismatch")
    rows: dict[int, list[int]] = {}
    for r, n, v in entries:
        row = rows.setdefault(int(r), [])
        if n != len(row):
            raise ValueError(f"cache row {r} is not contiguous at n={n}")
        row.append(int(v))
    return rows


def load(path: Path | None = None, memo: DerangementMemo = MEMO) -> int:
    """Seed the memo from disk; returns the number of values installed."""
    path = path or default_path()
    if not path.exists():
        return 0
    try:
        rows = loads(path.read_text())
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring unreadable cache %s: %s", path, exc)
        return 0
    installed = 0
    for r in sorted(rows):
        if not memo.seed(r, rows[r]):
            log.warning("cache row r=%d disagrees with the recurrence; recomputing", r)
            break
        installed += len(rows[r])
    return installed


def save(path: Path | None = None, memo: DerangementMemo = MEMO, max_n: int = MAX_CACHED_N) -> None:
    """Write the memo atomically (temp file + rename)."""
    path = path or default_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    text = dumps(memo.snapshot(max_n))
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
