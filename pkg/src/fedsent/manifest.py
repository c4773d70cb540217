"""Deterministic artifact IO: atomic writes, JSON/JSONL helpers, meta blocks.

Every persisted artifact carries a meta block recording the producing stage,
a hash of the effective configuration, and the seeds in play, so a finished
run can be audited without re-running it.  Writes go through a temporary
``<name>.partial`` file that is renamed into place only on success; a crash
leaves the partial file behind instead of a truncated artifact.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Iterable

from .errors import DataError

FORMAT_VERSION = 1

META_KEY = "_meta"


def config_hash(config: dict[str, Any]) -> str:
    """Stable sha256 over a JSON-serialisable config mapping."""
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def build_meta(stage: str, config: dict[str, Any], seeds: dict[str, int] | None = None) -> dict[str, Any]:
    """Meta block embedded in artifacts produced by ``stage``."""
    return {
        "format_version": FORMAT_VERSION,
        "stage": stage,
        "config_hash": config_hash(config),
        "seeds": dict(seeds or {}),
    }


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write ``text`` to ``path`` via a .partial temporary and atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    partial = path.with_name(path.name + ".partial")
    with open(partial, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(partial, path)


def write_json(path: str | Path, payload: dict[str, Any], meta: dict[str, Any] | None = None) -> None:
    body = dict(payload)
    if meta is not None:
        body = {META_KEY: meta, **body}
    atomic_write_text(path, json.dumps(body, indent=2, sort_keys=False) + "\n")


def read_json(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise DataError(f"expected a JSON object in {path}")
    return payload


def write_jsonl(path: str | Path, records: Iterable[dict[str, Any]], meta: dict[str, Any] | None = None) -> int:
    """Write records as JSON Lines; an optional meta block becomes line one.

    Returns the number of data records written (meta line excluded).
    """
    lines = []
    if meta is not None:
        lines.append(json.dumps({META_KEY: meta}, sort_keys=False))
    count = 0
    for record in records:
        lines.append(json.dumps(record, sort_keys=False))
        count += 1
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))
    return count


def read_jsonl(path: str | Path) -> tuple[list[dict[str, Any]], dict[str, Any] | None]:
    """Read JSON Lines, splitting off the leading meta block if present."""
    records: list[dict[str, Any]] = []
    meta: dict[str, Any] | None = None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise DataError(f"{path}:{lineno}: malformed JSON line: {exc}") from exc
                if not isinstance(record, dict):
                    raise DataError(f"{path}:{lineno}: expected a JSON object")
                if lineno == 1 and set(record) == {META_KEY}:
                    meta = record[META_KEY]
                    continue
                records.append(record)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    return records, meta
