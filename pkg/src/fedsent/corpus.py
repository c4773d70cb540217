"""Corpus ingestion and deterministic text preprocessing.

Raw comments arrive as JSON Lines or CSV with a fixed schema; malformed rows
are collected as row errors instead of aborting the run.  Preprocessing is a
fixed six-step chain: language check (hook only), emoji-to-phrase rewriting,
character cleanup (URLs, punctuation, digits, case), tokenization, stopword
filtering with a negation whitelist, and dictionary lemmatization.  Comments
that end up below the minimum token count are kept but flagged as dropped so
later stages can account for them.
"""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ConfigError, DataError
from .sentilex import _asset_path, _read_wordlist

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ("id", "channel", "video_id", "published_at", "text")
OPTIONAL_FIELDS = ("lang",)

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_APOSTROPHE_RE = re.compile(r"[’']")
# Everything that is not a letter collapses to a space: punctuation, symbols,
# digits, and underscore (\w includes the latter two, so they are re-excluded).
_NON_LETTER_RE = re.compile(r"[^\w\s]|[\d_]")


@dataclass(frozen=True)
class RawComment:
    id: str
    channel: str
    video_id: str
    published_at: datetime
    text: str
    lang: str | None = None


@dataclass(frozen=True)
class RowError:
    line: int
    message: str

    def to_json(self) -> dict:
        return {"line": self.line, "message": self.message}


@dataclass
class IngestResult:
    comments: list[RawComment]
    errors: list[RowError]


@dataclass(frozen=True)
class CleanComment:
    id: str
    text: str
    tokens: tuple[str, ...]
    dropped: bool = False
    drop_reason: str | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "tokens": list(self.tokens),
            "dropped": self.dropped,
            "drop_reason": self.drop_reason,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "CleanComment":
        return cls(
            id=record["id"],
            text=record["text"],
            tokens=tuple(record["tokens"]),
            dropped=bool(record.get("dropped", False)),
            drop_reason=record.get("drop_reason"),
        )


@dataclass(frozen=True)
class PreprocessConfig:
    stopwords: frozenset[str]
    negation_whitelist: frozenset[str]
    emoji_map: Mapping[str, str]
    lemma_table: Mapping[str, str]
    min_tokens: int = 1

    def __post_init__(self) -> None:
        if self.min_tokens < 0:
            raise ConfigError(f"min_tokens must be >= 0, got {self.min_tokens}")
        stray = self.negation_whitelist - self.stopwords
        if stray:
            raise ConfigError(
                "negation whitelist entries missing from the stopword list: "
                f"{sorted(stray)[:5]}"
            )
        for key in self.emoji_map:
            if not key:
                raise ConfigError("empty emoji key in emoji map")

    @classmethod
    def from_files(
        cls,
        stopwords_path: str | Path,
        whitelist_path: str | Path,
        emoji_path: str | Path,
        lemma_path: str | Path,
        min_tokens: int = 1,
    ) -> "PreprocessConfig":
        return cls(
            stopwords=_read_wordlist(stopwords_path),
            negation_whitelist=_read_wordlist(whitelist_path),
            emoji_map=_read_tsv_strings(emoji_path),
            lemma_table=_read_tsv_strings(lemma_path),
            min_tokens=min_tokens,
        )

    @classmethod
    def default(cls, min_tokens: int = 1) -> "PreprocessConfig":
        return cls.from_files(
            _asset_path("stopwords_en.txt"),
            _asset_path("negation_whitelist.txt"),
            _asset_path("emoji_map.tsv"),
            _asset_path("lemma_table.tsv"),
            min_tokens=min_tokens,
        )


def _read_tsv_strings(path: str | Path) -> dict[str, str]:
    table: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise DataError(f"{path}:{lineno}: expected 'key<TAB>value'")
                table[parts[0]] = parts[1]
    except OSError as exc:
        raise DataError(f"cannot read table {path}: {exc}") from exc
    return table


def _parse_timestamp(raw: str) -> datetime:
    # Accept a trailing Z for UTC, which fromisoformat in 3.10 does not.
    if raw.endswith("Z"):
        raw = raw[:-1] + "+00:00"
    return datetime.fromisoformat(raw)


def _validate_record(record: Mapping, line: int, seen_ids: set[str]) -> RawComment | RowError:
    unknown = set(record) - set(REQUIRED_FIELDS) - set(OPTIONAL_FIELDS)
    if unknown:
        return RowError(line, f"unknown fields: {sorted(unknown)}")
    missing = [name for name in REQUIRED_FIELDS if name not in record]
    if missing:
        return RowError(line, f"missing fields: {missing}")
    for name in ("id", "channel", "video_id", "published_at", "text"):
        if not isinstance(record[name], str):
            return RowError(line, f"field {name!r} must be a string")
    if not record["id"]:
        return RowError(line, "empty id")
    if record["id"] in seen_ids:
        return RowError(line, f"duplicate id {record['id']!r}")
    lang = record.get("lang")
    if lang is not None and not isinstance(lang, str):
        return RowError(line, "field 'lang' must be a string when present")
    try:
        published_at = _parse_timestamp(record["published_at"])
    except ValueError:
        return RowError(line, f"bad timestamp {record['published_at']!r}")
    seen_ids.add(record["id"])
    return RawComment(
        id=record["id"],
        channel=record["channel"],
        video_id=record["video_id"],
        published_at=published_at,
        text=record["text"],
        lang=lang,
    )


def ingest(path: str | Path, fmt: str = "jsonl") -> IngestResult:
    """Read raw comments, collecting malformed rows as :class:`RowError`.

    An unreadable file or unknown format raises :class:`DataError`; an empty
    file yields an empty result.
    """
    if fmt not in ("jsonl", "csv"):
        raise ConfigError(f"unknown ingest format {fmt!r} (expected 'jsonl' or 'csv')")
    comments: list[RawComment] = []
    errors: list[RowError] = []
    seen_ids: set[str] = set()
    try:
        if fmt == "jsonl":
            with open(path, "r", encoding="utf-8") as fh:
                for lineno, raw_line in enumerate(fh, 1):
                    stripped = raw_line.strip()
                    if not stripped:
                        continue
                    try:
                        record = json.loads(stripped)
                    except json.JSONDecodeError as exc:
                        errors.append(RowError(lineno, f"malformed JSON: {exc.msg}"))
                        continue
                    if not isinstance(record, dict):
                        errors.append(RowError(lineno, "expected a JSON object"))
                        continue
                    result = _validate_record(record, lineno, seen_ids)
                    (comments if isinstance(result, RawComment) else errors).append(result)
        else:
            with open(path, "r", encoding="utf-8", newline="") as fh:
                reader = csv.DictReader(fh, restkey="_extra")
                for record in reader:
                    lineno = reader.line_num
                    if record.get("_extra") is not None or None in record.values():
                        errors.append(RowError(lineno, "column count mismatch"))
                        continue
                    clean = {k: v for k, v in record.items() if not (k == "lang" and v == "")}
                    result = _validate_record(clean, lineno, seen_ids)
                    (comments if isinstance(result, RawComment) else errors).append(result)
    except OSError as exc:
        raise DataError(f"cannot read corpus {path}: {exc}") from exc
    if errors:
        logger.warning("ingest: %d malformed rows in %s", len(errors), path)
    return IngestResult(comments=comments, errors=errors)


def _substitute_emoji(text: str, emoji_map: Mapping[str, str]) -> str:
    # Longest symbols first so multi-codepoint emoji win over their prefixes.
    for symbol in sorted(emoji_map, key=len, reverse=True):
        if symbol in text:
            text = text.replace(symbol, f" {emoji_map[symbol]} ")
    return text


def _clean_characters(text: str) -> str:
    text = _URL_RE.sub(" ", text)
    # Apostrophes are deleted, not spaced, so contractions stay one token
    # ("don't" -> "dont") and match the stopword list.
    text = _APOSTROPHE_RE.sub("", text)
    text = _NON_LETTER_RE.sub(" ", text)
    return text.lower()


def preprocess(comment: RawComment, config: PreprocessConfig) -> CleanComment:
    """Run the fixed cleaning chain on one comment."""
    if comment.lang is not None and not comment.lang.lower().startswith("en"):
        # Translation is out of scope; flag and score the text as-is.
        logger.warning("preprocess: comment %s has lang=%r, translation hook is a no-op",
                       comment.id, comment.lang)
    text = _substitute_emoji(comment.text, config.emoji_map)
    text = _clean_characters(text)
    tokens = [
        token
        for token in text.split()
        if token not in config.stopwords or token in config.negation_whitelist
    ]
    tokens = [config.lemma_table.get(token, token) for token in tokens]
    dropped = len(tokens) < config.min_tokens
    reason = None
    if dropped:
        reason = "empty" if not tokens else "below_min_tokens"
    return CleanComment(
        id=comment.id,
        text=" ".join(tokens),
        tokens=tuple(tokens),
        dropped=dropped,
        drop_reason=reason,
    )


def preprocess_corpus(comments: Iterable[RawComment], config: PreprocessConfig) -> list[CleanComment]:
    cleaned = [preprocess(comment, config) for comment in comments]
    n_dropped = sum(1 for c in cleaned if c.dropped)
    if n_dropped:
        logger.info("preprocess: %d of %d comments dropped", n_dropped, len(cleaned))
    return cleaned


def dedupe(comments: Iterable[CleanComment]) -> list[CleanComment]:
    """Drop exact duplicates of cleaned text, keeping first occurrence.

    Dropped comments pass through untouched; they are not deduplicated.
    """
    seen: set[str] = set()
    out: list[CleanComment] = []
    for comment in comments:
        if comment.dropped:
            out.append(comment)
            continue
        if comment.text in seen:
            continue
        seen.add(comment.text)
        out.append(comment)
    return out
