"""Lexicon- and rule-based sentiment scoring with three-way labeling.

Implements the classic social-media sentiment heuristics: a valence lexicon,
degree-modifier boosters with distance damping, ALL-CAPS emphasis, negation
flips, contrastive-"but" reweighting, punctuation emphasis, and a bounded
compound score ``x / sqrt(x^2 + alpha)``.  Scores map to Negative / Neutral /
Positive labels with a symmetric +-0.05 dead zone around zero.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from enum import IntEnum
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DataError, NumericError

# Rule constants (empirically calibrated in the sentiment literature).
B_INCR = 0.293
B_DECR = -0.293
C_INCR = 0.733  # ALL-CAPS emphasis bump
N_SCALAR = -0.74  # negation flip-and-dampen
NORM_ALPHA = 15.0  # denominator constant of the compound normalizer
EXCL_EMPHASIS = 0.292  # per exclamation mark, at most four counted
NEVER_SO_BOOST = 1.25
BUT_BEFORE = 0.5
BUT_AFTER = 1.5

POSITIVE_THRESHOLD = 0.05
NEGATIVE_THRESHOLD = -0.05

# Multiword idioms whose valence overrides the component tokens.
SPECIAL_CASE_IDIOMS: dict[str, float] = {
    "the shit": 3.0,
    "the bomb": 3.0,
    "bad ass": 1.5,
    "badass": 1.5,
    "yeah right": -2.0,
    "kiss of death": -1.5,
    "to die for": 3.0,
}

_ASSET_PACKAGE = "fedsent"


def _asset_path(name: str) -> Path:
    return Path(str(resources.files(_ASSET_PACKAGE) / "assets" / name))


def _read_tsv_floats(path: str | Path) -> dict[str, float]:
    table: dict[str, float] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise DataError(f"{path}:{lineno}: expected 'token<TAB>value'")
                token, raw = parts
                try:
                    value = float(raw)
                except ValueError as exc:
                    raise DataError(f"{path}:{lineno}: bad valence {raw!r}") from exc
                if not math.isfinite(value):
                    raise DataError(f"{path}:{lineno}: non-finite valence")
                table[token] = value
    except OSError as exc:
        raise DataError(f"cannot read lexicon file {path}: {exc}") from exc
    return table


def _read_wordlist(path: str | Path) -> frozenset[str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            words = {line.strip() for line in fh if line.strip() and not line.startswith("#")}
    except OSError as exc:
        raise DataError(f"cannot read word list {path}: {exc}") from exc
    return frozenset(words)


@dataclass(frozen=True)
class Lexicon:
    """Valence lexicon plus the booster and negation word lists."""

    entries: Mapping[str, float]
    boosters: Mapping[str, float]
    negations: frozenset[str]

    def __post_init__(self) -> None:
        if not self.entries:
            raise DataError("sentiment lexicon is empty")
        overlap = set(self.entries) & set(self.boosters)
        if overlap:
            raise DataError(f"tokens in both lexicon and boosters: {sorted(overlap)[:5]}")
        for token, value in self.entries.items():
            if not math.isfinite(value):
                raise DataError(f"non-finite valence for {token!r}")


def load_lexicon(
    lexicon_path: str | Path | None = None,
    boosters_path: str | Path | None = None,
    negations_path: str | Path | None = None,
) -> Lexicon:
    """Load a :class:`Lexicon`, defaulting to the bundled asset files."""
    entries = _read_tsv_floats(lexicon_path or _asset_path("vader_lexicon.tsv"))
    boosters = _read_tsv_floats(boosters_path or _asset_path("vader_boosters.tsv"))
    negations = _read_wordlist(negations_path or _asset_path("vader_negations.txt"))
    return Lexicon(entries=entries, boosters=boosters, negations=negations)


class SentimentLabel(IntEnum):
    NEGATIVE = 0
    NEUTRAL = 1
    POSITIVE = 2

    @property
    def json_name(self) -> str:
        return self.name.lower()

    @classmethod
    def from_name(cls, name: str) -> "SentimentLabel":
        try:
            return cls[name.upper()]
        except KeyError as exc:
            raise DataError(f"unknown sentiment label {name!r}") from exc


@dataclass(frozen=True)
class SentimentScore:
    """Compound score in [-1, 1] plus non-negative shares summing to one."""

    compound: float
    pos_share: float
    neg_share: float
    neu_share: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.compound <= 1.0:
            raise NumericError(f"compound {self.compound} outside [-1, 1]")
        total = self.pos_share + self.neg_share + self.neu_share
        if min(self.pos_share, self.neg_share, self.neu_share) < 0 or abs(total - 1.0) > 1e-9:
            raise NumericError("sentiment shares must be non-negative and sum to 1")


@dataclass(frozen=True)
class ScoredComment:
    comment_id: str
    score: SentimentScore
    label: SentimentLabel


def _strip_punct(token: str) -> str:
    stripped = token.strip(string.punctuation)
    # Emoticons like ":)" survive because stripping would leave under 3 chars.
    return token if len(stripped) <= 2 else stripped


def _tokenize(text: str) -> list[str]:
    return [_strip_punct(tok) for tok in text.split()]


def _allcap_differential(tokens: Sequence[str]) -> bool:
    n_caps = sum(1 for tok in tokens if tok.isupper())
    return 0 < len(tokens) - n_caps < len(tokens)


def _normalize(total: float) -> float:
    norm = total / math.sqrt(total * total + NORM_ALPHA)
    return max(-1.0, min(1.0, norm))


def _is_negator(word: str, negations: frozenset[str]) -> bool:
    lower = word.lower()
    return lower in negations or "n't" in lower


def _booster_effect(word: str, valence: float, caps_differ: bool, boosters: Mapping[str, float]) -> float:
    scalar = boosters.get(word.lower(), 0.0)
    if scalar == 0.0:
        return 0.0
    if valence < 0:
        scalar = -scalar
    if word.isupper() and caps_differ:
        scalar += C_INCR if valence > 0 else -C_INCR
    return scalar


def _negation_adjust(
    valence: float, lower: Sequence[str], start: int, i: int, negations: frozenset[str]
) -> float:
    """Negation window at distance ``start`` behind token ``i``."""
    if start == 0:
        if _is_negator(lower[i - 1], negations):
            valence *= N_SCALAR
    elif start == 1:
        if lower[i - 2] == "never" and lower[i - 1] in ("so", "this"):
            valence *= NEVER_SO_BOOST
        elif lower[i - 2] == "without" and lower[i - 1] == "doubt":
            pass  # "without doubt" asserts rather than negates
        elif _is_negator(lower[i - 2], negations):
            valence *= N_SCALAR
    elif start == 2:
        if (lower[i - 3] == "never" and lower[i - 2] in ("so", "this")) or lower[i - 1] in ("so", "this"):
            valence *= NEVER_SO_BOOST
        elif lower[i - 3] == "without" and "doubt" in (lower[i - 2], lower[i - 1]):
            pass
        elif _is_negator(lower[i - 3], negations):
            valence *= N_SCALAR
    return valence


def _idiom_adjust(valence: float, lower: Sequence[str], i: int, boosters: Mapping[str, float]) -> float:
    onezero = f"{lower[i - 1]} {lower[i]}"
    twoonezero = f"{lower[i - 2]} {lower[i - 1]} {lower[i]}"
    twoone = f"{lower[i - 2]} {lower[i - 1]}"
    threetwoone = f"{lower[i - 3]} {lower[i - 2]} {lower[i - 1]}"
    threetwo = f"{lower[i - 3]} {lower[i - 2]}"
    for sequence in (onezero, twoonezero, twoone, threetwoone, threetwo):
        if sequence in SPECIAL_CASE_IDIOMS:
            valence = SPECIAL_CASE_IDIOMS[sequence]
            break
    if len(lower) - 1 > i:
        zeroone = f"{lower[i]} {lower[i + 1]}"
        if zeroone in SPECIAL_CASE_IDIOMS:
            valence = SPECIAL_CASE_IDIOMS[zeroone]
    if len(lower) - 1 > i + 1:
        zeroonetwo = f"{lower[i]} {lower[i + 1]} {lower[i + 2]}"
        if zeroonetwo in SPECIAL_CASE_IDIOMS:
            valence = SPECIAL_CASE_IDIOMS[zeroonetwo]
    for ngram in (threetwoone, threetwo, twoone):
        if ngram in boosters:
            valence += boosters[ngram]
    return valence


def _least_adjust(valence: float, lower: Sequence[str], i: int, entries: Mapping[str, float]) -> float:
    if i > 1 and lower[i - 1] not in entries and lower[i - 1] == "least":
        if lower[i - 2] not in ("at", "very"):
            valence *= N_SCALAR
    elif i > 0 and lower[i - 1] not in entries and lower[i - 1] == "least":
        valence *= N_SCALAR
    return valence


def _token_valences(tokens: Sequence[str], lex: Lexicon) -> list[float]:
    lower = [tok.lower() for tok in tokens]
    caps_differ = _allcap_differential(tokens)
    n = len(tokens)
    valences: list[float] = []
    for i, token in enumerate(tokens):
        item = lower[i]
        if item in lex.boosters:
            valences.append(0.0)
            continue
        if item == "kind" and i + 1 < n and lower[i + 1] == "of":
            valences.append(0.0)
            continue
        if item not in lex.entries:
            valences.append(0.0)
            continue
        valence = lex.entries[item]
        # "no" as a flat denial carries no valence when it modifies a
        # following lexicon word; as a modifier it flips the next items.
        if item == "no" and i != n - 1 and lower[i + 1] in lex.entries:
            valence = 0.0
        if (
            (i > 0 and lower[i - 1] == "no")
            or (i > 1 and lower[i - 2] == "no")
            or (i > 2 and lower[i - 3] == "no" and lower[i - 1] in ("or", "nor"))
        ):
            valence = lex.entries[item] * N_SCALAR
        if token.isupper() and caps_differ:
            valence += C_INCR if valence > 0 else -C_INCR
        for start in range(3):
            if i > start and lower[i - (start + 1)] not in lex.entries:
                scalar = _booster_effect(tokens[i - (start + 1)], valence, caps_differ, lex.boosters)
                if scalar != 0.0 and start == 1:
                    scalar *= 0.95
                if scalar != 0.0 and start == 2:
                    scalar *= 0.9
                valence += scalar
                valence = _negation_adjust(valence, lower, start, i, lex.negations)
                if start == 2:
                    valence = _idiom_adjust(valence, lower, i, lex.boosters)
        valence = _least_adjust(valence, lower, i, lex.entries)
        valences.append(valence)
    return valences


def _apply_but(lower: Sequence[str], valences: list[float]) -> list[float]:
    if "but" not in lower:
        return valences
    pivot = lower.index("but")
    return [
        value * BUT_BEFORE if idx < pivot else (value * BUT_AFTER if idx > pivot else value)
        for idx, value in enumerate(valences)
    ]


def _punctuation_emphasis(text: str) -> float:
    emphasis = min(text.count("!"), 4) * EXCL_EMPHASIS
    question_marks = text.count("?")
    if question_marks > 1:
        emphasis += question_marks * 0.18 if question_marks <= 3 else 0.96
    return emphasis


def compound_score(text: str, lex: Lexicon) -> SentimentScore:
    """Score one text span; returns the compound plus pos/neg/neu shares."""
    tokens = _tokenize(text)
    lower = [tok.lower() for tok in tokens]
    valences = _apply_but(lower, _token_valences(tokens, lex))
    if not valences:
        return SentimentScore(compound=0.0, pos_share=0.0, neg_share=0.0, neu_share=1.0)

    total = sum(valences)
    emphasis = _punctuation_emphasis(text)
    if total > 0:
        total += emphasis
    elif total < 0:
        total -= emphasis
    compound = _normalize(total)

    pos_sum = 0.0
    neg_sum = 0.0
    neu_count = 0
    for value in valences:
        if value > 0:
            pos_sum += value + 1.0  # +-1 keeps zero-valence tokens from vanishing
        elif value < 0:
            neg_sum += value - 1.0
        else:
            neu_count += 1
    if pos_sum > abs(neg_sum):
        pos_sum += emphasis
    elif pos_sum < abs(neg_sum):
        neg_sum -= emphasis
    denom = pos_sum + abs(neg_sum) + neu_count
    return SentimentScore(
        compound=compound,
        pos_share=pos_sum / denom,
        neg_share=abs(neg_sum) / denom,
        neu_share=neu_count / denom,
    )


def label_from_score(score: SentimentScore | float) -> SentimentLabel:
    """Three-way label with a symmetric +-0.05 neutral band (closed bounds)."""
    compound = score.compound if isinstance(score, SentimentScore) else float(score)
    if not math.isfinite(compound):
        raise NumericError(f"non-finite compound score {compound!r}")
    if compound >= POSITIVE_THRESHOLD:
        return SentimentLabel.POSITIVE
    if compound <= NEGATIVE_THRESHOLD:
        return SentimentLabel.NEGATIVE
    return SentimentLabel.NEUTRAL


def label_corpus(
    comments: Iterable,
    lex: Lexicon,
    emoji_map: Mapping[str, str] | None = None,
) -> list[ScoredComment]:
    """Score raw comments (objects with ``id`` and ``text``) in input order.

    ``emoji_map`` optionally rewrites emoji to their description phrases
    before scoring, mirroring what the preprocessing stage does for the
    token stream.
    """
    scored: list[ScoredComment] = []
    for comment in comments:
        text = comment.text
        if emoji_map:
            for symbol in sorted(emoji_map, key=len, reverse=True):
                if symbol in text:
                    text = text.replace(symbol, f" {emoji_map[symbol]} ")
        score = compound_score(text, lex)
        scored.append(ScoredComment(comment_id=comment.id, score=score, label=label_from_score(score)))
    return scored
