"""Descriptive analytics: topic shares, topic x sentiment table, word counts.

Topic shares are percentages rounded to one decimal with a largest-remainder
reconciliation, so each share is within one tenth of the exact value and the
vector always sums to exactly 100.0 (integer arithmetic, deterministic
tie-break by topic order).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import CleanComment
from .errors import DataError
from .manifest import atomic_write_text
from .sentilex import ScoredComment, SentimentLabel
from .topicmodel import TopicAssignment

logger = logging.getLogger(__name__)


def round_shares(counts: Sequence[int]) -> list[float]:
    """Percentages to one decimal, summing exactly to 100.0 (largest remainder)."""
    if any(c < 0 for c in counts):
        raise DataError("counts must be >= 0")
    total = sum(counts)
    if total == 0:
        return [0.0 for _ in counts]
    tenths = [divmod(c * 1000, total) for c in counts]  # (floor tenths, remainder)
    floors = [q for q, _ in tenths]
    leftover = 1000 - sum(floors)
    # Distribute leftover tenths to the largest fractional remainders,
    # breaking ties toward the earlier entry.
    order = sorted(range(len(counts)), key=lambda i: (-tenths[i][1], i))
    for i in order[:leftover]:
        floors[i] += 1
    return [f / 10.0 for f in floors]


def topic_distribution(assignments: Sequence[TopicAssignment]) -> dict[int, float]:
    """Share of comments per topic, in percent."""
    if not assignments:
        raise DataError("cannot compute a topic distribution without assignments")
    counts = Counter(a.dominant_topic for a in assignments)
    topics = sorted(counts)
    shares = round_shares([counts[t] for t in topics])
    return {t: s for t, s in zip(topics, shares)}


@dataclass(frozen=True)
class TopicRow:
    topic: int
    name: str
    negative: int
    neutral: int
    positive: int
    share_pct: float

    @property
    def total(self) -> int:
        return self.negative + self.neutral + self.positive


@dataclass(frozen=True)
class TopicSentimentTable:
    rows: tuple[TopicRow, ...]
    unmatched_assignments: tuple[str, ...] = ()
    unmatched_labels: tuple[str, ...] = ()

    @property
    def total(self) -> int:
        return sum(row.total for row in self.rows)


def crosstab(
    assignments: Sequence[TopicAssignment],
    labels: Sequence[ScoredComment],
    topic_names: Mapping[int, str] | None = None,
) -> TopicSentimentTable:
    """Join topic assignments with sentiment labels by comment id."""
    label_by_id = {s.comment_id: s.label for s in labels}
    cells: dict[int, list[int]] = {}
    matched_ids: set[str] = set()
    unmatched_assignments: list[str] = []
    for assignment in assignments:
        label = label_by_id.get(assignment.comment_id)
        if label is None:
            unmatched_assignments.append(assignment.comment_id)
            continue
        matched_ids.add(assignment.comment_id)
        row = cells.setdefault(assignment.dominant_topic, [0, 0, 0])
        row[int(label)] += 1
    unmatched_labels = [s.comment_id for s in labels if s.comment_id not in matched_ids]
    if unmatched_assignments or not cells:
        logger.warning(
            "crosstab: %d assignments without labels, %d labels without assignments, %d joined",
            len(unmatched_assignments), len(unmatched_labels), sum(sum(r) for r in cells.values()),
        )
    topics = sorted(cells)
    shares = round_shares([sum(cells[t]) for t in topics])
    names = topic_names or {}
    rows = tuple(
        TopicRow(
            topic=t,
            name=names.get(t, f"Topic {t}"),
            negative=cells[t][int(SentimentLabel.NEGATIVE)],
            neutral=cells[t][int(SentimentLabel.NEUTRAL)],
            positive=cells[t][int(SentimentLabel.POSITIVE)],
            share_pct=share,
        )
        for t, share in zip(topics, shares)
    )
    return TopicSentimentTable(
        rows=rows,
        unmatched_assignments=tuple(unmatched_assignments),
        unmatched_labels=tuple(unmatched_labels),
    )


@dataclass(frozen=True)
class FrequencyTable:
    label: SentimentLabel
    items: tuple[tuple[str, int], ...]  # (token, count) descending

    @property
    def total(self) -> int:
        return sum(count for _, count in self.items)


def word_frequencies(
    corpus: Sequence[CleanComment],
    labels: Sequence[ScoredComment],
    class_label: SentimentLabel,
    top: int | None = None,
) -> FrequencyTable:
    """Token counts over non-dropped comments carrying the given label."""
    wanted = {s.comment_id for s in labels if s.label == class_label}
    counter: Counter[str] = Counter()
    for comment in corpus:
        if comment.dropped or comment.id not in wanted:
            continue
        counter.update(comment.tokens)
    ordered = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    if top is not None:
        ordered = ordered[:top]
    return FrequencyTable(label=class_label, items=tuple(ordered))


def write_topic_sentiment_csv(table: TopicSentimentTable, path: str | Path) -> None:
    lines = ["topic,name,negative,neutral,positive,share_pct"]
    for row in table.rows:
        name = row.name.replace('"', '""')
        if "," in name or '"' in row.name:
            name = f'"{name}"'
        lines.append(
            f"{row.topic},{name},{row.negative},{row.neutral},{row.positive},{row.share_pct:.1f}"
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_wordfreq_csv(table: FrequencyTable, path: str | Path) -> None:
    lines = ["token,count"]
    lines.extend(f"{token},{count}" for token, count in table.items)
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_topic_bar_svg(table: TopicSentimentTable, path: str | Path) -> None:
    """Simple grouped-bar SVG of per-topic sentiment counts."""
    width, height, margin = 640, 360, 40
    rows = table.rows
    if not rows:
        atomic_write_text(path, f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}"/>\n')
        return
    peak = max(max(r.negative, r.neutral, r.positive) for r in rows) or 1
    plot_h = height - 2 * margin
    group_w = (width - 2 * margin) / len(rows)
    bar_w = group_w / 4
    colors = ("#c0392b", "#7f8c8d", "#27ae60")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="#333"/>',
    ]
    for g, row in enumerate(rows):
        x0 = margin + g * group_w
        for slot, value in enumerate((row.negative, row.neutral, row.positive)):
            bar_h = plot_h * value / peak
            x = x0 + slot * bar_w
            y = height - margin - bar_h
            parts.append(
                f'<rect x="{x:.1f}" y="{y:.1f}" width="{bar_w:.1f}" '
                f'height="{bar_h:.1f}" fill="{colors[slot]}"/>'
            )
        parts.append(
            f'<text x="{x0 + group_w / 2:.1f}" y="{height - margin + 16}" '
            f'font-size="10" text-anchor="middle">{row.topic}</text>'
        )
    parts.append("</svg>")
    atomic_write_text(path, "\n".join(parts) + "\n")
