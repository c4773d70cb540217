"""Topic-sentiment crosstabs, share rounding, and CSV/SVG emission."""

from __future__ import annotations

import csv

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fedsent import report
from fedsent.corpus import CleanComment
from fedsent.sentilex import ScoredComment, SentimentLabel, SentimentScore
from fedsent.topicmodel import TopicAssignment

NEG, NEU, POS = SentimentLabel.NEGATIVE, SentimentLabel.NEUTRAL, SentimentLabel.POSITIVE


def assignment(cid, topic):
    return TopicAssignment(comment_id=cid, dominant_topic=topic, topic_keywords=("k",))


def scored(cid, label):
    compound = {NEG: -0.5, NEU: 0.0, POS: 0.5}[label]
    return ScoredComment(
        comment_id=cid,
        score=SentimentScore(compound=compound, pos_share=0.0, neg_share=0.0, neu_share=1.0),
        label=label,
    )


def clean(cid, tokens):
    return CleanComment(
        id=cid, text=" ".join(tokens), tokens=tuple(tokens), dropped=False, drop_reason=None
    )


class TestRoundShares:
    def test_all_one_topic(self):
        assert report.round_shares([10]) == [100.0]

    def test_even_split(self):
        assert report.round_shares([2, 2]) == [50.0, 50.0]

    def test_thirds_sum_within_tolerance(self):
        shares = report.round_shares([1, 1, 1])
        assert sum(shares) == pytest.approx(100.0, abs=1e-9)
        assert all(abs(s - 100 / 3) <= 0.1 for s in shares)

    @given(st.lists(st.integers(0, 500), min_size=1, max_size=12).filter(lambda c: sum(c) > 0))
    def test_rounding_invariants(self, counts):
        shares = report.round_shares(counts)
        assert sum(shares) == pytest.approx(100.0, abs=1e-9)
        total = sum(counts)
        for count, share in zip(counts, shares):
            assert abs(share - 100.0 * count / total) <= 0.1
            assert round(share * 10) == pytest.approx(share * 10)  # one decimal place

    def test_zero_total_gives_zero_shares(self):
        # an empty topic row reports 0% everywhere instead of crashing
        assert report.round_shares([0, 0]) == [0.0, 0.0]
        assert report.round_shares([]) == []


class TestTopicDistribution:
    def test_all_same_topic(self):
        dist = report.topic_distribution([assignment(str(i), 0) for i in range(10)])
        assert dist == {0: 100.0}

    def test_even_two_topics(self):
        assignments = [assignment("a", 0), assignment("b", 0), assignment("c", 1), assignment("d", 1)]
        assert report.topic_distribution(assignments) == {0: 50.0, 1: 50.0}


class TestCrosstab:
    def test_one_per_label_same_topic(self):
        assignments = [assignment(c, 0) for c in ("a", "b", "c")]
        labels = [scored("a", NEG), scored("b", NEU), scored("c", POS)]
        table = report.crosstab(assignments, labels)
        assert len(table.rows) == 1
        row = table.rows[0]
        assert (row.negative, row.neutral, row.positive) == (1, 1, 1)
        assert row.share_pct == 100.0
        assert row.name == "Topic 0"

    def test_empty_join_warns(self, caplog):
        with caplog.at_level("WARNING"):
            table = report.crosstab([assignment("a", 0)], [scored("b", POS)])
        assert table.rows == () or all(r.total == 0 for r in table.rows)
        assert table.unmatched_assignments == ("a",)
        assert table.unmatched_labels == ("b",)

    def test_hand_tally_12_comments(self):
        spec = [
            ("c01", 0, NEG), ("c02", 0, NEG), ("c03", 0, POS),
            ("c04", 1, NEU), ("c05", 1, POS), ("c06", 1, POS),
            ("c07", 1, POS), ("c08", 2, NEG), ("c09", 2, NEU),
            ("c10", 2, NEU), ("c11", 2, NEU), ("c12", 2, POS),
        ]
        table = report.crosstab(
            [assignment(cid, topic) for cid, topic, _ in spec],
            [scored(cid, label) for cid, _, label in spec],
        )
        by_topic = {row.topic: row for row in table.rows}
        assert (by_topic[0].negative, by_topic[0].neutral, by_topic[0].positive) == (2, 0, 1)
        assert (by_topic[1].negative, by_topic[1].neutral, by_topic[1].positive) == (0, 1, 3)
        assert (by_topic[2].negative, by_topic[2].neutral, by_topic[2].positive) == (1, 3, 1)
        assert by_topic[0].share_pct == 25.0
        assert sum(row.share_pct for row in table.rows) == pytest.approx(100.0, abs=1e-9)

    def test_custom_names(self):
        table = report.crosstab(
            [assignment("a", 3)], [scored("a", POS)], topic_names={3: "Energy Crisis"}
        )
        assert table.rows[0].name == "Energy Crisis"


class TestWordFrequencies:
    def test_zero_comments_for_class(self):
        table = report.word_frequencies([clean("a", ["war"])], [scored("a", POS)], NEG)
        assert table.items == ()

    def test_simple_count(self):
        table = report.word_frequencies(
            [clean("a", ["war", "war", "peace"])], [scored("a", NEG)], NEG
        )
        assert [tuple(item) for item in table.items] == [("war", 2), ("peace", 1)]

    def test_hand_tally_and_ordering(self):
        corpus = [
            clean("a", ["grain", "port", "grain"]),
            clean("b", ["port", "aid"]),
            clean("c", ["grain", "aid", "port"]),
        ]
        labels = [scored("a", POS), scored("b", POS), scored("c", NEG)]
        table = report.word_frequencies(corpus, labels, POS, top=2)
        assert [tuple(item) for item in table.items] == [("grain", 2), ("port", 2)]

    def test_ties_alphabetical(self):
        table = report.word_frequencies(
            [clean("a", ["zulu", "alpha"])], [scored("a", NEU)], NEU
        )
        assert [tuple(item) for item in table.items] == [("alpha", 1), ("zulu", 1)]

    def test_dropped_comments_excluded(self):
        dropped = CleanComment(id="d", text="", tokens=("war",), dropped=True, drop_reason="x")
        table = report.word_frequencies([dropped], [scored("d", NEG)], NEG)
        assert table.items == ()


class TestWriters:
    def _table(self):
        assignments = [assignment(c, t) for c, t in [("a", 0), ("b", 0), ("c", 1)]]
        labels = [scored("a", NEG), scored("b", POS), scored("c", NEU)]
        return report.crosstab(assignments, labels, topic_names={0: 'War, "Front" News'})

    def test_topic_sentiment_csv_schema(self, tmp_path):
        path = tmp_path / "topic_sentiment.csv"
        report.write_topic_sentiment_csv(self._table(), path)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["topic", "name", "negative", "neutral", "positive", "share_pct"]
        assert rows[1] == ["0", 'War, "Front" News', "1", "0", "1", "66.7"]
        assert rows[2] == ["1", "Topic 1", "0", "1", "0", "33.3"]

    def test_wordfreq_csv(self, tmp_path):
        table = report.word_frequencies(
            [clean("a", ["war", "war", "aid"])], [scored("a", NEG)], NEG
        )
        path = tmp_path / "wordfreq_negative.csv"
        report.write_wordfreq_csv(table, path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "token,count"
        assert lines[1] == "war,2"

    def test_svg_contains_bars(self, tmp_path):
        path = tmp_path / "chart.svg"
        report.write_topic_bar_svg(self._table(), path)
        content = path.read_text()
        assert content.startswith("<svg") or content.startswith("<?xml")
        assert "<rect" in content and "</svg>" in content

    def test_csv_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        report.write_topic_sentiment_csv(self._table(), a)
        report.write_topic_sentiment_csv(self._table(), b)
        assert a.read_bytes() == b.read_bytes()
