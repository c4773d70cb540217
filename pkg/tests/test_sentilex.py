"""Lexicon/rule sentiment engine: pinned scores, rule effects, invariants."""

from __future__ import annotations

from datetime import datetime, timezone

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fedsent import sentilex
from fedsent.corpus import RawComment
from fedsent.sentilex import SentimentLabel


def score(text, lexicon):
    return sentilex.compound_score(text, lexicon).compound


class TestPinnedScores:
    def test_empty_text_is_zero(self, lexicon):
        result = sentilex.compound_score("", lexicon)
        assert result.compound == 0.0
        assert (result.pos_share, result.neg_share, result.neu_share) == (0.0, 0.0, 1.0)

    def test_good(self, lexicon):
        assert score("good", lexicon) == pytest.approx(0.4404, abs=1e-4)

    def test_not_good(self, lexicon):
        assert score("not good", lexicon) == pytest.approx(-0.3412, abs=1e-4)

    def test_no_lexicon_hits(self, lexicon):
        assert score("the quarterly spreadsheet", lexicon) == 0.0


class TestRuleEffects:
    def test_booster_amplifies(self, lexicon):
        assert score("very good", lexicon) > score("good", lexicon)

    def test_dampener_attenuates(self, lexicon):
        assert 0 < score("slightly good", lexicon) < score("good", lexicon)

    def test_allcaps_emphasis(self, lexicon):
        assert score("this is GREAT news", lexicon) > score("this is great news", lexicon)

    def test_exclamation_amplifies(self, lexicon):
        assert score("good!!", lexicon) > score("good", lexicon)

    def test_exclamation_caps_at_four(self, lexicon):
        assert score("good!!!!", lexicon) == score("good!!!!!!!", lexicon)

    def test_but_shifts_weight_to_second_clause(self, lexicon):
        plain = score("the food was great", lexicon)
        shifted = score("the food was great but the service was horrible", lexicon)
        assert shifted < 0 < plain

    def test_negation_flips_sign(self, lexicon):
        assert score("happy", lexicon) > 0 > score("never happy", lexicon)

    def test_never_so_intensifies(self, lexicon):
        assert score("never so happy", lexicon) > score("happy", lexicon) > 0

    def test_idiom_overrides_lexicon(self, lexicon):
        # "bomb" alone is negative (-2.2); the idiom flips the phrase positive
        assert score("bomb", lexicon) < 0
        assert score("that film was the bomb", lexicon) > 0
        # "kiss of death" idiom valence (-1.5) replaces death's -2.9; the
        # window only opens when the lexicon word sits deep enough in context
        assert score("it was the kiss of death", lexicon) == pytest.approx(
            -0.3612, abs=1e-4
        )

    def test_least_dampens(self, lexicon):
        assert 0 > score("least liked option", lexicon)
        assert score("at least it works", lexicon) >= 0

    def test_emoticon_scored(self, lexicon):
        assert score("this :) helps", lexicon) > 0
        assert score("this :( hurts", lexicon) < 0

    def test_booster_distance_decay(self, lexicon):
        near = score("very good", lexicon)
        far = score("very very very good", lexicon)
        assert far > near > 0


class TestLabels:
    def test_boundary_positive(self):
        assert sentilex.label_from_score(0.05) is SentimentLabel.POSITIVE

    def test_boundary_negative(self):
        assert sentilex.label_from_score(-0.05) is SentimentLabel.NEGATIVE

    def test_zero_is_neutral(self):
        assert sentilex.label_from_score(0.0) is SentimentLabel.NEUTRAL

    @given(st.floats(min_value=-1.0, max_value=1.0, allow_nan=False))
    def test_partition(self, compound):
        label = sentilex.label_from_score(compound)
        if compound >= 0.05:
            assert label is SentimentLabel.POSITIVE
        elif compound <= -0.05:
            assert label is SentimentLabel.NEGATIVE
        else:
            assert label is SentimentLabel.NEUTRAL

    def test_label_accepts_score_object(self, lexicon):
        result = sentilex.compound_score("good", lexicon)
        assert sentilex.label_from_score(result) is SentimentLabel.POSITIVE

    def test_json_names_round_trip(self):
        for label in SentimentLabel:
            assert SentimentLabel.from_name(label.json_name) is label


class TestInvariants:
    @given(
        words=st.lists(
            st.sampled_from(
                "good bad great terrible not very never hardly film the a war peace "
                "love hate !! ?? :) :(".split()
            ),
            max_size=12,
        )
    )
    def test_score_bounds_and_shares(self, words, lexicon):
        result = sentilex.compound_score(" ".join(words), lexicon)
        assert -1.0 <= result.compound <= 1.0
        total = result.pos_share + result.neg_share + result.neu_share
        assert total == pytest.approx(1.0, abs=1e-9)
        assert min(result.pos_share, result.neg_share, result.neu_share) >= 0.0

    def test_deterministic(self, lexicon):
        text = "The offensive was not very successful but morale stayed HIGH!!"
        assert sentilex.compound_score(text, lexicon) == sentilex.compound_score(text, lexicon)


class TestLabelCorpus:
    def _raw(self, cid, text):
        return RawComment(
            id=cid,
            channel="ch",
            video_id="v",
            published_at=datetime(2022, 9, 1, tzinfo=timezone.utc),
            text=text,
        )

    def test_empty_corpus(self, lexicon):
        assert sentilex.label_corpus([], lexicon) == []

    def test_love_peace_positive(self, lexicon):
        records = sentilex.label_corpus([self._raw("a", "love peace")], lexicon)
        assert len(records) == 1
        assert records[0].label is SentimentLabel.POSITIVE

    def test_three_labels(self, lexicon):
        records = sentilex.label_corpus(
            [
                self._raw("pos", "what a wonderful outcome"),
                self._raw("neu", "the meeting is on tuesday"),
                self._raw("neg", "an absolutely horrible disaster"),
            ],
            lexicon,
        )
        assert [r.label for r in records] == [
            SentimentLabel.POSITIVE,
            SentimentLabel.NEUTRAL,
            SentimentLabel.NEGATIVE,
        ]

    def test_emoji_map_contributes(self, lexicon, pre_config):
        with_map = sentilex.label_corpus(
            [self._raw("a", "that 😢 moment")], lexicon, emoji_map=pre_config.emoji_map
        )
        without = sentilex.label_corpus([self._raw("a", "that 😢 moment")], lexicon)
        assert with_map[0].score.compound != without[0].score.compound


class TestLexiconLoading:
    def test_bundled_lexicon_shape(self, lexicon):
        assert lexicon.entries["good"] == pytest.approx(1.9)
        assert len(lexicon.entries) > 300
        assert "very" in lexicon.boosters
        assert "never" in lexicon.negations

    def test_missing_lexicon_path_fails(self, tmp_path):
        with pytest.raises(Exception):
            sentilex.load_lexicon(tmp_path / "nope.tsv")
