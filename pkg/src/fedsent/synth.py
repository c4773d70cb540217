"""Seeded synthetic corpora for tests, benchmarks, and the bundled demo data.

Two generators:

* :func:`generate_corpus` — raw comment records shaped like the ingest
  schema, with topic-themed vocabulary, sentiment-bearing phrasing that the
  rule scorer can label, plus controlled noise (URLs, ALL-CAPS, emoji,
  duplicates, junk rows that clean to empty).
* :func:`planted_topics_corpus` — clean two-topic documents over disjoint
  vocabularies, used to validate the LDA sampler against a known structure.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

import numpy as np

from .corpus import CleanComment

THEMES: dict[str, tuple[str, ...]] = {
    "diplomacy": (
        "summit", "treaty", "ceasefire", "negotiation", "envoy", "mediator",
        "delegation", "accord", "resolution", "dialogue", "embassy", "protocol",
    ),
    "frontline": (
        "artillery", "trench", "offensive", "battalion", "drone", "bunker",
        "convoy", "checkpoint", "garrison", "mortar", "flank", "stronghold",
    ),
    "economy": (
        "sanction", "embargo", "inflation", "export", "tariff", "currency",
        "budget", "subsidy", "shortage", "ration", "grain", "pipeline",
    ),
    "refugees": (
        "refugee", "shelter", "border", "evacuation", "camp", "humanitarian",
        "displacement", "asylum", "volunteer", "orphanage", "convoyage", "resettlement",
    ),
    "media": (
        "broadcast", "censorship", "journalist", "coverage", "narrative",
        "disinformation", "headline", "correspondent", "footage", "bulletin",
        "editorial", "transcript",
    ),
    "energy": (
        "reactor", "grid", "blackout", "fuel", "turbine", "refinery",
        "substation", "generator", "kilowatt", "heating", "depot", "terminal",
    ),
    "politics": (
        "election", "parliament", "coalition", "referendum", "ballot",
        "mandate", "minister", "opposition", "decree", "cabinet", "senate",
        "constitution",
    ),
    "history": (
        "archive", "monument", "anniversary", "veteran", "museum", "memorial",
        "heritage", "chronicle", "manuscript", "commemoration", "statue", "relic",
    ),
}

POSITIVE_WORDS = (
    "good", "great", "hope", "peace", "support", "victory", "brave",
    "excellent", "wonderful", "progress", "success", "trust", "welcome",
    "relief", "happy", "proud", "impressive", "safe", "freedom", "fair",
    "honest", "calm", "strong", "kind", "grateful",
)

NEGATIVE_WORDS = (
    "war", "attack", "crisis", "terrible", "awful", "disaster", "corrupt",
    "propaganda", "threat", "fear", "loss", "damage", "cruel", "tragic",
    "horrible", "shame", "betrayal", "chaos", "danger", "violence", "crime",
    "hate", "panic", "misery", "wrong",
)

BOOSTER_WORDS = ("very", "really", "extremely", "quite", "so", "incredibly", "absolutely")
NEGATOR_WORDS = ("not", "never", "no", "dont", "wont", "isnt", "wasnt", "without")
FILLER_WORDS = (
    "the", "a", "of", "to", "in", "and", "for", "with", "on", "about",
    "this", "that", "from", "they", "will", "people", "region", "report",
    "today", "again", "still", "town", "city", "front", "winter", "road",
)

EMOTICONS = (":)", ":(", ":D", "<3")
EMOJI = ("😀", "😢", "🙂", "😠")
CHANNELS = ("WorldWatch", "FrontlineDaily", "GlobalDesk", "CivicLens", "BorderReport")
JUNK_TEXTS = ("!!!", "???", "12345", "....", "#@%&")

_BASE_TIME = datetime(2022, 9, 1, 12, 0, 0, tzinfo=timezone.utc)


def _rng(seed: int) -> np.random.RandomState:
    return np.random.RandomState(seed % (2**32))


def _pick(rng: np.random.RandomState, pool: tuple[str, ...]) -> str:
    return pool[int(rng.randint(len(pool)))]


def _sentence(rng: np.random.RandomState, theme: str, polarity: str) -> str:
    words: list[str] = []
    for _ in range(int(rng.randint(2, 5))):
        words.append(_pick(rng, FILLER_WORDS))
    for _ in range(int(rng.randint(2, 5))):
        words.append(_pick(rng, THEMES[theme]))
    if polarity != "neu":
        pool = POSITIVE_WORDS if polarity == "pos" else NEGATIVE_WORDS
        for _ in range(int(rng.randint(1, 4))):
            chunk: list[str] = []
            roll = rng.random_sample()
            if roll < 0.15:
                # Negated opposite-polarity word flips toward the target class.
                opposite = NEGATIVE_WORDS if polarity == "pos" else POSITIVE_WORDS
                chunk = [_pick(rng, NEGATOR_WORDS), _pick(rng, opposite)]
            elif roll < 0.40:
                chunk = [_pick(rng, BOOSTER_WORDS), _pick(rng, pool)]
            else:
                chunk = [_pick(rng, pool)]
            if rng.random_sample() < 0.08:
                chunk[-1] = chunk[-1].upper()
            insert_at = int(rng.randint(len(words) + 1))
            words[insert_at:insert_at] = chunk
    text = " ".join(words)
    ending = rng.random_sample()
    if polarity == "pos" and ending < 0.25:
        text += "!"
    elif polarity == "neg" and ending < 0.2:
        text += "!!"
    elif ending < 0.3:
        text += "?"
    else:
        text += "."
    return text[0].upper() + text[1:]


def _comment_text(rng: np.random.RandomState, theme: str, polarity: str) -> str:
    sentences = [_sentence(rng, theme, polarity) for _ in range(int(rng.randint(1, 4)))]
    text = " ".join(sentences)
    extras = rng.random_sample()
    if extras < 0.04:
        text += f" {_pick(rng, EMOTICONS)}"
    elif extras < 0.08:
        text += f" {_pick(rng, EMOJI)}"
    if rng.random_sample() < 0.03:
        text += " see https://example.org/report-" + str(int(rng.randint(100, 999)))
    return text


def generate_corpus(n: int, seed: int = 20220901) -> list[dict]:
    """``n`` raw comment records in the ingest JSONL schema, seed-determined."""
    rng = _rng(seed)
    theme_names = tuple(THEMES)
    records: list[dict] = []
    for i in range(n):
        theme = theme_names[int(rng.randint(len(theme_names)))]
        polarity = ("pos", "neg", "neu")[
            int(rng.choice(3, p=[0.38, 0.40, 0.22]))
        ]
        roll = rng.random_sample()
        if roll < 0.01:
            text = JUNK_TEXTS[int(rng.randint(len(JUNK_TEXTS)))]
        elif roll < 0.025 and records:
            text = records[int(rng.randint(len(records)))]["text"]
        else:
            text = _comment_text(rng, theme, polarity)
        lang_roll = rng.random_sample()
        if lang_roll < 0.94:
            lang = "en"
        elif lang_roll < 0.99:
            lang = "en-US"
        else:
            lang = ("uk", "de", "pl")[int(rng.randint(3))]
        published = _BASE_TIME + timedelta(minutes=int(rng.randint(0, 60 * 24 * 90)))
        records.append(
            {
                "id": f"c{i:06d}",
                "channel": _pick(rng, CHANNELS),
                "video_id": f"v{int(rng.randint(0, 40)):03d}",
                "published_at": published.isoformat().replace("+00:00", "Z"),
                "text": text,
                "lang": lang,
            }
        )
    return records


PLANTED_GROUP_A = (
    "artillery", "trench", "convoy", "bunker", "mortar", "shrapnel", "ridge", "flank",
)
PLANTED_GROUP_B = (
    "tariff", "embargo", "ledger", "subsidy", "auction", "quota", "invoice", "surplus",
)


def planted_topics_corpus(
    n_docs: int = 40, tokens_per_doc: int = 25, seed: int = 7
) -> list[CleanComment]:
    """Two-topic corpus with disjoint vocabularies; first half A, second half B."""
    if n_docs % 2:
        raise ValueError("n_docs must be even so both groups get equal halves")
    rng = _rng(seed)
    docs: list[CleanComment] = []
    for i in range(n_docs):
        group = PLANTED_GROUP_A if i < n_docs // 2 else PLANTED_GROUP_B
        tokens = tuple(group[int(j)] for j in rng.randint(0, len(group), size=tokens_per_doc))
        docs.append(
            CleanComment(
                id=f"p{i:03d}",
                text=" ".join(tokens),
                tokens=tokens,
                dropped=False,
            )
        )
    return docs
