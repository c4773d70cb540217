"""Privacy-aware topic-wise sentiment pipeline for public comment corpora.

Stages: ingest -> preprocess -> rule-based sentiment labeling -> LDA topics
-> tf-idf features -> multinomial logistic classifier -> federated training
simulation -> Shapley attributions -> topic/sentiment reports.
"""

__version__ = "0.1.0"

from .errors import ConfigError, DataError, FedsentError, NumericError
from .sentilex import (
    Lexicon,
    ScoredComment,
    SentimentLabel,
    SentimentScore,
    compound_score,
    label_corpus,
    label_from_score,
    load_lexicon,
)

__all__ = [
    "ConfigError",
    "DataError",
    "FedsentError",
    "NumericError",
    "Lexicon",
    "ScoredComment",
    "SentimentLabel",
    "SentimentScore",
    "compound_score",
    "label_corpus",
    "label_from_score",
    "load_lexicon",
    "__version__",
]
