"""Cluster annotation: token extraction, centroid-similarity weighting, top-5 labels.

Each cluster's sentences are tokenized and filtered against the bundled
stopword list; every surviving token is weighted by the cosine similarity
between its embedding and the cluster centroid, and the five heaviest
tokens become the cluster label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from .embedding import (
    EmbeddingProvider,
    EmbeddingVector,
    cosine_similarity,
    embed_texts,
    mean_embedding,
    word_tokens,
)
from .errors import EmptyInput

DEFAULT_TOP_TOKENS = 5


def _load_stopwords() -> frozenset[str]:
    text = resources.files("survey_insights").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(w for w in text.split() if w)


STOPWORDS = _load_stopwords()


@dataclass
class TokenSet:
    """Unique non-stopword tokens of a cluster, with source occurrence counts."""

    cluster_id: int
    tokens: list[str]
    source_counts: dict[str, int] = field(default_factory=dict)


@dataclass
class TokenWeight:
    token: str
    weight: float  # cosine similarity to the cluster centroid, in [-1, 1]


@dataclass
class ClusterAnnotation:
    """Top prominent tokens of a cluster, heaviest first.

    no_tokens flags clusters whose sentences reduced entirely to stopwords;
    such annotations are recorded empty rather than raising.
    """

    cluster_id: int
    prominent: list[TokenWeight]
    label: str
    no_tokens: bool = False


def _light_stem(token: str) -> str:
    # Plural folding only: "acids" -> "acid". The ss/us/is/ies endings stay
    # untouched so "chemistry classes"-style traps ("class", "analysis",
    # "properties") never produce broken stems.
    if len(token) > 3 and token.endswith("s") and not token.endswith(("ss", "us", "is", "ies")):
        return token[:-1]
    return token


def preprocess_tokens(
    sentences: Sequence[str],
    cluster_id: int = 0,
    light_stemming: bool = False,
) -> TokenSet:
    """Lowercase, split on non-alphanumerics, and filter to content tokens.

    Drops tokens shorter than two characters, pure numbers, and bundled
    stopwords; deduplicates and counts occurrences. Empty strings contribute
    nothing. With light_stemming, plural "s" endings are folded onto their
    stem (counts merge).
    """
    if len(sentences) == 0:
        raise EmptyInput("preprocess_tokens needs at least one sentence")
    counts: dict[str, int] = {}
    for sentence in sentences:
        for token in word_tokens(sentence):
            if len(token) < 2 or token.isdigit() or token in STOPWORDS:
                continue
            if light_stemming:
                token = _light_stem(token)
            counts[token] = counts.get(token, 0) + 1
    return TokenSet(cluster_id=cluster_id, tokens=sorted(counts), source_counts=counts)


def token_weights(
    centroid: EmbeddingVector,
    token_set: TokenSet,
    provider: EmbeddingProvider,
) -> list[TokenWeight]:
    """Weight every token by cosine similarity to the cluster centroid.

    The centroid must be the mean embedding of the cluster's sentences.
    Returns weights sorted descending (ties broken alphabetically).
    """
    if not token_set.tokens:
        return []
    vectors = embed_texts(provider, token_set.tokens)
    weights = [
        TokenWeight(token=t, weight=cosine_similarity(centroid, v))
        for t, v in zip(token_set.tokens, vectors)
    ]
    weights.sort(key=lambda tw: (-tw.weight, tw.token))
    return weights


def annotate_cluster(
    cluster_sentences: Sequence[str],
    provider: EmbeddingProvider,
    cluster_id: int = 0,
    top_n: int = DEFAULT_TOP_TOKENS,
    light_stemming: bool = False,
    sentence_vectors: Sequence[EmbeddingVector] | None = None,
) -> ClusterAnnotation:
    """Annotate one cluster with its top-n centroid-similar tokens.

    sentence_vectors, when supplied, must be the embeddings of
    cluster_sentences in order (saves re-embedding what the clustering
    stage already computed).
    """
    if len(cluster_sentences) == 0:
        raise EmptyInput("cannot annotate an empty cluster")
    token_set = preprocess_tokens(
        cluster_sentences, cluster_id=cluster_id, light_stemming=light_stemming
    )
    if not token_set.tokens:
        return ClusterAnnotation(cluster_id=cluster_id, prominent=[], label="", no_tokens=True)
    if sentence_vectors is None:
        sentence_vectors = embed_texts(provider, list(cluster_sentences))
    centroid = mean_embedding(sentence_vectors)
    weights = token_weights(centroid, token_set, provider)
    prominent = weights[: min(top_n, len(weights))]
    label = ", ".join(tw.token for tw in prominent)
    return ClusterAnnotation(cluster_id=cluster_id, prominent=prominent, label=label)
