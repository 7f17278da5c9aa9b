"""Embedding-space clustering and insight extraction for open-ended survey responses."""

__version__ = "0.1.0"

from .annotation import (
    ClusterAnnotation,
    TokenSet,
    TokenWeight,
    annotate_cluster,
    preprocess_tokens,
    token_weights,
)
from .assignment import (
    AssignmentMatrix,
    AssignmentResult,
    assign_labels,
    build_assignment_matrix,
    label_similarity_stats,
)
from .clustering import (
    ClusteringConfig,
    ClusterModel,
    KSelectionResult,
    SilhouetteResult,
    find_optimal_k,
    kmeans,
    silhouette_score,
)
from .embedding import (
    CacheEmbedder,
    EmbeddingCache,
    EmbeddingProvider,
    HashEmbedder,
    ServiceEmbedder,
    cosine_similarity,
    embed_texts,
    hash_embed,
    load_cache,
    mean_embedding,
    save_cache,
)
from .insights import (
    CentroidCorrelation,
    ClusterStats,
    DensityCoefficients,
    WordcloudEntry,
    centroid_correlation,
    cluster_stats,
    cluster_wordcloud,
    density_coefficients,
    suggest_merges,
    unified_wordcloud,
)
from .report import SurveyInput, load_survey, load_titles, report_to_json
from .wordcloud_svg import layout_wordcloud, render_wordcloud_svg

__all__ = [
    "__version__",
    "AssignmentMatrix",
    "AssignmentResult",
    "CacheEmbedder",
    "CentroidCorrelation",
    "ClusterAnnotation",
    "ClusterModel",
    "ClusterStats",
    "ClusteringConfig",
    "DensityCoefficients",
    "EmbeddingCache",
    "EmbeddingProvider",
    "HashEmbedder",
    "KSelectionResult",
    "ServiceEmbedder",
    "SilhouetteResult",
    "SurveyInput",
    "TokenSet",
    "TokenWeight",
    "WordcloudEntry",
    "annotate_cluster",
    "assign_labels",
    "build_assignment_matrix",
    "centroid_correlation",
    "cluster_stats",
    "cluster_wordcloud",
    "cosine_similarity",
    "density_coefficients",
    "embed_texts",
    "find_optimal_k",
    "hash_embed",
    "kmeans",
    "label_similarity_stats",
    "layout_wordcloud",
    "load_cache",
    "load_survey",
    "load_titles",
    "mean_embedding",
    "preprocess_tokens",
    "render_wordcloud_svg",
    "report_to_json",
    "save_cache",
    "silhouette_score",
    "suggest_merges",
    "token_weights",
    "unified_wordcloud",
]
