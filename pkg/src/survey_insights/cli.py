"""Command-line front end: `survey-insights cluster` and `survey-insights assign`.

Exit codes: 0 success, 2 invalid arguments, 3 input parse failure,
4 provider failure, 5 too few responses, 6 empty titles file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .annotation import annotate_cluster
from .assignment import assign_labels, build_assignment_matrix
from .clustering import ClusteringConfig, find_optimal_k
from .embedding import (
    CacheEmbedder,
    EmbeddingProvider,
    HashEmbedder,
    ServiceEmbedder,
    embed_texts,
)
from .errors import (
    EmptyInput,
    MalformedInput,
    SurveyInsightsError,
    TooFewSamples,
)
from .insights import (
    centroid_correlation,
    cluster_stats,
    cluster_wordcloud,
    density_coefficients,
    suggest_merges,
    unified_wordcloud,
)
from .report import (
    SCHEMA_VERSION,
    SurveyInput,
    build_assign_report,
    build_cluster_report,
    load_survey,
    load_titles,
    report_to_json,
)
from .wordcloud_svg import render_wordcloud_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_PROVIDER = 4
EXIT_TOO_FEW = 5
EXIT_NO_TITLES = 6

MIN_CLUSTER_RESPONSES = 3


def make_provider(spec: str, dimension: int, seed: int) -> EmbeddingProvider:
    """Build a provider from an --embedder spec: hash | cache:PATH | service:URL."""
    if spec == "hash":
        return HashEmbedder(dimension=dimension, seed=seed)
    if spec.startswith("cache:"):
        return CacheEmbedder.from_file(spec[len("cache:"):])
    if spec.startswith("service:"):
        return ServiceEmbedder(spec[len("service:"):], dimension=dimension)
    raise argparse.ArgumentTypeError(
        f"unknown embedder {spec!r}; expected hash, cache:PATH, or service:URL"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="survey-insights",
        description="Cluster or assign open-ended survey responses in embedding space.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"survey-insights {__version__} (report schema {SCHEMA_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="responses file (JSONL or plain text)")
        p.add_argument("--embedder", default="hash", help="hash | cache:PATH | service:URL")
        p.add_argument("--dim", type=int, default=384, help="embedding dimension")
        p.add_argument("--seed", type=int, default=0, help="seed for hash embedding and k-means")
        p.add_argument("--out", default="insight_report.json", help="report JSON path")

    cluster = sub.add_parser("cluster", help="find and annotate an optimal clustering")
    common(cluster)
    cluster.add_argument("--k-min", type=int, default=2)
    cluster.add_argument("--k-max", type=int, default=None, help="default: min(20, m-1)")
    cluster.add_argument("--top-tokens", type=int, default=5, help="prominent tokens per cluster")
    cluster.add_argument("--merge-threshold", type=float, default=0.8)
    cluster.add_argument(
        "--light-stemming",
        action="store_true",
        help="fold plural 's' endings when extracting cluster tokens",
    )
    cluster.add_argument("--svg-dir", default="wordclouds", help="directory for SVG wordclouds")

    assign = sub.add_parser("assign", help="assign responses to provided topic titles")
    common(assign)
    assign.add_argument("--titles", required=True, help="titles file, one per line")
    return parser


def _build_provider(args: argparse.Namespace) -> EmbeddingProvider | int:
    """Provider for the run, or an exit code when construction fails."""
    try:
        return make_provider(args.embedder, args.dim, args.seed)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, SurveyInsightsError) as exc:
        print(f"error: provider failure: {exc}", file=sys.stderr)
        return EXIT_PROVIDER


def run_cluster_command(args: argparse.Namespace) -> int:
    try:
        survey = load_survey(args.input)
    except (OSError, MalformedInput) as exc:
        print(f"error: cannot read responses: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if len(survey.responses) < MIN_CLUSTER_RESPONSES:
        print(
            f"error: clustering needs at least {MIN_CLUSTER_RESPONSES} responses, "
            f"got {len(survey.responses)}",
            file=sys.stderr,
        )
        return EXIT_TOO_FEW
    provider = _build_provider(args)
    if isinstance(provider, int):
        return provider

    try:
        vectors = embed_texts(provider, survey.responses)
        try:
            config = ClusteringConfig(k_min=args.k_min, k_max=args.k_max, seed=args.seed)
            selection = find_optimal_k(vectors, config)
        except ValueError as exc:  # sweep range violates 2 <= k_min <= k_max <= m-1
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        model = selection.model

        members: dict[int, list[str]] = {}
        member_vectors: dict[int, list] = {}
        for i, label in enumerate(model.labels):
            members.setdefault(int(label), []).append(survey.responses[i])
            member_vectors.setdefault(int(label), []).append(vectors[i])

        annotations = [
            annotate_cluster(
                members[cid],
                provider,
                cluster_id=cid,
                top_n=args.top_tokens,
                light_stemming=args.light_stemming,
                sentence_vectors=member_vectors[cid],
            )
            for cid in sorted(members)
        ]
        stats = cluster_stats(members)
        rho = density_coefficients([len(members[cid]) for cid in sorted(members)],
                                   len(survey.responses))
        cluster_entries = [e for ann in annotations for e in cluster_wordcloud(ann)]
        unified_entries = unified_wordcloud(annotations, rho)
        correlation = centroid_correlation(list(model.centroids), args.merge_threshold)
        merges = suggest_merges(correlation)
        report = build_cluster_report(
            survey, provider, selection, annotations, stats, rho,
            cluster_entries, unified_entries, correlation, merges,
        )

        svgs: dict[str, str] = {}
        for ann in annotations:
            entries = cluster_wordcloud(ann)
            if entries:
                svgs[f"cluster_{ann.cluster_id}.svg"] = render_wordcloud_svg(entries)
        if unified_entries:
            svgs["unified.svg"] = render_wordcloud_svg(unified_entries)
    except TooFewSamples as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_FEW
    except SurveyInsightsError as exc:
        print(f"error: provider failure: {exc}", file=sys.stderr)
        return EXIT_PROVIDER

    # All computation is done; only now touch the filesystem.
    Path(args.out).write_text(report_to_json(report), encoding="utf-8")
    svg_dir = Path(args.svg_dir)
    svg_dir.mkdir(parents=True, exist_ok=True)
    for name, svg in svgs.items():
        (svg_dir / name).write_text(svg, encoding="utf-8")
    return EXIT_OK


def run_assign_command(args: argparse.Namespace) -> int:
    try:
        survey = load_survey(args.input)
        titles = load_titles(args.titles)
    except (OSError, MalformedInput) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if not titles:
        print("error: titles file contains no titles", file=sys.stderr)
        return EXIT_NO_TITLES
    survey = SurveyInput(responses=survey.responses, ids=survey.ids, titles=titles)
    provider = _build_provider(args)
    if isinstance(provider, int):
        return provider

    try:
        response_vectors = embed_texts(provider, survey.responses)
        title_vectors = embed_texts(provider, titles)
        matrix = build_assignment_matrix(response_vectors, title_vectors)
        result = assign_labels(matrix)
        report = build_assign_report(survey, provider, matrix, result)
    except EmptyInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SurveyInsightsError as exc:
        print(f"error: provider failure: {exc}", file=sys.stderr)
        return EXIT_PROVIDER

    Path(args.out).write_text(report_to_json(report), encoding="utf-8")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "cluster":
        return run_cluster_command(args)
    return run_assign_command(args)


if __name__ == "__main__":
    sys.exit(main())
