"""Command-line entry points: `embed-server serve` and `embed-server export`."""

from __future__ import annotations

import argparse
import sys

from .app import DEFAULT_MAX_BATCH, ServerConfig, create_app
from .encoder import DEFAULT_MODEL_ID
from .export import export_cache


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="embed-server")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the embedding HTTP service")
    serve.add_argument("--model", default=DEFAULT_MODEL_ID)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8090)
    serve.add_argument("--max-batch", type=int, default=DEFAULT_MAX_BATCH)

    export = sub.add_parser("export", help="embed a texts file into a cache file")
    export.add_argument("--input", required=True, help="texts file, one per line")
    export.add_argument("--out", required=True, help="cache file to write")
    export.add_argument("--model", default=DEFAULT_MODEL_ID)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        config = ServerConfig(
            model_id=args.model, host=args.host, port=args.port,
            max_batch_size=args.max_batch,
        )
        app = create_app(config)
        uvicorn.run(app, host=config.host, port=config.port, log_level="info")
        return 0

    try:
        count = export_cache(args.input, args.out, model_id=args.model)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {count} entries to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
