"""FastAPI application exposing POST /embed and GET /health."""

from __future__ import annotations

from dataclasses import dataclass

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .encoder import DEFAULT_MODEL_ID, REQUIRED_DIMENSION, encode_texts, load_encoder

DEFAULT_MAX_BATCH = 64


@dataclass
class ServerConfig:
    model_id: str = DEFAULT_MODEL_ID
    host: str = "127.0.0.1"
    port: int = 8090
    max_batch_size: int = DEFAULT_MAX_BATCH


class EmbedRequest(BaseModel):
    texts: list[str]


def create_app(config: ServerConfig | None = None, model=None) -> FastAPI:
    """Build the service; the model loads eagerly unless one is injected."""
    config = config or ServerConfig()
    app = FastAPI(title="survey embedding service")
    app.state.config = config
    app.state.model = model if model is not None else load_encoder(config.model_id)

    @app.get("/health")
    def health():
        if app.state.model is None:
            return JSONResponse(status_code=503, content={"status": "loading"})
        return {"status": "ok", "model_id": config.model_id, "dim": REQUIRED_DIMENSION}

    @app.post("/embed")
    def embed(request: EmbedRequest):
        if app.state.model is None:
            return JSONResponse(status_code=503, content={"error": "model not loaded"})
        texts = request.texts
        if len(texts) == 0:
            return JSONResponse(status_code=400, content={"error": "texts is empty"})
        if len(texts) > config.max_batch_size:
            return JSONResponse(
                status_code=400,
                content={"error": f"batch of {len(texts)} exceeds max {config.max_batch_size}"},
            )
        if any(t == "" for t in texts):
            return JSONResponse(status_code=400, content={"error": "empty string in texts"})
        embeddings = encode_texts(app.state.model, texts)
        return {"dim": REQUIRED_DIMENSION, "embeddings": embeddings}

    return app
