"""FastAPI application exposing the protocol endpoint.

Run locally with:  uvicorn hilbertvor.service.app:app --port 8017
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from .models import PROTOCOL_VERSION, ProtocolRequest, ProtocolResponse
from .session import SessionStore


def create_app() -> FastAPI:
    app = FastAPI(title="hilbertvor", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore()
    app.state.store = store

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "protocol_version": PROTOCOL_VERSION}

    @app.post("/protocol", response_model=ProtocolResponse, response_model_exclude_none=True)
    def protocol(req: ProtocolRequest) -> ProtocolResponse:
        return store.dispatch(req)

    return app


app = create_app()
