"""HTTP inference service backing the interactive editor.

All endpoints sit under /api/v1/. Requests run against an immutable model
snapshot; checkpoint hot-swap replaces the snapshot reference atomically so
every request observes exactly one model.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .corruption import CorruptionError, InfillValidity, MaskPlan, apply_infill, corrupt
from .model import (
    CHECKPOINT_VERSION,
    ModelState,
    greedy_decode,
    load_checkpoint,
    sample_decode,
)
from .properties import PropertyBucket, get_spec, proxy_property
from .vocab import TokenVocabulary


@dataclass(frozen=True)
class Snapshot:
    """One immutable (model, checkpoint path) pair served to all requests."""

    state: ModelState
    path: str


class TokenizeRequest(BaseModel):
    name: str


class TokenOut(BaseModel):
    surface: str
    class_: str = Field(alias="class")
    index: int

    model_config = {"populate_by_name": True}


class TokenizeResponse(BaseModel):
    tokens: list[TokenOut]
    hasUnknown: bool


class DecodeOptions(BaseModel):
    mode: Literal["greedy", "sample"] = "greedy"
    temperature: float = 1.0
    k: int = 1
    seed: int | None = None


class InfillRequest(BaseModel):
    name: str
    spans: list[tuple[int, int]]
    targetBucket: Literal["low", "med", "high"]
    decode: DecodeOptions = DecodeOptions()


class Candidate(BaseModel):
    name: str | None
    fragments: list[list[str]]
    validity: str
    propertyBefore: float
    propertyAfter: float | None
    bucketAfter: str | None


class InfillResponse(BaseModel):
    candidates: list[Candidate]


def create_app(
    vocab: TokenVocabulary,
    checkpoint_path: str | None = None,
    property_name: str = "proxy",
) -> FastAPI:
    app = FastAPI(title="moledit inference service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    spec = get_spec(property_name)
    lock = threading.Lock()  # guards swaps only; reads take the reference as-is
    app.state.snapshot = None
    if checkpoint_path is not None:
        app.state.snapshot = Snapshot(load_checkpoint(checkpoint_path), checkpoint_path)

    def swap_checkpoint(path: str) -> None:
        snap = Snapshot(load_checkpoint(path), path)
        with lock:
            app.state.snapshot = snap

    app.state.swap_checkpoint = swap_checkpoint

    @app.post("/api/v1/tokenize", response_model=TokenizeResponse,
              response_model_by_alias=True)
    def tokenize(req: TokenizeRequest) -> TokenizeResponse:
        if not req.name.strip():
            raise HTTPException(422, "name must be nonempty")
        seq = vocab.tokenize(req.name)
        tokens = [
            TokenOut(
                surface=vocab.surface(t),
                index=i,
                **{"class": vocab.token_class(t).value},
            )
            for i, t in enumerate(seq.ids)
        ]
        return TokenizeResponse(tokens=tokens, hasUnknown=vocab.unk_id in seq.ids)

    @app.post("/api/v1/infill", response_model=InfillResponse)
    def infill(req: InfillRequest) -> InfillResponse:
        snapshot: Snapshot | None = app.state.snapshot
        if snapshot is None:
            raise HTTPException(409, "no model checkpoint loaded")
        if not req.name.strip():
            raise HTTPException(422, "name must be nonempty")
        seq = vocab.tokenize(req.name)
        if vocab.unk_id in seq.ids:
            raise HTTPException(422, "name contains unknown fragments")
        try:
            plan = MaskPlan(tuple(sorted(req.spans)))
            plan.validate_for(len(seq))
        except CorruptionError as exc:
            raise HTTPException(422, f"invalid spans {req.spans}: {exc}") from None
        bucket = PropertyBucket.from_token(f"<{req.targetBucket}>")
        example = corrupt(vocab, seq, plan, bucket)
        before = proxy_property(vocab, seq)

        if req.decode.mode == "greedy":
            decoded = [greedy_decode(snapshot.state, vocab, example.encoder_input)]
        else:
            if req.decode.temperature <= 0:
                raise HTTPException(422, "temperature must be > 0")
            rng = np.random.default_rng(req.decode.seed)
            decoded = [
                sample_decode(
                    snapshot.state, vocab, example.encoder_input,
                    req.decode.temperature, rng,
                )
                for _ in range(max(req.decode.k, 1))
            ]

        seen: set[str | None] = set()
        candidates: list[Candidate] = []
        for d in decoded:
            result = apply_infill(vocab, example.encoder_input, d.tokens, source=seq)
            if result.candidate_name in seen and result.candidate_name is not None:
                continue
            seen.add(result.candidate_name)
            after = bucket_after = None
            if result.validity == InfillValidity.Valid:
                after = proxy_property(vocab, result.reconstructed)
                bucket_after = spec.bucketize(after).token
            candidates.append(
                Candidate(
                    name=result.candidate_name,
                    fragments=[
                        [vocab.surface(t) for t in frag] for frag in result.fragments
                    ],
                    validity=result.validity.value,
                    propertyBefore=before,
                    propertyAfter=after,
                    bucketAfter=bucket_after,
                )
            )

        def rank(c: Candidate):
            if c.propertyAfter is None:
                return (1, 0.0)
            if bucket == PropertyBucket.High:
                return (0, -c.propertyAfter)
            if bucket == PropertyBucket.Low:
                return (0, c.propertyAfter)
            return (0, abs(c.propertyAfter - (spec.low_cut + spec.high_cut) / 2))

        candidates.sort(key=rank)
        return InfillResponse(candidates=candidates)

    @app.get("/api/v1/vocab")
    def vocab_summary():
        return {
            "version": vocab.version,
            "size": vocab.size,
            "contentTokens": vocab.n_content,
            "classCounts": vocab.class_counts(),
        }

    @app.get("/api/v1/health")
    def health():
        snapshot: Snapshot | None = app.state.snapshot
        out = {"status": "ok"}
        if snapshot is not None:
            out["checkpointVersion"] = CHECKPOINT_VERSION
            out["modelStep"] = snapshot.state.step
        return out

    return app
