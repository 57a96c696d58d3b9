"""A small encoder-decoder attention model over token ids, trained from
scratch on span-corruption examples.

Everything is float64 numpy with hand-written backprop so that training is
bit-deterministic on the single-threaded path and the analytic gradients can
be checked against finite differences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .corpus import CorpusRecord
from .corruption import (
    CorruptionExample,
    MAX_CONTENT_TOKENS,
    corrupt,
    sample_mask_plan,
)
from .properties import PropertySpec
from .vocab import TokenSequence, TokenVocabulary

CHECKPOINT_VERSION = 1
_NEG_INF = -1e30


class ModelError(Exception):
    pass


@dataclass(frozen=True)
class ModelConfig:
    vocab_size: int
    layers: int = 2
    heads: int = 4
    model_dim: int = 128
    ff_dim: int = 256
    max_encoder_len: int = MAX_CONTENT_TOKENS + 32  # property token + sentinels margin
    max_decoder_len: int = 64
    dropout: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.model_dim % self.heads != 0:
            raise ModelError("model_dim must be divisible by heads")
        if min(self.layers, self.heads, self.model_dim, self.ff_dim) < 1:
            raise ModelError("all dims must be >= 1")


@dataclass(frozen=True)
class TrainSchedule:
    max_learning_rate: float = 3e-3
    warmup_steps: int = 100
    batch_size: int = 16
    steps: int = 2000
    weight_decay: float = 0.01

    def lr(self, step: int) -> float:
        """Linear warmup to max, then 1/T decay; continuous at the boundary."""
        if step <= self.warmup_steps:
            return self.max_learning_rate * step / max(self.warmup_steps, 1)
        return self.max_learning_rate * self.warmup_steps / step


def _init_params(config: ModelConfig) -> dict[str, np.ndarray]:
    rng = np.random.default_rng(config.seed)
    d, ff, V = config.model_dim, config.ff_dim, config.vocab_size
    scale = 0.02

    def mat(*shape):
        return rng.normal(0.0, scale, size=shape)

    params: dict[str, np.ndarray] = {
        "enc_embed": mat(V, d),
        "dec_embed": mat(V, d),
        "out_proj": mat(d, V),
        "out_bias": np.zeros(V),
        "enc_final_ln_g": np.ones(d),
        "enc_final_ln_b": np.zeros(d),
        "dec_final_ln_g": np.ones(d),
        "dec_final_ln_b": np.zeros(d),
    }
    for side, n_attn in (("enc", 1), ("dec", 2)):
        for i in range(config.layers):
            p = f"{side}{i}"
            for a in range(n_attn):
                for w in ("q", "k", "v", "o"):
                    params[f"{p}_a{a}_W{w}"] = mat(d, d)
                params[f"{p}_a{a}_ln_g"] = np.ones(d)
                params[f"{p}_a{a}_ln_b"] = np.zeros(d)
            params[f"{p}_ff_W1"] = mat(d, ff)
            params[f"{p}_ff_b1"] = np.zeros(ff)
            params[f"{p}_ff_W2"] = mat(ff, d)
            params[f"{p}_ff_b2"] = np.zeros(d)
            params[f"{p}_ff_ln_g"] = np.ones(d)
            params[f"{p}_ff_ln_b"] = np.zeros(d)
    return params


def _positional_encoding(length: int, dim: int) -> np.ndarray:
    pos = np.arange(length)[:, None]
    i = np.arange(dim // 2)[None, :]
    angles = pos / np.power(10000.0, 2 * i / dim)
    pe = np.zeros((length, dim))
    pe[:, 0::2] = np.sin(angles)
    pe[:, 1::2] = np.cos(angles)
    return pe


# --- differentiable pieces ---------------------------------------------------


def _layer_norm(x, g, b, eps=1e-6):
    mu = x.mean(axis=-1, keepdims=True)
    var = x.var(axis=-1, keepdims=True)
    inv = 1.0 / np.sqrt(var + eps)
    xhat = (x - mu) * inv
    return g * xhat + b, (xhat, inv, g)


def _layer_norm_backward(dy, cache):
    xhat, inv, g = cache
    dxhat = dy * g
    dg = np.sum(dy * xhat, axis=tuple(range(dy.ndim - 1)))
    db = np.sum(dy, axis=tuple(range(dy.ndim - 1)))
    m = xhat.shape[-1]
    dx = (
        dxhat
        - dxhat.mean(axis=-1, keepdims=True)
        - xhat * np.mean(dxhat * xhat, axis=-1, keepdims=True)
    ) * inv
    return dx, dg, db


def _split_heads(x, heads):
    B, T, d = x.shape
    return x.reshape(B, T, heads, d // heads).transpose(0, 2, 1, 3)


def _merge_heads(x):
    B, h, T, dh = x.shape
    return x.transpose(0, 2, 1, 3).reshape(B, T, h * dh)


def _attention(q_in, kv_in, Wq, Wk, Wv, Wo, mask, heads):
    """mask: additive (B, 1, Tq, Tk) or broadcastable; 0 keep, -inf drop."""
    Q = _split_heads(q_in @ Wq, heads)
    K = _split_heads(kv_in @ Wk, heads)
    V = _split_heads(kv_in @ Wv, heads)
    dh = Q.shape[-1]
    scores = Q @ K.transpose(0, 1, 3, 2) / np.sqrt(dh) + mask
    scores -= scores.max(axis=-1, keepdims=True)
    expw = np.exp(scores)
    A = expw / expw.sum(axis=-1, keepdims=True)
    ctx = A @ V
    merged = _merge_heads(ctx)
    out = merged @ Wo
    cache = (q_in, kv_in, Q, K, V, A, merged, Wq, Wk, Wv, Wo, heads)
    return out, cache


def _attention_backward(dout, cache):
    q_in, kv_in, Q, K, V, A, merged, Wq, Wk, Wv, Wo, heads = cache
    dh = Q.shape[-1]
    dWo = merged.reshape(-1, merged.shape[-1]).T @ dout.reshape(-1, dout.shape[-1])
    dmerged = dout @ Wo.T
    dctx = _split_heads(dmerged, heads)
    dA = dctx @ V.transpose(0, 1, 3, 2)
    dV = A.transpose(0, 1, 3, 2) @ dctx
    dS = A * (dA - np.sum(dA * A, axis=-1, keepdims=True))
    dS /= np.sqrt(dh)
    dQ = dS @ K
    dK = dS.transpose(0, 1, 3, 2) @ Q
    dq_flat = _merge_heads(dQ)
    dk_flat = _merge_heads(dK)
    dv_flat = _merge_heads(dV)
    dWq = q_in.reshape(-1, q_in.shape[-1]).T @ dq_flat.reshape(-1, dq_flat.shape[-1])
    dWk = kv_in.reshape(-1, kv_in.shape[-1]).T @ dk_flat.reshape(-1, dk_flat.shape[-1])
    dWv = kv_in.reshape(-1, kv_in.shape[-1]).T @ dv_flat.reshape(-1, dv_flat.shape[-1])
    dq_in = dq_flat @ Wq.T
    dkv_in = dk_flat @ Wk.T + dv_flat @ Wv.T
    return dq_in, dkv_in, {"Wq": dWq, "Wk": dWk, "Wv": dWv, "Wo": dWo}


# --- the model ---------------------------------------------------------------


@dataclass
class ModelState:
    config: ModelConfig
    params: dict[str, np.ndarray]
    step: int = 0
    loss_curve: list[float] = field(default_factory=list)

    @staticmethod
    def init(config: ModelConfig) -> "ModelState":
        return ModelState(config, _init_params(config))


def _pad_mask(ids: np.ndarray, pad_id: int) -> np.ndarray:
    # (B, 1, 1, Tk) additive mask dropping pad keys
    return np.where(ids[:, None, None, :] == pad_id, _NEG_INF, 0.0)


def _causal_mask(T: int) -> np.ndarray:
    return np.where(np.tril(np.ones((T, T))) == 0, _NEG_INF, 0.0)[None, None]


def _forward_batch(state: ModelState, enc_ids: np.ndarray, dec_ids: np.ndarray):
    """Returns (logits, cache). enc_ids/dec_ids: int arrays (B, Te)/(B, Td)."""
    cfg = state.config
    P = state.params
    if enc_ids.max() >= cfg.vocab_size or dec_ids.max() >= cfg.vocab_size:
        raise ModelError("token id out of range")
    if enc_ids.shape[1] > cfg.max_encoder_len or dec_ids.shape[1] > cfg.max_decoder_len:
        raise ModelError("sequence length exceeds configured maximum")
    h = cfg.heads
    Te, Td = enc_ids.shape[1], dec_ids.shape[1]
    cache: dict = {"enc_ids": enc_ids, "dec_ids": dec_ids}

    x = P["enc_embed"][enc_ids] + _positional_encoding(Te, cfg.model_dim)
    enc_key_mask = None
    cache["enc_layers"] = []
    for i in range(cfg.layers):
        p = f"enc{i}"
        lc: dict = {}
        normed, lc["ln0"] = _layer_norm(x, P[f"{p}_a0_ln_g"], P[f"{p}_a0_ln_b"])
        attn, lc["attn0"] = _attention(
            normed, normed,
            P[f"{p}_a0_Wq"], P[f"{p}_a0_Wk"], P[f"{p}_a0_Wv"], P[f"{p}_a0_Wo"],
            0.0, h,
        )
        x = x + attn
        normed, lc["lnf"] = _layer_norm(x, P[f"{p}_ff_ln_g"], P[f"{p}_ff_ln_b"])
        hid = normed @ P[f"{p}_ff_W1"] + P[f"{p}_ff_b1"]
        relu = np.maximum(hid, 0.0)
        ffo = relu @ P[f"{p}_ff_W2"] + P[f"{p}_ff_b2"]
        lc["ff"] = (normed, hid, relu)
        x = x + ffo
        cache["enc_layers"].append(lc)
    enc_out, cache["enc_final_ln"] = _layer_norm(
        x, P["enc_final_ln_g"], P["enc_final_ln_b"]
    )
    cache["enc_out"] = enc_out

    cross_mask = _pad_mask(enc_ids, _pad_id_of(cfg))
    causal = _causal_mask(Td)
    y = P["dec_embed"][dec_ids] + _positional_encoding(Td, cfg.model_dim)
    cache["dec_layers"] = []
    for i in range(cfg.layers):
        p = f"dec{i}"
        lc = {}
        normed, lc["ln0"] = _layer_norm(y, P[f"{p}_a0_ln_g"], P[f"{p}_a0_ln_b"])
        attn, lc["attn0"] = _attention(
            normed, normed,
            P[f"{p}_a0_Wq"], P[f"{p}_a0_Wk"], P[f"{p}_a0_Wv"], P[f"{p}_a0_Wo"],
            causal, h,
        )
        y = y + attn
        normed, lc["ln1"] = _layer_norm(y, P[f"{p}_a1_ln_g"], P[f"{p}_a1_ln_b"])
        attn, lc["attn1"] = _attention(
            normed, enc_out,
            P[f"{p}_a1_Wq"], P[f"{p}_a1_Wk"], P[f"{p}_a1_Wv"], P[f"{p}_a1_Wo"],
            cross_mask, h,
        )
        y = y + attn
        normed, lc["lnf"] = _layer_norm(y, P[f"{p}_ff_ln_g"], P[f"{p}_ff_ln_b"])
        hid = normed @ P[f"{p}_ff_W1"] + P[f"{p}_ff_b1"]
        relu = np.maximum(hid, 0.0)
        ffo = relu @ P[f"{p}_ff_W2"] + P[f"{p}_ff_b2"]
        lc["ff"] = (normed, hid, relu)
        y = y + ffo
        cache["dec_layers"].append(lc)
    dec_out, cache["dec_final_ln"] = _layer_norm(
        y, P["dec_final_ln_g"], P["dec_final_ln_b"]
    )
    cache["dec_out"] = dec_out
    logits = dec_out @ P["out_proj"] + P["out_bias"]
    return logits, cache


def _pad_id_of(cfg: ModelConfig) -> int:
    # Fixed tail layout: ..., <pad>, <eos>, <unk>
    return cfg.vocab_size - 3


def _backward_batch(state: ModelState, cache, dlogits) -> dict[str, np.ndarray]:
    cfg = state.config
    P = state.params
    grads = {k: np.zeros_like(v) for k, v in P.items()}
    dec_out = cache["dec_out"]
    grads["out_proj"] += dec_out.reshape(-1, cfg.model_dim).T @ dlogits.reshape(
        -1, cfg.vocab_size
    )
    grads["out_bias"] += dlogits.sum(axis=(0, 1))
    dy = dlogits @ P["out_proj"].T

    dy, dg, db = _layer_norm_backward(dy, cache["dec_final_ln"])
    grads["dec_final_ln_g"] += dg
    grads["dec_final_ln_b"] += db

    denc_out = np.zeros_like(cache["enc_out"])
    for i in reversed(range(cfg.layers)):
        p = f"dec{i}"
        lc = cache["dec_layers"][i]
        normed, hid, relu = lc["ff"]
        dffo = dy
        grads[f"{p}_ff_W2"] += relu.reshape(-1, relu.shape[-1]).T @ dffo.reshape(
            -1, cfg.model_dim
        )
        grads[f"{p}_ff_b2"] += dffo.sum(axis=(0, 1))
        drelu = dffo @ P[f"{p}_ff_W2"].T
        dhid = drelu * (hid > 0)
        grads[f"{p}_ff_W1"] += normed.reshape(-1, cfg.model_dim).T @ dhid.reshape(
            -1, dhid.shape[-1]
        )
        grads[f"{p}_ff_b1"] += dhid.sum(axis=(0, 1))
        dnormed = dhid @ P[f"{p}_ff_W1"].T
        dx, dg, db = _layer_norm_backward(dnormed, lc["lnf"])
        grads[f"{p}_ff_ln_g"] += dg
        grads[f"{p}_ff_ln_b"] += db
        dy = dy + dx

        dq_in, dkv_in, aw = _attention_backward(dy, lc["attn1"])
        for w, g in aw.items():
            grads[f"{p}_a1_W{w[1]}"] += g
        denc_out += dkv_in
        dx, dg, db = _layer_norm_backward(dq_in, lc["ln1"])
        grads[f"{p}_a1_ln_g"] += dg
        grads[f"{p}_a1_ln_b"] += db
        dy = dy + dx

        dq_in, dkv_in, aw = _attention_backward(dy, lc["attn0"])
        for w, g in aw.items():
            grads[f"{p}_a0_W{w[1]}"] += g
        dx, dg, db = _layer_norm_backward(dq_in + dkv_in, lc["ln0"])
        grads[f"{p}_a0_ln_g"] += dg
        grads[f"{p}_a0_ln_b"] += db
        dy = dy + dx

    np.add.at(grads["dec_embed"], cache["dec_ids"], dy)

    dx, dg, db = _layer_norm_backward(denc_out, cache["enc_final_ln"])
    grads["enc_final_ln_g"] += dg
    grads["enc_final_ln_b"] += db
    de = dx
    for i in reversed(range(cfg.layers)):
        p = f"enc{i}"
        lc = cache["enc_layers"][i]
        normed, hid, relu = lc["ff"]
        grads[f"{p}_ff_W2"] += relu.reshape(-1, relu.shape[-1]).T @ de.reshape(
            -1, cfg.model_dim
        )
        grads[f"{p}_ff_b2"] += de.sum(axis=(0, 1))
        drelu = de @ P[f"{p}_ff_W2"].T
        dhid = drelu * (hid > 0)
        grads[f"{p}_ff_W1"] += normed.reshape(-1, cfg.model_dim).T @ dhid.reshape(
            -1, dhid.shape[-1]
        )
        grads[f"{p}_ff_b1"] += dhid.sum(axis=(0, 1))
        dnormed = dhid @ P[f"{p}_ff_W1"].T
        dx, dg, db = _layer_norm_backward(dnormed, lc["lnf"])
        grads[f"{p}_ff_ln_g"] += dg
        grads[f"{p}_ff_ln_b"] += db
        de = de + dx

        dq_in, dkv_in, aw = _attention_backward(de, lc["attn0"])
        for w, g in aw.items():
            grads[f"{p}_a0_W{w[1]}"] += g
        dx, dg, db = _layer_norm_backward(dq_in + dkv_in, lc["ln0"])
        grads[f"{p}_a0_ln_g"] += dg
        grads[f"{p}_a0_ln_b"] += db
        de = de + dx

    np.add.at(grads["enc_embed"], cache["enc_ids"], de)
    return grads


# --- public operations -------------------------------------------------------


def forward(
    state: ModelState, encoder: TokenSequence, decoder_prefix: TokenSequence
) -> np.ndarray:
    """Per-position next-token probability distributions, shape (Td, vocab)."""
    enc = np.asarray([encoder.ids], dtype=np.int64)
    dec = np.asarray([decoder_prefix.ids], dtype=np.int64)
    logits, _ = _forward_batch(state, enc, dec)
    z = logits[0] - logits[0].max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def _batch_arrays(
    examples: list[CorruptionExample], pad_id: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    Te = max(len(e.encoder_input) for e in examples)
    Td = max(len(e.decoder_target) for e in examples)
    B = len(examples)
    enc = np.full((B, Te), pad_id, dtype=np.int64)
    dec_in = np.full((B, Td), pad_id, dtype=np.int64)
    labels = np.full((B, Td), pad_id, dtype=np.int64)
    for b, ex in enumerate(examples):
        enc[b, : len(ex.encoder_input)] = ex.encoder_input.ids
        tgt = ex.decoder_target.ids
        dec_in[b, 1 : len(tgt)] = tgt[:-1]  # shifted right; <pad> acts as BOS
        labels[b, : len(tgt)] = tgt
    return enc, dec_in, labels


def _loss_and_dlogits(logits, labels, pad_id):
    z = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(z)
    probs = e / e.sum(axis=-1, keepdims=True)
    mask = labels != pad_id
    n = int(mask.sum())
    B, T, V = logits.shape
    picked = probs[np.arange(B)[:, None], np.arange(T)[None, :], labels]
    loss = float(-np.sum(np.log(np.maximum(picked, 1e-300)) * mask) / n)
    dlogits = probs.copy()
    dlogits[np.arange(B)[:, None], np.arange(T)[None, :], labels] -= 1.0
    dlogits *= mask[:, :, None] / n
    return loss, dlogits


def loss(state: ModelState, batch: list[CorruptionExample]) -> float:
    if not batch:
        raise ValueError("empty batch")
    pad = _pad_id_of(state.config)
    enc, dec_in, labels = _batch_arrays(batch, pad)
    logits, _ = _forward_batch(state, enc, dec_in)
    value, _ = _loss_and_dlogits(logits, labels, pad)
    return value


def loss_and_grads(
    state: ModelState, batch: list[CorruptionExample]
) -> tuple[float, dict[str, np.ndarray]]:
    pad = _pad_id_of(state.config)
    enc, dec_in, labels = _batch_arrays(batch, pad)
    logits, cache = _forward_batch(state, enc, dec_in)
    value, dlogits = _loss_and_dlogits(logits, labels, pad)
    grads = _backward_batch(state, cache, dlogits)
    return value, grads


@dataclass
class AdamW:
    schedule: TrainSchedule
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0

    def update(self, params: dict[str, np.ndarray], grads: dict[str, np.ndarray]) -> None:
        self.t += 1
        lr = self.schedule.lr(self.t)
        for k, g in grads.items():
            if k not in self.m:
                self.m[k] = np.zeros_like(g)
                self.v[k] = np.zeros_like(g)
            self.m[k] = self.beta1 * self.m[k] + (1 - self.beta1) * g
            self.v[k] = self.beta2 * self.v[k] + (1 - self.beta2) * g * g
            mhat = self.m[k] / (1 - self.beta1**self.t)
            vhat = self.v[k] / (1 - self.beta2**self.t)
            params[k] -= lr * (
                mhat / (np.sqrt(vhat) + self.eps)
                + self.schedule.weight_decay * params[k]
            )


def train(
    state: ModelState,
    corpus: list[CorpusRecord],
    spec: PropertySpec,
    schedule: TrainSchedule,
    rng: np.random.Generator,
    vocab: TokenVocabulary,
    log_every: int = 50,
    progress: bool = False,
) -> ModelState:
    """Span-corruption training; bucket comes from each record's true value."""
    usable = [r for r in corpus if not r.has_unk and len(r.tokens) >= 3]
    if not usable:
        raise ValueError("no trainable records")
    opt = AdamW(schedule)
    for step in range(1, schedule.steps + 1):
        idx = rng.integers(0, len(usable), size=schedule.batch_size)
        batch = []
        for j in idx:
            r = usable[int(j)]
            seq = r.tokens.truncated(MAX_CONTENT_TOKENS)
            plan = sample_mask_plan(rng, len(seq))
            bucket = spec.bucketize(r.property_value)
            batch.append(corrupt(vocab, seq, plan, bucket))
        value, grads = loss_and_grads(state, batch)
        opt.update(state.params, grads)
        state.step += 1
        if step % log_every == 0 or step == 1:
            state.loss_curve.append(value)
            if progress:
                print(f"step {step}: loss {value:.4f}")
    return state


@dataclass(frozen=True)
class DecodeResult:
    tokens: TokenSequence
    truncated: bool = False


def _decode_step(state, enc, dec_prefix):
    logits, _ = _forward_batch(
        state,
        np.asarray([enc], dtype=np.int64),
        np.asarray([dec_prefix], dtype=np.int64),
    )
    return logits[0, -1]


def _sentinel_count(vocab: TokenVocabulary, encoder: TokenSequence) -> int:
    return sum(1 for t in encoder.ids if vocab.is_sentinel(t))


def greedy_decode(
    state: ModelState,
    vocab: TokenVocabulary,
    encoder: TokenSequence,
    max_len: int = 48,
) -> DecodeResult:
    if not encoder.ids or not vocab.is_property_token(encoder.ids[0]):
        raise ValueError("encoder input must begin with a property token")
    stop_sentinel = vocab.sentinel_id(_sentinel_count(vocab, encoder) + 1)
    prefix = [vocab.pad_id]
    out: list[int] = []
    for _ in range(max_len):
        logits = _decode_step(state, list(encoder.ids), prefix)
        nxt = int(np.argmax(logits))  # argmax takes the lowest id on ties
        out.append(nxt)
        prefix.append(nxt)
        if nxt == vocab.eos_id or nxt == stop_sentinel:
            return DecodeResult(TokenSequence(encoder.vocab_version, tuple(out)))
    return DecodeResult(TokenSequence(encoder.vocab_version, tuple(out)), truncated=True)


def sample_decode(
    state: ModelState,
    vocab: TokenVocabulary,
    encoder: TokenSequence,
    temperature: float,
    rng: np.random.Generator,
    max_len: int = 48,
) -> DecodeResult:
    if temperature <= 0:
        raise ValueError("temperature must be > 0")
    if temperature <= 1e-6:
        return greedy_decode(state, vocab, encoder, max_len)
    stop_sentinel = vocab.sentinel_id(_sentinel_count(vocab, encoder) + 1)
    prefix = [vocab.pad_id]
    out: list[int] = []
    for _ in range(max_len):
        logits = _decode_step(state, list(encoder.ids), prefix) / temperature
        z = logits - logits.max()
        p = np.exp(z)
        p /= p.sum()
        nxt = int(rng.choice(len(p), p=p))
        out.append(nxt)
        prefix.append(nxt)
        if nxt == vocab.eos_id or nxt == stop_sentinel:
            return DecodeResult(TokenSequence(encoder.vocab_version, tuple(out)))
    return DecodeResult(TokenSequence(encoder.vocab_version, tuple(out)), truncated=True)


# --- checkpointing -----------------------------------------------------------


def save_checkpoint(path: str | Path, state: ModelState) -> None:
    meta = {
        "version": CHECKPOINT_VERSION,
        "config": asdict(state.config),
        "step": state.step,
        "loss_curve": state.loss_curve,
    }
    arrays = {f"param/{k}": v for k, v in state.params.items()}
    np.savez(path, __meta__=np.frombuffer(json.dumps(meta).encode(), dtype=np.uint8),
             **arrays)


def load_checkpoint(path: str | Path) -> ModelState:
    path = Path(path)
    if not path.is_file():
        raise ModelError(f"checkpoint not found: {path}")
    with np.load(path) as data:
        try:
            meta = json.loads(bytes(data["__meta__"]).decode())
        except (KeyError, ValueError) as exc:
            raise ModelError(f"not a model checkpoint: {path}") from exc
        if meta.get("version") != CHECKPOINT_VERSION:
            raise ModelError(
                f"incompatible checkpoint version {meta.get('version')!r} "
                f"(expected {CHECKPOINT_VERSION})"
            )
        params = {
            k.removeprefix("param/"): data[k] for k in data.files if k.startswith("param/")
        }
    config = ModelConfig(**meta["config"])
    state = ModelState(config, params, step=meta["step"])
    state.loss_curve = list(meta.get("loss_curve", []))
    return state
