"""Skip-gram embeddings with negative sampling, nearest-neighbor and analogy
queries over tokenized name corpora."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import CorpusRecord
from .vocab import TokenVocabulary


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-x))


def sgns_loss_and_grad(
    v_center: np.ndarray, u_context: np.ndarray, u_negatives: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Negative-sampling loss for one (center, context, negatives) triple.

    Returns (loss, d/dv_center, d/du_context, d/du_negatives).
    """
    pos_score = float(u_context @ v_center)
    neg_scores = u_negatives @ v_center
    loss = -np.log(_sigmoid(pos_score)) - np.sum(np.log(_sigmoid(-neg_scores)))
    g_pos = _sigmoid(pos_score) - 1.0  # d loss / d pos_score
    g_neg = _sigmoid(neg_scores)  # d loss / d neg_scores
    grad_center = g_pos * u_context + g_neg @ u_negatives
    grad_context = g_pos * v_center
    grad_negatives = np.outer(g_neg, v_center)
    return float(loss), grad_center, grad_context, grad_negatives


@dataclass
class EmbeddingTable:
    dim: int
    vectors: np.ndarray  # vocab_size x dim input embeddings
    vocab_version: str
    trained_on: str = ""
    epoch_losses: list[float] = field(default_factory=list)

    def vector(self, token_id: int) -> np.ndarray:
        return self.vectors[token_id]


def train_embeddings(
    records: list[CorpusRecord],
    vocab: TokenVocabulary,
    dim: int = 64,
    window: int = 5,
    negatives: int = 5,
    epochs: int = 5,
    seed: int = 0,
    lr: float = 0.1,
) -> EmbeddingTable:
    """Single-threaded deterministic SGNS trainer."""
    if not records:
        raise ValueError("empty corpus")
    if dim < 2:
        raise ValueError("dim must be >= 2")
    rng = np.random.default_rng(seed)
    size = vocab.size
    W = (rng.random((size, dim)) - 0.5) / dim  # input vectors
    C = np.zeros((size, dim))  # context vectors

    counts = np.zeros(size, dtype=np.int64)
    sequences = []
    for r in records:
        ids = np.asarray(r.tokens.ids, dtype=np.int64)
        sequences.append(ids)
        np.add.at(counts, ids, 1)
    # Unigram^0.75 negative-sampling distribution over observed tokens.
    probs = counts.astype(float) ** 0.75
    probs /= probs.sum()

    # Precompute (center, contexts) once; windows never cross name boundaries.
    centers: list[int] = []
    context_lists: list[np.ndarray] = []
    for ids in sequences:
        n = len(ids)
        for i in range(n):
            lo, hi = max(0, i - window), min(n, i + window + 1)
            ctx = np.concatenate((ids[lo:i], ids[i + 1 : hi]))
            if len(ctx):
                centers.append(int(ids[i]))
                context_lists.append(ctx)
    n_pairs = sum(len(c) for c in context_lists)

    epoch_losses: list[float] = []
    for epoch in range(epochs):
        cur_lr = lr * (1.0 - epoch / epochs)
        neg_buffer = rng.choice(size, size=(n_pairs, negatives), p=probs)
        cursor = 0
        total_loss = 0.0
        # Updates are batched over one center's window; sequential across centers.
        for w, ctx in zip(centers, context_lists):
            m = len(ctx)
            negs = neg_buffer[cursor : cursor + m]
            cursor += m
            vw = W[w]
            pos_scores = C[ctx] @ vw
            neg_vecs = C[negs]  # m x K x d
            neg_scores = neg_vecs @ vw
            g_pos = _sigmoid(pos_scores) - 1.0
            g_neg = _sigmoid(neg_scores)
            total_loss += float(
                -np.sum(np.log(_sigmoid(pos_scores)))
                - np.sum(np.log(_sigmoid(-neg_scores)))
            )
            grad_w = g_pos @ C[ctx] + np.einsum("mk,mkd->d", g_neg, neg_vecs)
            np.add.at(C, ctx, -cur_lr * np.outer(g_pos, vw))
            np.add.at(
                C,
                negs.ravel(),
                -cur_lr * (g_neg[:, :, None] * vw).reshape(-1, dim),
            )
            W[w] = vw - cur_lr * grad_w
        epoch_losses.append(total_loss / max(n_pairs, 1))
    return EmbeddingTable(dim, W, vocab.version, f"corpus[{len(records)}]", epoch_losses)


def nearest(
    table: EmbeddingTable,
    query: np.ndarray,
    exclude: set[int] = frozenset(),
    k: int = 10,
) -> list[tuple[int, float]]:
    """Top-k by cosine similarity, descending; ties broken by ascending id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    qn = np.linalg.norm(query)
    if qn == 0:
        raise ValueError("zero-norm query")
    norms = np.linalg.norm(table.vectors, axis=1)
    safe = np.where(norms == 0, 1.0, norms)
    sims = (table.vectors @ query) / (safe * qn)
    sims[norms == 0] = -np.inf
    order = np.lexsort((np.arange(len(sims)), -sims))
    out: list[tuple[int, float]] = []
    for idx in order:
        if int(idx) in exclude:
            continue
        out.append((int(idx), float(sims[idx])))
        if len(out) == k:
            break
    return out


def analogy(table: EmbeddingTable, a: int, b: int, c: int) -> int:
    """Token nearest to v(a) - v(b) + v(c), excluding the three inputs."""
    query = table.vector(a) - table.vector(b) + table.vector(c)
    return nearest(table, query, exclude={a, b, c}, k=1)[0][0]


def class_purity(table: EmbeddingTable, vocab: TokenVocabulary, k: int = 10) -> float:
    """Mean fraction of top-k neighbors sharing the query token's class."""
    hits = 0
    total = 0
    for tid in range(vocab.n_content):
        cls = vocab.token_class(tid)
        for nb, _ in nearest(table, table.vector(tid), exclude={tid}, k=k):
            if nb < vocab.n_content:
                total += 1
                hits += vocab.token_class(nb) == cls
    return hits / total if total else 0.0


def save_embeddings(path: str | Path, table: EmbeddingTable, vocab: TokenVocabulary) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(f"{table.dim} {table.vocab_version}\n")
        for tid in range(vocab.size):
            vals = " ".join(repr(float(x)) for x in table.vectors[tid])
            fh.write(f"{vocab.surface(tid)}\t{vals}\n")


def load_embeddings(path: str | Path, vocab: TokenVocabulary) -> EmbeddingTable:
    with Path(path).open(encoding="utf-8") as fh:
        header = fh.readline().split()
        dim, version = int(header[0]), header[1]
        vectors = np.zeros((vocab.size, dim))
        for line in fh:
            surface, vals = line.rstrip("\n").split("\t")
            tid = (
                vocab.id_of(surface)
                if not surface.startswith("<")
                else next(
                    t for t in range(vocab.n_content, vocab.size)
                    if vocab.surface(t) == surface
                )
            )
            vectors[tid] = np.array([float(x) for x in vals.split(" ")])
    return EmbeddingTable(dim, vectors, version)
