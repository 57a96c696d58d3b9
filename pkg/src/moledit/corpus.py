"""Corpus ingestion, the novelty/frequency index, and the synthetic generator.

The synthetic corpus is a desk-scale stand-in for a large molecule database:
pseudo-names are assembled from vocabulary surfaces so that the proxy oracle
is the ground-truth property by construction, which makes the conditional
signal learnable quickly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .properties import proxy_property
from .vocab import TokenSequence, TokenVocabulary


class CorpusError(Exception):
    pass


@dataclass(frozen=True)
class CorpusRecord:
    name: str
    tokens: TokenSequence
    property_value: float
    has_unk: bool = False


class CorpusIndex:
    """Exact name-membership set plus content-token frequencies."""

    def __init__(self, records: list[CorpusRecord], vocab: TokenVocabulary):
        self.name_set = frozenset(r.name for r in records)
        self.record_count = len(records)
        counts = np.zeros(vocab.size, dtype=np.int64)
        for r in records:
            for tid in r.tokens.ids:
                counts[tid] += 1
        total = counts.sum()
        self.token_counts = counts
        self.token_freq = counts / total if total > 0 else counts.astype(float)

    def contains(self, name: str) -> bool:
        return name in self.name_set

    def freq(self, token_id: int) -> float:
        return float(self.token_freq[token_id])


def build_index(records: list[CorpusRecord], vocab: TokenVocabulary) -> CorpusIndex:
    return CorpusIndex(records, vocab)


def ingest(
    path: str | Path, vocab: TokenVocabulary
) -> tuple[list[CorpusRecord], CorpusIndex, int]:
    """Read a `name<TAB>value` file. Returns (records, index, skipped_rows)."""
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"corpus file not found: {path}")
    records: list[CorpusRecord] = []
    skipped = 0
    with path.open(encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                skipped += 1
                continue
            name, raw_value = parts
            try:
                value = float(raw_value)
            except ValueError:
                skipped += 1
                continue
            if not name:
                skipped += 1
                continue
            tokens = vocab.tokenize(name)
            records.append(
                CorpusRecord(name, tokens, value, has_unk=vocab.unk_id in tokens.ids)
            )
    if not records:
        raise CorpusError(f"{path}: no valid rows")
    return records, CorpusIndex(records, vocab), skipped


def write_corpus(path: str | Path, records: list[CorpusRecord]) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write("# name<TAB>propertyValue\n")
        for r in records:
            fh.write(f"{r.name}\t{r.property_value:g}\n")


# --- synthetic generation ----------------------------------------------------

# Substituent prefixes grouped by the bucket they push a molecule towards.
HYDROPHOBIC_PAYLOADS = ["decyl", "undecyl", "dodecyl", "tridecyl", "pentadecyl",
                        "heptadecyl", "trityl"]
HYDROPHILIC_PAYLOADS = ["phospho", "phosphonato", "sulfinato", "sulfinam",
                        "sulfo", "hydrazon"]
NEUTRAL_PAYLOADS = ["methyl", "ethyl", "chloro", "fluoro", "nitro"]
NOISE_GROUPS = ["fluoro", "chloro", "hydroxy", "amino"]
STEMS = ["pent", "hex"]

# Oxyanion families planted so that skip-gram embeddings pick up an
# "ate minus ite" direction shared across families (analogy structure).
ANALOGY_FAMILIES = {
    "sulf": ("thio", "sulfate", "sulfite"),
    "phosph": ("phosphanyl", "phosphate", "phosphite"),
    "selen": ("selanyl", "selenate", "selenite"),
    "tellur": ("tellanyl", "tellurate", "tellurite"),
}
ATE_COMPANION = "oxo"
ITE_COMPANION = "hydroxy"

_REQUIRED_SURFACES = (
    HYDROPHOBIC_PAYLOADS[:1]
    + HYDROPHILIC_PAYLOADS
    + NEUTRAL_PAYLOADS
    + NOISE_GROUPS
    + ["pent", "hex", "ane", "oxy", "oxo", "dec", "yl", "-", "(", ")"]
)


def _check_vocab(vocab: TokenVocabulary) -> None:
    missing = []
    for surf in _REQUIRED_SURFACES:
        seq = vocab.tokenize(surf)
        if vocab.unk_id in seq.ids:
            missing.append(surf)
    if missing:
        raise CorpusError(f"vocabulary cannot spell synthetic surfaces: {missing}")


def _make_record(vocab: TokenVocabulary, name: str) -> CorpusRecord:
    tokens = vocab.tokenize(name)
    value = proxy_property(vocab, tokens)
    return CorpusRecord(name, tokens, value)


def generate_synthetic_corpus(
    vocab: TokenVocabulary, seed: int, size: int, analogy_fraction: float = 0.25
) -> list[CorpusRecord]:
    """Deterministic pseudo-name corpus whose property is the proxy oracle."""
    if size < 1:
        raise ValueError("size must be >= 1")
    _check_vocab(vocab)
    rng = np.random.default_rng(seed)
    records: list[CorpusRecord] = []
    family_keys = sorted(ANALOGY_FAMILIES)
    for _ in range(size):
        stem = STEMS[rng.integers(len(STEMS))]
        if rng.random() < analogy_fraction:
            fam = ANALOGY_FAMILIES[family_keys[rng.integers(len(family_keys))]]
            marker, ate, ite = fam
            if rng.random() < 0.5:
                variant, companion = ate, ATE_COMPANION
            else:
                variant, companion = ite, ITE_COMPANION
            loc = int(rng.integers(1, 7))
            name = f"{loc}-{marker}({companion}){variant}oxy{stem}ane"
        else:
            kind = rng.random()
            if kind < 0.36:
                payload = HYDROPHOBIC_PAYLOADS[rng.integers(len(HYDROPHOBIC_PAYLOADS))]
            elif kind < 0.68:
                payload = HYDROPHILIC_PAYLOADS[rng.integers(len(HYDROPHILIC_PAYLOADS))]
            else:
                payload = NEUTRAL_PAYLOADS[rng.integers(len(NEUTRAL_PAYLOADS))]
            l1 = int(rng.integers(1, 4))
            if rng.random() < 0.7:
                l2 = int(rng.integers(l1 + 1, l1 + 4))
                noise = NOISE_GROUPS[rng.integers(len(NOISE_GROUPS))]
                name = f"{l1}-{payload}-{l2}-{noise}{stem}ane"
            else:
                name = f"{l1}-{payload}{stem}ane"
        records.append(_make_record(vocab, name))
    return records


def payload_span(vocab: TokenVocabulary, record: CorpusRecord) -> tuple[int, int] | None:
    """(start, length) of the variable substituent in a substituent-style record.

    Returns None for analogy-drill records (they contain parentheses) and
    anything else not shaped like `loc - payload ...`.
    """
    if "(" in record.name:
        return None
    surfaces = [vocab.surface(t) for t in record.tokens.ids]
    if len(surfaces) < 4 or surfaces[1] != "-":
        return None
    end = len(surfaces) - 2  # stem + "ane" close every synthetic name
    for i in range(2, len(surfaces)):
        if surfaces[i] == "-":
            end = i
            break
    if end <= 2:
        return None
    return (2, end - 2)
