"""Property specs, three-way bucketing, and the token-weight proxy oracle."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .vocab import TokenSequence, TokenVocabulary


class PropertyBucket(enum.IntEnum):
    Low = 0
    Med = 1
    High = 2

    @property
    def token(self) -> str:
        return _BUCKET_TOKENS[self]

    @staticmethod
    def from_token(token: str) -> "PropertyBucket":
        for bucket, tok in _BUCKET_TOKENS.items():
            if tok == token:
                return bucket
        raise ValueError(f"not a property token: {token!r}")


_BUCKET_TOKENS = {
    PropertyBucket.Low: "<low>",
    PropertyBucket.Med: "<med>",
    PropertyBucket.High: "<high>",
}


@dataclass(frozen=True)
class PropertySpec:
    """A named property with two cutoffs splitting values into three buckets.

    Half-open convention: Med covers [low_cut, high_cut), so every finite
    value lands in exactly one bucket.
    """

    name: str
    low_cut: float
    high_cut: float
    oracle: str  # "ingested" (values come with the corpus) or "proxy"

    def __post_init__(self) -> None:
        if not self.low_cut < self.high_cut:
            raise ValueError(f"low_cut {self.low_cut} must be < high_cut {self.high_cut}")

    def bucketize(self, value: float) -> PropertyBucket:
        if not math.isfinite(value):
            raise ValueError(f"cannot bucketize non-finite value {value!r}")
        if value < self.low_cut:
            return PropertyBucket.Low
        if value < self.high_cut:
            return PropertyBucket.Med
        return PropertyBucket.High


# Cutoffs for logP/logD/PSA/refractivity are the shipped druglikeness
# thresholds; logD reuses the logP cutoffs. The proxy spec shares the logP
# scale since its weights were tuned to mimic logP contributions.
REGISTRY: dict[str, PropertySpec] = {
    "logp": PropertySpec("logp", -0.4, 5.6, "ingested"),
    "logd": PropertySpec("logd", -0.4, 5.6, "ingested"),
    "psa": PropertySpec("psa", 90.0, 140.0, "ingested"),
    "refractivity": PropertySpec("refractivity", 40.0, 130.0, "ingested"),
    "proxy": PropertySpec("proxy", -0.4, 5.6, "proxy"),
}


def get_spec(name: str) -> PropertySpec:
    try:
        return REGISTRY[name.lower()]
    except KeyError:
        raise KeyError(
            f"unknown property {name!r}; choose from {sorted(REGISTRY)}"
        ) from None


def bucketize(spec: PropertySpec, value: float) -> PropertyBucket:
    return spec.bucketize(value)


def proxy_property(vocab: TokenVocabulary, seq: TokenSequence) -> float:
    """Sum of per-token hydro weights; additive over concatenation."""
    total = 0.0
    for pos, tid in enumerate(seq.ids):
        if vocab.is_special(tid):
            raise ValueError(
                f"special token {vocab.surface(tid)!r} at position {pos} has no property"
            )
        total += vocab.hydro_weight(tid)
    return total
