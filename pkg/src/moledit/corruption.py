"""Span corruption for conditional infilling, and splicing infills back in.

Encoder input: [property token, ...context with span i replaced by <s(i)>...]
Decoder target: <s1> span1-tokens <s2> span2-tokens ... <s(k+1)>
The trailing sentinel makes targets self-delimiting.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .properties import PropertyBucket
from .vocab import N_SENTINELS, TokenSequence, TokenVocabulary

MAX_CONTENT_TOKENS = 128


class CorruptionError(Exception):
    pass


@dataclass(frozen=True)
class MaskPlan:
    """Sorted, non-overlapping, non-adjacent (start, length) spans."""

    spans: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev_end = None
        for start, length in self.spans:
            if length < 1 or start < 0:
                raise CorruptionError(f"bad span ({start}, {length})")
            if prev_end is not None and start <= prev_end:
                # start == prev_end means adjacency: sentinels would merge
                raise CorruptionError(
                    f"span at {start} overlaps or touches the previous span"
                )
            prev_end = start + length
        if len(self.spans) > N_SENTINELS:
            raise CorruptionError(f"{len(self.spans)} spans exceed the sentinel supply")

    def masked_tokens(self) -> int:
        return sum(length for _, length in self.spans)

    def validate_for(self, seq_len: int) -> None:
        if self.spans and self.spans[-1][0] + self.spans[-1][1] > seq_len:
            raise CorruptionError(f"plan exceeds sequence of length {seq_len}")


@dataclass(frozen=True)
class CorruptionExample:
    encoder_input: TokenSequence
    decoder_target: TokenSequence
    source_bucket: PropertyBucket
    plan: MaskPlan


class InfillValidity(enum.Enum):
    Valid = "Valid"
    Identity = "Identity"
    SentinelMismatch = "SentinelMismatch"
    RoundTripFail = "RoundTripFail"


@dataclass(frozen=True)
class InfillResult:
    generated: TokenSequence
    validity: InfillValidity
    reconstructed: TokenSequence | None = None
    fragments: tuple[tuple[int, ...], ...] = ()
    # Name string of the spliced candidate whenever one is derivable —
    # including round-trip failures, so novelty can count invalid names too.
    candidate_name: str | None = None

    @property
    def usable(self) -> bool:
        return self.validity in (InfillValidity.Valid, InfillValidity.Identity)


def sample_mask_plan(
    rng: np.random.Generator,
    seq_len: int,
    mask_rate: float = 0.15,
    mean_span: float = 3.0,
    min_span: int = 1,
) -> MaskPlan:
    """Draw a plan masking ~mask_rate of tokens with mean-length spans.

    The masked budget round(mask_rate * seq_len) is split into
    round(budget / mean_span) spans via a uniform composition (each span at
    least min_span), then placed uniformly among all non-adjacent placements.
    """
    if seq_len < 3:
        raise ValueError("seq_len must be >= 3")
    budget = int(round(mask_rate * seq_len))
    if budget < min_span:
        return MaskPlan(())
    n = max(1, int(round(budget / mean_span)))
    # A plan with n spans needs budget + (n-1) separator tokens.
    while n > 1 and budget + n - 1 > seq_len:
        n -= 1
    extra = budget - n * min_span
    if extra < 0:
        n = budget // min_span
        extra = budget - n * min_span
    if n == 0:
        return MaskPlan(())
    # Uniform composition of `extra` into n parts (stars and bars).
    if n > 1:
        cuts = np.sort(rng.choice(extra + n - 1, size=n - 1, replace=False))
        bounds = np.concatenate(([-1], cuts, [extra + n - 1]))
        parts = np.diff(bounds) - 1
    else:
        parts = np.array([extra])
    lengths = [min_span + int(x) for x in parts]
    rng.shuffle(lengths)
    # Distribute the leftover slack uniformly over the n+1 gaps
    # (stars-and-bars via a sorted draw without replacement).
    free = seq_len - budget - (n - 1)
    dividers = np.sort(rng.choice(free + n, size=n, replace=False)) if n > 0 else []
    spans: list[tuple[int, int]] = []
    pos = 0
    prev = -1
    for i in range(n):
        gap = int(dividers[i]) - prev - 1
        prev = int(dividers[i])
        pos += gap + (1 if i > 0 else 0)
        spans.append((pos, lengths[i]))
        pos += lengths[i]
    return MaskPlan(tuple(spans))


def corrupt(
    vocab: TokenVocabulary,
    seq: TokenSequence,
    plan: MaskPlan,
    bucket: PropertyBucket,
) -> CorruptionExample:
    plan.validate_for(len(seq))
    if len(seq) > MAX_CONTENT_TOKENS:
        raise CorruptionError(
            f"sequence of {len(seq)} tokens exceeds the {MAX_CONTENT_TOKENS}-token cap"
        )
    enc: list[int] = [vocab.property_id(bucket.token)]
    tgt: list[int] = []
    cursor = 0
    for i, (start, length) in enumerate(plan.spans, start=1):
        enc.extend(seq.ids[cursor:start])
        enc.append(vocab.sentinel_id(i))
        tgt.append(vocab.sentinel_id(i))
        tgt.extend(seq.ids[start : start + length])
        cursor = start + length
    enc.extend(seq.ids[cursor:])
    tgt.append(vocab.sentinel_id(len(plan.spans) + 1))
    return CorruptionExample(
        encoder_input=TokenSequence(seq.vocab_version, tuple(enc)),
        decoder_target=TokenSequence(seq.vocab_version, tuple(tgt)),
        source_bucket=bucket,
        plan=plan,
    )


def _parse_generated(
    vocab: TokenVocabulary, generated: TokenSequence, n_spans: int
) -> list[tuple[int, ...]] | None:
    """Split decoder output into fragments; None when sentinels misalign."""
    ids = list(generated.ids)
    if vocab.eos_id in ids:
        ids = ids[: ids.index(vocab.eos_id)]
    fragments: list[tuple[int, ...]] = []
    expected = 1
    current: list[int] | None = None
    closed = False
    for tid in ids:
        if vocab.is_sentinel(tid):
            if tid != vocab.sentinel_id(expected):
                return None
            if expected > 1:
                fragments.append(tuple(current or ()))
            if expected == n_spans + 1:
                closed = True
                break
            expected += 1
            current = []
        else:
            if current is None or vocab.is_property_token(tid):
                return None
            current.append(tid)
    if not closed:
        return None
    return fragments


def apply_infill(
    vocab: TokenVocabulary,
    encoder_input: TokenSequence,
    generated: TokenSequence,
    source: TokenSequence | None = None,
) -> InfillResult:
    """Splice generated fragments into the masked encoder input.

    Classification: SentinelMismatch when the output does not parse against
    the encoder's sentinels; RoundTripFail when the reconstruction does not
    survive detokenize/tokenize; Identity when it equals `source`.
    """
    if not encoder_input.ids or not vocab.is_property_token(encoder_input.ids[0]):
        raise ValueError("encoder input must begin with a property token")
    n_spans = sum(1 for t in encoder_input.ids if vocab.is_sentinel(t))
    fragments = _parse_generated(vocab, generated, n_spans)
    if fragments is None:
        return InfillResult(generated, InfillValidity.SentinelMismatch)
    recon: list[int] = []
    frag_iter = iter(fragments)
    for tid in encoder_input.ids[1:]:
        if vocab.is_sentinel(tid):
            recon.extend(next(frag_iter))
        else:
            recon.append(tid)
    reconstructed = TokenSequence(encoder_input.vocab_version, tuple(recon))
    frag_tuple = tuple(fragments)
    if source is not None and reconstructed.ids == source.ids:
        return InfillResult(
            generated, InfillValidity.Identity, reconstructed, frag_tuple,
            vocab.detokenize(reconstructed),
        )
    try:
        name = vocab.detokenize(reconstructed)
    except ValueError:
        return InfillResult(generated, InfillValidity.RoundTripFail)
    if vocab.unk_id in reconstructed.ids or vocab.tokenize(name).ids != reconstructed.ids:
        return InfillResult(
            generated, InfillValidity.RoundTripFail, candidate_name=name
        )
    return InfillResult(
        generated, InfillValidity.Valid, reconstructed, frag_tuple, name
    )
