"""Edit-evaluation harness: span enumeration, validity/novelty accounting,
best-in-dataset baseline, and token-preference multipliers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .corpus import CorpusIndex, CorpusRecord
from .corruption import InfillResult, InfillValidity, MaskPlan, apply_infill, corrupt
from .model import ModelState, greedy_decode
from .properties import PropertyBucket, PropertySpec, proxy_property
from .vocab import TokenSequence, TokenVocabulary

DEFAULT_SPAN_LENGTHS = range(1, 6)


@dataclass(frozen=True)
class EditJob:
    source: CorpusRecord
    target_bucket: PropertyBucket
    span_lengths: range = DEFAULT_SPAN_LENGTHS
    multi_span: bool = False


@dataclass(frozen=True)
class EditOutcome:
    plan: MaskPlan
    result: InfillResult
    property_value: float | None


@dataclass
class EvalRow:
    source_name: str
    target_bucket: str
    generated_count: int = 0
    percent_novel: float = 0.0
    percent_valid: float = 0.0
    max_gen_property: float | None = None
    min_gen_property: float | None = None
    eligible_baseline_count: int = 0
    max_baseline_property: float | None = None
    min_baseline_property: float | None = None


def enumerate_spans(seq_len: int, lengths: range = DEFAULT_SPAN_LENGTHS) -> list[MaskPlan]:
    """All single-span plans with length in `lengths`, (start, length) order."""
    if seq_len < 1:
        raise ValueError("seq_len must be >= 1")
    plans = []
    for start in range(seq_len):
        for length in lengths:
            if start + length <= seq_len:
                plans.append(MaskPlan(((start, length),)))
    return plans


def _multi_span_plans(seq_len: int, lengths: range) -> list[MaskPlan]:
    """All non-adjacent two-span plans (evaluation extra, off by default)."""
    plans = []
    for s1 in range(seq_len):
        for l1 in lengths:
            if s1 + l1 >= seq_len:
                continue
            for s2 in range(s1 + l1 + 1, seq_len):
                for l2 in lengths:
                    if s2 + l2 <= seq_len:
                        plans.append(MaskPlan(((s1, l1), (s2, l2))))
    return plans


def run_edit_job(
    job: EditJob,
    state: ModelState,
    vocab: TokenVocabulary,
    spec: PropertySpec,
    max_decode_len: int = 48,
) -> list[EditOutcome]:
    """Mask every candidate span, infill with the target bucket, classify.

    Identity generations are excluded; a property value is attached to Valid
    reconstructions when the active spec has a computable oracle.
    """
    if state.step == 0:
        raise ValueError("model is untrained")
    seq = job.source.tokens
    plans = enumerate_spans(len(seq), job.span_lengths)
    if job.multi_span:
        plans += _multi_span_plans(len(seq), job.span_lengths)
    outcomes: list[EditOutcome] = []
    for plan in plans:
        example = corrupt(vocab, seq, plan, job.target_bucket)
        decoded = greedy_decode(state, vocab, example.encoder_input, max_decode_len)
        result = apply_infill(vocab, example.encoder_input, decoded.tokens, source=seq)
        if result.validity == InfillValidity.Identity:
            continue
        value = None
        if result.validity == InfillValidity.Valid and spec.oracle == "proxy":
            value = proxy_property(vocab, result.reconstructed)
        outcomes.append(EditOutcome(plan, result, value))
    return outcomes


def novelty(
    outcomes: list[EditOutcome],
    index: CorpusIndex,
    source: CorpusRecord,
) -> float:
    """Fraction of distinct candidate names absent from the index.

    Counts every non-Identity generation that yields a name, valid or not;
    unparseable generations contribute nothing.
    """
    names = {
        o.result.candidate_name
        for o in outcomes
        if o.result.candidate_name is not None
        and o.result.validity != InfillValidity.Identity
    }
    names.discard(source.name)
    if not names:
        return 0.0
    return sum(1 for n in names if not index.contains(n)) / len(names)


def baseline_eligible(
    source: TokenSequence, candidate: TokenSequence, max_span: int = 5
) -> bool:
    """Whether candidate is one <=max_span-token span replacement away.

    Decided by longest common prefix/suffix: the replaced region of the
    source is what remains outside them.
    """
    s, c = source.ids, candidate.ids
    if s == c:
        return False
    p = 0
    while p < len(s) and p < len(c) and s[p] == c[p]:
        p += 1
    q = 0
    limit = min(len(s), len(c)) - p
    while q < limit and s[len(s) - 1 - q] == c[len(c) - 1 - q]:
        q += 1
    return len(s) - p - q <= max_span


def bag_difference(a: TokenSequence, b: TokenSequence) -> int:
    """Size of the symmetric difference of the two token multisets."""
    ca, cb = Counter(a.ids), Counter(b.ids)
    return sum(abs(ca[t] - cb[t]) for t in set(ca) | set(cb))


def baseline_scan(
    source: CorpusRecord,
    corpus: list[CorpusRecord],
    max_span: int = 5,
    length_window: int = 15,
    bag_window: int = 15,
) -> tuple[int, float | None, float | None]:
    """Count corpus molecules reachable by one span replacement, with the
    property extrema over those eligibles. Cheap length/bag prefilters run
    before the exact check."""
    count = 0
    lo = hi = None
    for rec in corpus:
        if abs(len(rec.tokens) - len(source.tokens)) > length_window:
            continue
        if bag_difference(rec.tokens, source.tokens) > bag_window:
            continue
        if not baseline_eligible(source.tokens, rec.tokens, max_span):
            continue
        count += 1
        v = rec.property_value
        lo = v if lo is None else min(lo, v)
        hi = v if hi is None else max(hi, v)
    return count, lo, hi


@dataclass(frozen=True)
class TokenPreferenceRow:
    token_id: int
    surface: str
    target_bucket: str
    observed_rate: float
    baseline_rate: float
    multiplier: float


def token_preference(
    outcomes_by_bucket: dict[PropertyBucket, list[EditOutcome]],
    index: CorpusIndex,
    vocab: TokenVocabulary,
    top_k: int | None = None,
) -> list[TokenPreferenceRow]:
    """Rate of each token inside generated infill fragments, relative to its
    corpus frequency; rows sorted by multiplier, descending."""
    rows: list[TokenPreferenceRow] = []
    for bucket, outcomes in outcomes_by_bucket.items():
        counts: Counter[int] = Counter()
        total = 0
        for o in outcomes:
            if o.result.validity != InfillValidity.Valid:
                continue
            for frag in o.result.fragments:
                counts.update(frag)
                total += len(frag)
        if total == 0:
            continue
        bucket_rows = []
        for tid, n in counts.items():
            base = index.freq(tid)
            if base == 0:
                continue  # multiplier undefined
            observed = n / total
            bucket_rows.append(
                TokenPreferenceRow(
                    tid, vocab.surface(tid), bucket.token, observed, base, observed / base
                )
            )
        bucket_rows.sort(key=lambda r: (-r.multiplier, r.token_id))
        rows.extend(bucket_rows[:top_k] if top_k else bucket_rows)
    return rows


def evaluate_sources(
    sources: list[CorpusRecord],
    targets: list[PropertyBucket],
    state: ModelState,
    vocab: TokenVocabulary,
    spec: PropertySpec,
    index: CorpusIndex,
    corpus: list[CorpusRecord],
    span_lengths: range = DEFAULT_SPAN_LENGTHS,
) -> tuple[list[EvalRow], list[TokenPreferenceRow], dict[PropertyBucket, list[EditOutcome]]]:
    rows: list[EvalRow] = []
    by_bucket: dict[PropertyBucket, list[EditOutcome]] = {b: [] for b in targets}
    for src in sources:
        b_count, b_lo, b_hi = baseline_scan(src, corpus)
        for bucket in targets:
            job = EditJob(src, bucket, span_lengths)
            outcomes = run_edit_job(job, state, vocab, spec)
            by_bucket[bucket].extend(outcomes)
            n = len(outcomes)
            valid = [o for o in outcomes if o.result.validity == InfillValidity.Valid]
            values = [o.property_value for o in valid if o.property_value is not None]
            rows.append(
                EvalRow(
                    source_name=src.name,
                    target_bucket=bucket.token,
                    generated_count=n,
                    percent_novel=100.0 * novelty(outcomes, index, src),
                    percent_valid=100.0 * len(valid) / n if n else 0.0,
                    max_gen_property=max(values) if values else None,
                    min_gen_property=min(values) if values else None,
                    eligible_baseline_count=b_count,
                    max_baseline_property=b_hi,
                    min_baseline_property=b_lo,
                )
            )
    prefs = token_preference(by_bucket, index, vocab)
    return rows, prefs, by_bucket


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.4g}"


def write_report(path, rows: list[EvalRow]) -> None:
    header = (
        "source\ttarget\tgenerated\tpercent_novel\tpercent_valid\t"
        "max_gen\tmin_gen\teligible_baseline\tmax_baseline\tmin_baseline\n"
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header)
        for r in rows:
            fh.write(
                f"{r.source_name}\t{r.target_bucket}\t{r.generated_count}\t"
                f"{r.percent_novel:.1f}\t{r.percent_valid:.1f}\t"
                f"{_fmt(r.max_gen_property)}\t{_fmt(r.min_gen_property)}\t"
                f"{r.eligible_baseline_count}\t{_fmt(r.max_baseline_property)}\t"
                f"{_fmt(r.min_baseline_property)}\n"
            )


def write_token_preferences(path, rows: list[TokenPreferenceRow]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("token\ttarget\tobserved_rate\tbaseline_rate\tmultiplier\n")
        for r in rows:
            fh.write(
                f"{r.surface}\t{r.target_bucket}\t{r.observed_rate:.6g}\t"
                f"{r.baseline_rate:.6g}\t{r.multiplier:.4g}\n"
            )
