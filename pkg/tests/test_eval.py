import numpy as np
import pytest

from moledit.corpus import CorpusRecord, build_index
from moledit.corruption import InfillResult, InfillValidity, MaskPlan
from moledit.evaluation import (
    EditJob,
    EditOutcome,
    baseline_eligible,
    baseline_scan,
    bag_difference,
    enumerate_spans,
    novelty,
    run_edit_job,
    token_preference,
    write_report,
    write_token_preferences,
)
from moledit.model import ModelState, ModelConfig
from moledit.properties import PropertyBucket, get_spec
from moledit.vocab import TokenSequence


# --- span enumeration --------------------------------------------------------


def test_enumerate_spans_formula():
    for n in range(1, 60):
        expected = sum(max(0, n - length + 1) for length in range(1, 6))
        assert len(enumerate_spans(n)) == expected, n


def test_enumerate_spans_order_and_validity():
    plans = enumerate_spans(6)
    assert plans[0].spans == ((0, 1),)
    seen = set()
    for plan in plans:
        assert len(plan.spans) == 1
        plan.validate_for(6)
        assert plan.spans not in seen
        seen.add(plan.spans)


def test_enumerate_spans_rejects_empty():
    with pytest.raises(ValueError):
        enumerate_spans(0)


# --- baseline eligibility ----------------------------------------------------


def _splice_oracle(source, candidate, max_span=5):
    """Exhaustive: does some <=max_span source span replacement yield candidate?"""
    s, c = source, candidate
    if s == c:
        return False
    for start in range(len(s) + 1):
        for end in range(start, min(start + max_span, len(s)) + 1):
            tail = len(s) - end
            if len(c) < start + tail:
                continue
            if c[:start] == s[:start] and (tail == 0 or c[-tail:] == s[-tail:]):
                return True
    return False


def _random_pair(rng, vmax=30):
    n = int(rng.integers(1, 21))
    s = [int(x) for x in rng.integers(0, vmax, size=n)]
    if rng.random() < 0.6:
        start = int(rng.integers(0, n))
        length = int(rng.integers(0, min(8, n - start) + 1))
        repl = [int(x) for x in rng.integers(0, vmax, size=int(rng.integers(0, 7)))]
        c = s[:start] + repl + s[start + length:]
        if not c:
            c = [0]
    else:
        c = [int(x) for x in rng.integers(0, vmax, size=int(rng.integers(1, 21)))]
    return s, c


def test_baseline_eligible_matches_oracle():
    rng = np.random.default_rng(0)
    for _ in range(500):
        s, c = _random_pair(rng)
        got = baseline_eligible(
            TokenSequence("v", tuple(s)), TokenSequence("v", tuple(c))
        )
        assert got == _splice_oracle(s, c), (s, c)


def test_baseline_eligible_rejects_self():
    seq = TokenSequence("v", (1, 2, 3))
    assert not baseline_eligible(seq, seq)


def test_bag_difference():
    a = TokenSequence("v", (1, 1, 2, 3))
    b = TokenSequence("v", (1, 2, 2, 4))
    assert bag_difference(a, b) == 4
    assert bag_difference(a, a) == 0


def _rec(vocab, name, value=None):
    tokens = vocab.tokenize(name)
    if value is None:
        from moledit.properties import proxy_property

        value = proxy_property(vocab, tokens)
    return CorpusRecord(name, tokens, value)


def test_baseline_scan_hand_corpus(vocab):
    source = _rec(vocab, "2-decylpentane")
    corpus = [
        source,  # identical: never eligible
        _rec(vocab, "2-tritylpentane", 9.0),  # one-span swap
        # shares only the trailing "ane": still one (5-token) span replacement
        _rec(vocab, "3-sulfohexane", -4.0),
        _rec(vocab, "2-decylhexane", 7.0),  # tail swap
    ]
    count, lo, hi = baseline_scan(source, corpus)
    assert count == 3
    assert lo == -4.0 and hi == 9.0


def test_baseline_scan_prefilters_do_not_change_result(vocab, small_corpus):
    for source in small_corpus[:5]:
        strict = baseline_scan(source, small_corpus[:200])
        loose = baseline_scan(
            source, small_corpus[:200], length_window=10**6, bag_window=10**6
        )
        assert strict == loose


# --- novelty -----------------------------------------------------------------


def _outcome(name, validity=InfillValidity.Valid):
    seq = TokenSequence("v", (0,))
    result = InfillResult(
        seq, validity,
        reconstructed=seq if validity != InfillValidity.RoundTripFail else None,
        candidate_name=name,
    )
    return EditOutcome(MaskPlan(((0, 1),)), result, None)


def test_novelty_hand_fixture(vocab):
    source = _rec(vocab, "2-decylpentane")
    index = build_index(
        [_rec(vocab, "known-a", 0.0), _rec(vocab, "known-b", 0.0)], vocab
    )
    outcomes = [
        _outcome("known-a"),
        _outcome("known-b"),
        _outcome("fresh-1"),
        _outcome("fresh-2"),
        _outcome("2-decylpentane"),  # equals source: excluded
    ]
    assert novelty(outcomes, index, source) == pytest.approx(2 / 4)


def test_novelty_counts_invalid_names(vocab):
    source = _rec(vocab, "2-decylpentane")
    index = build_index([_rec(vocab, "known-a", 0.0)], vocab)
    outcomes = [
        _outcome("known-a", InfillValidity.RoundTripFail),
        _outcome("fresh-1", InfillValidity.RoundTripFail),
    ]
    assert novelty(outcomes, index, source) == pytest.approx(1 / 2)


def test_novelty_ignores_identity_and_empty(vocab):
    source = _rec(vocab, "2-decylpentane")
    index = build_index([source], vocab)
    assert novelty([], index, source) == 0.0
    outcomes = [_outcome("2-decylpentane", InfillValidity.Identity)]
    assert novelty(outcomes, index, source) == 0.0


# --- token preference --------------------------------------------------------


def _frag_outcome(frag_ids):
    seq = TokenSequence("v", (0,))
    result = InfillResult(
        seq, InfillValidity.Valid, reconstructed=seq,
        fragments=(tuple(frag_ids),), candidate_name="x",
    )
    return EditOutcome(MaskPlan(((0, 1),)), result, None)


def test_token_preference_math(vocab, small_corpus, small_index):
    dec = vocab.id_of("dec")
    yl = vocab.id_of("yl")
    outcomes = {
        PropertyBucket.High: [_frag_outcome([dec, yl]), _frag_outcome([dec])],
    }
    rows = token_preference(outcomes, small_index, vocab)
    by_id = {r.token_id: r for r in rows}
    assert by_id[dec].observed_rate == pytest.approx(2 / 3)
    assert by_id[yl].observed_rate == pytest.approx(1 / 3)
    assert by_id[dec].multiplier == pytest.approx(
        (2 / 3) / small_index.freq(dec)
    )
    assert [r.multiplier for r in rows] == sorted(
        (r.multiplier for r in rows), reverse=True
    )


def test_token_preference_skips_zero_frequency(vocab, small_index):
    # Pick a token never used in the synthetic corpus.
    absent = next(
        t for t in range(vocab.n_content) if small_index.freq(t) == 0
    )
    outcomes = {PropertyBucket.High: [_frag_outcome([absent])]}
    assert token_preference(outcomes, small_index, vocab) == []


def test_token_preference_ignores_invalid(vocab, small_index):
    seq = TokenSequence("v", (0,))
    bad = EditOutcome(
        MaskPlan(((0, 1),)),
        InfillResult(seq, InfillValidity.SentinelMismatch),
        None,
    )
    assert token_preference({PropertyBucket.Low: [bad]}, small_index, vocab) == []


# --- edit jobs and report emission -------------------------------------------


def test_run_edit_job_requires_training(vocab, small_corpus):
    state = ModelState(
        ModelConfig(vocab_size=vocab.size, layers=1, heads=2, model_dim=16,
                    ff_dim=32),
        {},
    )
    job = EditJob(small_corpus[0], PropertyBucket.High)
    with pytest.raises(ValueError, match="untrained"):
        run_edit_job(job, state, vocab, get_spec("proxy"))


def test_run_edit_job_outcomes(vocab, tiny_model, small_corpus):
    job = EditJob(small_corpus[0], PropertyBucket.High, span_lengths=range(1, 3))
    outcomes = run_edit_job(job, tiny_model, vocab, get_spec("proxy"))
    n_plans = len(enumerate_spans(len(small_corpus[0].tokens), range(1, 3)))
    assert 0 < len(outcomes) <= n_plans
    for o in outcomes:
        assert o.result.validity != InfillValidity.Identity
        if o.result.validity == InfillValidity.Valid:
            assert o.property_value is not None


def test_multi_span_jobs(vocab, tiny_model, small_corpus):
    job = EditJob(
        small_corpus[0], PropertyBucket.Low,
        span_lengths=range(1, 2), multi_span=True,
    )
    outcomes = run_edit_job(job, tiny_model, vocab, get_spec("proxy"))
    single = run_edit_job(
        EditJob(small_corpus[0], PropertyBucket.Low, span_lengths=range(1, 2)),
        tiny_model, vocab, get_spec("proxy"),
    )
    assert len(outcomes) >= len(single)


def test_report_files(tmp_path):
    from moledit.evaluation import EvalRow, TokenPreferenceRow

    rows = [EvalRow("a", "<high>", 3, 50.0, 66.7, 1.5, -2.0, 4, 9.0, -1.0)]
    prefs = [TokenPreferenceRow(1, "dec", "<high>", 0.5, 0.1, 5.0)]
    write_report(tmp_path / "report.tsv", rows)
    write_token_preferences(tmp_path / "tp.tsv", prefs)
    lines = (tmp_path / "report.tsv").read_text().splitlines()
    assert len(lines) == 2
    assert len(lines[0].split("\t")) == len(lines[1].split("\t")) == 10
    tp = (tmp_path / "tp.tsv").read_text().splitlines()
    assert len(tp) == 2
    assert tp[1].split("\t")[0] == "dec"
