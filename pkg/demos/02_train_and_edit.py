"""Train a small conditional infilling model and perform a zero-shot edit.

A synthetic corpus is generated whose property equals the token-weight proxy,
the model learns span infilling conditioned on a property bucket, and we then
mask the substituent of one molecule and ask for a <high> replacement.

Run: python3 demos/02_train_and_edit.py   (about a minute on one CPU)
"""

import numpy as np

from moledit import (
    InfillValidity,
    MaskPlan,
    ModelConfig,
    ModelState,
    TrainSchedule,
    apply_infill,
    corrupt,
    generate_synthetic_corpus,
    get_spec,
    greedy_decode,
    load_reference_vocabulary,
    proxy_property,
    train,
)
from moledit.corpus import payload_span
from moledit.properties import PropertyBucket

vocab = load_reference_vocabulary()
spec = get_spec("proxy")

records = generate_synthetic_corpus(vocab, seed=7, size=10000)
print(f"corpus: {len(records)} synthetic names, e.g. {records[0].name!r}")

config = ModelConfig(vocab_size=vocab.size, seed=1)
schedule = TrainSchedule(max_learning_rate=3e-3, warmup_steps=200,
                         batch_size=32, steps=2000)
state = ModelState.init(config)
print(f"training {schedule.steps} steps ...")
train(state, records[:9000], spec, schedule, np.random.default_rng(5), vocab,
      progress=True, log_every=400)

held = (r for r in records[9000:] if payload_span(vocab, r) is not None)
for source in held:
    span = payload_span(vocab, source)
    masked = "".join(vocab.surfaces(source.tokens)[span[0]: span[0] + span[1]])
    lines = [f"\nsource: {source.name}  (property {source.property_value:+.2f})",
             f"masking tokens {span[0]}..{span[0] + span[1] - 1} ({masked!r})"]
    after = {}
    for bucket in (PropertyBucket.High, PropertyBucket.Low):
        example = corrupt(vocab, source.tokens, MaskPlan((span,)), bucket)
        decoded = greedy_decode(state, vocab, example.encoder_input)
        result = apply_infill(vocab, example.encoder_input, decoded.tokens,
                              source=source.tokens)
        if result.validity == InfillValidity.Valid:
            after[bucket] = proxy_property(vocab, result.reconstructed)
            lines.append(f"target {bucket.token}: {result.candidate_name}  "
                         f"(property {after[bucket]:+.2f})")
        else:
            lines.append(f"target {bucket.token}: {result.validity.value}")
    if len(after) == 2 and after[PropertyBucket.High] > after[PropertyBucket.Low]:
        print("\n".join(lines))
        break
