"""Tokenize a few names, inspect token classes, and bucket the proxy property.

Run: python3 demos/01_tokenize_and_bucket.py
"""

from moledit import get_spec, load_reference_vocabulary, proxy_property

vocab = load_reference_vocabulary()
spec = get_spec("proxy")

print(f"vocabulary {vocab.version}: {vocab.n_content} content tokens, "
      f"{vocab.size} total ids\n")

for name in (
    "2-acetyloxybenzoic acid",
    "2-decyl-4-hydroxypentane",
    "3-phosphohexane",
):
    seq = vocab.tokenize(name)
    print(name)
    for i, tid in enumerate(seq.ids):
        print(f"  {i:2d}  {vocab.surface(tid):10s} {vocab.token_class(tid).value:12s}"
              f" weight {vocab.hydro_weight(tid):+.1f}")
    value = proxy_property(vocab, seq)
    print(f"  proxy property {value:+.2f} -> bucket {spec.bucketize(value).token}\n")
