"""Train skip-gram token embeddings and probe them with analogy queries.

The synthetic corpus plants oxyanion families (sulfate/sulfite, phosphate/
phosphite, ...) in parallel contexts, so the "-ate minus -ite" direction is
shared across families and analogies resolve correctly.

Run: python3 demos/03_embeddings_analogies.py
"""

from moledit import (
    analogy,
    generate_synthetic_corpus,
    load_reference_vocabulary,
    nearest,
    train_embeddings,
)

vocab = load_reference_vocabulary()
records = generate_synthetic_corpus(vocab, seed=2, size=3000)
print(f"training skip-gram embeddings on {len(records)} names ...")
table = train_embeddings(records, vocab, dim=32, epochs=5, seed=0)
print("epoch losses:", ", ".join(f"{x:.3f}" for x in table.epoch_losses))

tid = vocab.id_of("sulfate")
print("\nnearest neighbours of 'sulfate':")
for other, sim in nearest(table, table.vector(tid), exclude={tid}, k=5):
    print(f"  {vocab.surface(other):12s} cosine {sim:.3f}")

print("\nanalogies  a - b + c = ?")
for a, b, c in (
    ("sulfate", "sulfite", "phosphite"),
    ("phosphate", "phosphite", "selenite"),
    ("selenate", "selenite", "tellurite"),
):
    got = analogy(table, vocab.id_of(a), vocab.id_of(b), vocab.id_of(c))
    print(f"  {a} - {b} + {c} = {vocab.surface(got)}")
