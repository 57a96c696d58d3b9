import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from moledit.corpus import build_index, generate_synthetic_corpus
from moledit.model import ModelConfig, ModelState, TrainSchedule, train
from moledit.properties import get_spec
from moledit.vocab import load_reference_vocabulary


@pytest.fixture(scope="session")
def vocab():
    return load_reference_vocabulary()


@pytest.fixture(scope="session")
def small_corpus(vocab):
    return generate_synthetic_corpus(vocab, seed=3, size=400)


@pytest.fixture(scope="session")
def small_index(vocab, small_corpus):
    return build_index(small_corpus, vocab)


@pytest.fixture(scope="session")
def tiny_model(vocab, small_corpus):
    """A deliberately small, briefly trained model for plumbing tests."""
    config = ModelConfig(
        vocab_size=vocab.size, layers=1, heads=2, model_dim=32, ff_dim=64, seed=0
    )
    state = ModelState.init(config)
    schedule = TrainSchedule(batch_size=8, steps=120, warmup_steps=20)
    train(state, small_corpus, get_spec("proxy"), schedule,
          np.random.default_rng(0), vocab)
    return state
