"""Conditional molecular editing over IUPAC names.

Pipeline: typed-vocabulary tokenization, property bucketing, span-corruption
training of a small conditional infilling transformer, skip-gram token
embeddings, zero-shot select-and-replace edits, and an evaluation harness —
exposed as a library, a `moledit` CLI, and an HTTP inference service.
"""

__version__ = "0.1.0"

from .corpus import (
    CorpusError,
    CorpusIndex,
    CorpusRecord,
    build_index,
    generate_synthetic_corpus,
    ingest,
    write_corpus,
)
from .corruption import (
    CorruptionError,
    CorruptionExample,
    InfillResult,
    InfillValidity,
    MaskPlan,
    apply_infill,
    corrupt,
    sample_mask_plan,
)
from .embeddings import (
    EmbeddingTable,
    analogy,
    load_embeddings,
    nearest,
    save_embeddings,
    train_embeddings,
)
from .evaluation import (
    EditJob,
    EditOutcome,
    EvalRow,
    TokenPreferenceRow,
    baseline_eligible,
    baseline_scan,
    enumerate_spans,
    evaluate_sources,
    novelty,
    run_edit_job,
    token_preference,
)
from .model import (
    DecodeResult,
    ModelConfig,
    ModelError,
    ModelState,
    TrainSchedule,
    greedy_decode,
    load_checkpoint,
    sample_decode,
    save_checkpoint,
    train,
)
from .properties import (
    PropertyBucket,
    PropertySpec,
    bucketize,
    get_spec,
    proxy_property,
)
from .vocab import (
    TokenClass,
    TokenSequence,
    TokenVocabulary,
    VocabEntry,
    VocabularyError,
    load_reference_vocabulary,
    load_vocabulary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
