"""Command-line entry point covering the whole pipeline.

Every run writes a RunManifest JSON next to its primary output so results
can be traced back to the exact inputs, seeds, and version that made them.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import (
    CorpusError,
    build_index,
    generate_synthetic_corpus,
    ingest,
    write_corpus,
)
from .corruption import CorruptionError, InfillValidity, MaskPlan, apply_infill, corrupt
from .embeddings import save_embeddings, train_embeddings
from .evaluation import evaluate_sources, write_report, write_token_preferences
from .model import (
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
from .properties import PropertyBucket, get_spec, proxy_property
from .vocab import VocabularyError, load_reference_vocabulary, load_vocabulary


class CliError(Exception):
    """User-facing failure with a specific message; exits nonzero."""


def _load_vocab(path: str | None):
    if path is None:
        return load_reference_vocabulary()
    p = Path(path)
    if not p.is_file():
        raise CliError(f"vocabulary file not found: {p}")
    return load_vocabulary(p)


def _parse_masks(raw: list[str]) -> MaskPlan:
    spans = []
    for item in raw:
        try:
            start_s, length_s = item.split(":")
            spans.append((int(start_s), int(length_s)))
        except ValueError:
            raise CliError(
                f"bad --mask value {item!r}: expected start:length token coordinates"
            ) from None
    try:
        return MaskPlan(tuple(sorted(spans)))
    except CorruptionError as exc:
        raise CliError(f"invalid mask plan: {exc}") from None


def _write_manifest(out_dir: Path, subcommand: str, args: argparse.Namespace,
                    started: float) -> None:
    payload = {
        "subcommand": subcommand,
        "version": __version__,
        "config": {
            k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None
        },
        "wallClockSeconds": round(time.time() - started, 3),
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / f"manifest-{subcommand}.json").open("w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# --- subcommands -------------------------------------------------------------


def cmd_tokenize(args) -> int:
    vocab = _load_vocab(args.vocab)
    seq = vocab.tokenize(args.name)
    for i, tid in enumerate(seq.ids):
        print(f"{i}\t{vocab.surface(tid)}\t{vocab.token_class(tid).value}")
    return 0


def cmd_synth_corpus(args) -> int:
    started = time.time()
    vocab = _load_vocab(args.vocab)
    records = generate_synthetic_corpus(vocab, seed=args.seed, size=args.size)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_corpus(out, records)
    _write_manifest(out.parent, "synth-corpus", args, started)
    print(f"wrote {len(records)} records to {out}")
    return 0


def cmd_ingest(args) -> int:
    vocab = _load_vocab(args.vocab)
    records, index, skipped = ingest(args.corpus, vocab)
    unk = sum(1 for r in records if r.has_unk)
    print(
        f"{len(records)} records ({skipped} skipped rows, {unk} with unknown tokens); "
        f"{len(index.name_set)} distinct names"
    )
    return 0


def cmd_train_w2v(args) -> int:
    started = time.time()
    vocab = _load_vocab(args.vocab)
    records, _, _ = ingest(args.corpus, vocab)
    table = train_embeddings(
        records, vocab, dim=args.dim, epochs=args.epochs, seed=args.seed
    )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_embeddings(out, table, vocab)
    _write_manifest(out.parent, "train-w2v", args, started)
    losses = ", ".join(f"{x:.4f}" for x in table.epoch_losses)
    print(f"wrote {out} (dim {table.dim}; epoch losses: {losses})")
    return 0


def cmd_train_model(args) -> int:
    started = time.time()
    vocab = _load_vocab(args.vocab)
    records, _, _ = ingest(args.corpus, vocab)
    spec = get_spec(args.property)
    config = ModelConfig(
        vocab_size=vocab.size,
        layers=args.layers,
        heads=args.heads,
        model_dim=args.model_dim,
        ff_dim=args.ff_dim,
        seed=args.seed,
    )
    schedule = TrainSchedule(
        max_learning_rate=args.lr,
        warmup_steps=args.warmup,
        batch_size=args.batch_size,
        steps=args.steps,
    )
    state = ModelState.init(config)
    train(
        state, records, spec, schedule,
        np.random.default_rng(args.seed), vocab, progress=not args.quiet,
    )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_checkpoint(out, state)
    _write_manifest(out.parent, "train-model", args, started)
    print(f"wrote {out} after {state.step} steps (final loss {state.loss_curve[-1]:.4f})")
    return 0


def cmd_edit(args) -> int:
    started = time.time()
    vocab = _load_vocab(args.vocab)
    state = load_checkpoint(args.checkpoint)
    if state.config.vocab_size != vocab.size:
        raise CliError(
            f"checkpoint vocabulary size {state.config.vocab_size} does not match "
            f"the loaded vocabulary ({vocab.size})"
        )
    spec = get_spec(args.property)
    bucket = PropertyBucket.from_token(f"<{args.target}>")
    seq = vocab.tokenize(args.name)
    if vocab.unk_id in seq.ids:
        raise CliError(f"name contains unknown fragments: {args.name!r}")
    plan = _parse_masks(args.mask)
    plan.validate_for(len(seq))
    example = corrupt(vocab, seq, plan, bucket)
    has_oracle = spec.oracle == "proxy"
    before = proxy_property(vocab, seq) if has_oracle else None

    candidates = []
    if args.k <= 1 and args.temperature == 0.0:
        decoded = [greedy_decode(state, vocab, example.encoder_input)]
    else:
        temperature = args.temperature or 1.0
        rng = np.random.default_rng(args.seed)
        decoded = [
            sample_decode(state, vocab, example.encoder_input, temperature, rng)
            for _ in range(max(args.k, 1))
        ]
    seen = set()
    for d in decoded:
        result = apply_infill(vocab, example.encoder_input, d.tokens, source=seq)
        if result.candidate_name in seen:
            continue
        seen.add(result.candidate_name)
        candidates.append(result)

    def sort_key(r):
        if r.validity != InfillValidity.Valid or not has_oracle:
            return float("inf")
        after = proxy_property(vocab, r.reconstructed)
        return -after if bucket == PropertyBucket.High else after

    candidates.sort(key=sort_key)
    if has_oracle:
        print(f"source\t{args.name}\tproperty {before:.3f}")
    else:
        print(f"source\t{args.name}")
    for r in candidates:
        if r.validity == InfillValidity.Valid and has_oracle:
            after = proxy_property(vocab, r.reconstructed)
            print(f"{r.validity.value}\t{r.candidate_name}\tproperty {after:.3f}")
        else:
            print(f"{r.validity.value}\t{r.candidate_name or ''}")
    if args.out:
        _write_manifest(Path(args.out), "edit", args, started)
    return 0


def cmd_evaluate(args) -> int:
    started = time.time()
    vocab = _load_vocab(args.vocab)
    state = load_checkpoint(args.checkpoint)
    spec = get_spec(args.property)
    records, index, _ = ingest(args.corpus, vocab)
    sources = [r for r in records if not r.has_unk][: args.sources]
    if not sources:
        raise CliError("no usable source molecules in the corpus")
    targets = [PropertyBucket.Low, PropertyBucket.High]
    if args.target:
        targets = [PropertyBucket.from_token(f"<{args.target}>")]
    rows, prefs, _ = evaluate_sources(
        sources, targets, state, vocab, spec, index, records
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_report(out_dir / "report.tsv", rows)
    write_token_preferences(out_dir / "token_pref.tsv", prefs)
    _write_manifest(out_dir, "evaluate", args, started)
    total_valid = sum(r.generated_count * r.percent_valid for r in rows)
    print(f"wrote {out_dir / 'report.tsv'} and {out_dir / 'token_pref.tsv'}")
    if total_valid == 0:
        print("error: no valid generations produced", file=sys.stderr)
        return 1
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    vocab = _load_vocab(args.vocab)
    app = create_app(vocab, checkpoint_path=args.checkpoint)
    host, _, port = args.addr.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


# --- argument wiring ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moledit",
        description="Tokenize, train, edit, and evaluate IUPAC-name molecules.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, vocab=True, seed=False):
        if vocab:
            p.add_argument("--vocab", help="vocabulary TSV (default: shipped reference)")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("tokenize", help="print token index/surface/class lines")
    common(p)
    p.add_argument("--name", required=True)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("synth-corpus", help="generate the synthetic training corpus")
    common(p, seed=True)
    p.add_argument("--size", type=int, default=10000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth_corpus)

    p = sub.add_parser("ingest", help="validate a name/value corpus file")
    common(p)
    p.add_argument("--corpus", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train-w2v", help="train skip-gram token embeddings")
    common(p, seed=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--epochs", type=int, default=5)
    p.set_defaults(func=cmd_train_w2v)

    p = sub.add_parser("train-model", help="train the conditional infilling model")
    common(p, seed=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--property", default="proxy")
    p.add_argument("--out", required=True)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--warmup", type=int, default=200)
    p.add_argument("--lr", type=float, default=3e-3)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--heads", type=int, default=4)
    p.add_argument("--model-dim", type=int, default=128)
    p.add_argument("--ff-dim", type=int, default=256)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_train_model)

    p = sub.add_parser("edit", help="mask spans of one name and infill")
    common(p, seed=True)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--property", default="proxy")
    p.add_argument("--target", required=True, choices=["low", "med", "high"])
    p.add_argument("--name", required=True)
    p.add_argument(
        "--mask", action="append", required=True,
        metavar="START:LENGTH",
        help="0-based token span to replace; repeat for multiple spans",
    )
    p.add_argument("--temperature", type=float, default=0.0)
    p.add_argument("--k", type=int, default=1, help="candidate count when sampling")
    p.add_argument("--out", help="directory for the run manifest")
    p.set_defaults(func=cmd_edit)

    p = sub.add_parser("evaluate", help="span-enumeration evaluation over a corpus")
    common(p, seed=True)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--property", default="proxy")
    p.add_argument("--target", choices=["low", "med", "high"])
    p.add_argument("--sources", type=int, default=10,
                   help="number of source molecules to edit")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", help="run the HTTP inference service")
    common(p)
    p.add_argument("--checkpoint")
    p.add_argument("--addr", default="127.0.0.1:8642")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VocabularyError, CorpusError, CorruptionError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
