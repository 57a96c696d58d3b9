"""Typed token vocabulary and greedy longest-match tokenization of IUPAC names."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

N_SENTINELS = 100

PROPERTY_TOKENS = ("<low>", "<med>", "<high>")
TAIL_TOKENS = ("<pad>", "<eos>", "<unk>")


class VocabularyError(Exception):
    """Raised when a vocabulary file is malformed."""


class TokenClass(enum.Enum):
    Group = "Group"
    Locant = "Locant"
    Multiplier = "Multiplier"
    Stereo = "Stereo"
    RingLocant = "RingLocant"
    Element = "Element"
    Charge = "Charge"
    Punctuation = "Punctuation"
    Special = "Special"


# Classes a vocabulary file may declare; Special ids are appended by the loader.
_CONTENT_CLASSES = {c.value: c for c in TokenClass if c is not TokenClass.Special}


@dataclass(frozen=True)
class VocabEntry:
    surface: str
    token_class: TokenClass
    hydro_weight: float = 0.0


@dataclass(frozen=True)
class TokenSequence:
    """An ordered list of token ids bound to a vocabulary version."""

    vocab_version: str
    ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.ids)

    def truncated(self, max_tokens: int) -> "TokenSequence":
        if len(self.ids) <= max_tokens:
            return self
        return TokenSequence(self.vocab_version, self.ids[:max_tokens])


class TokenVocabulary:
    """Immutable token inventory.

    Id layout: content entries in file order, then <low>/<med>/<high>,
    then <s1>..<s100>, then <pad>/<eos>/<unk>.
    """

    def __init__(self, version: str, entries: list[VocabEntry]):
        self.version = version
        self.entries = tuple(entries)

        self._surface_to_id: dict[str, int] = {}
        for i, e in enumerate(entries):
            if e.surface in self._surface_to_id:
                raise VocabularyError(f"duplicate surface {e.surface!r}")
            self._surface_to_id[e.surface] = i

        n = len(entries)
        self.low_id = n
        self.med_id = n + 1
        self.high_id = n + 2
        self.sentinel_base = n + 3  # <s1> has id sentinel_base, <s100> sentinel_base+99
        self.pad_id = self.sentinel_base + N_SENTINELS
        self.eos_id = self.pad_id + 1
        self.unk_id = self.pad_id + 2
        self.size = self.unk_id + 1

        self._max_surface_len = max((len(e.surface) for e in entries), default=0)
        # Surfaces bucketed by first character, longest first, for the scanner.
        self._by_first: dict[str, list[str]] = {}
        for s in self._surface_to_id:
            self._by_first.setdefault(s[0], []).append(s)
        for lst in self._by_first.values():
            lst.sort(key=len, reverse=True)

        self._special_surfaces = self._build_special_surfaces()

    def _build_special_surfaces(self) -> dict[int, str]:
        out = {self.low_id: "<low>", self.med_id: "<med>", self.high_id: "<high>"}
        for k in range(N_SENTINELS):
            out[self.sentinel_base + k] = f"<s{k + 1}>"
        out[self.pad_id] = "<pad>"
        out[self.eos_id] = "<eos>"
        out[self.unk_id] = "<unk>"
        return out

    # -- id helpers -------------------------------------------------------

    @property
    def n_content(self) -> int:
        return len(self.entries)

    def id_of(self, surface: str) -> int:
        return self._surface_to_id[surface]

    def surface(self, token_id: int) -> str:
        if token_id < self.n_content:
            return self.entries[token_id].surface
        return self._special_surfaces[token_id]

    def token_class(self, token_id: int) -> TokenClass:
        if token_id < self.n_content:
            return self.entries[token_id].token_class
        return TokenClass.Special

    def hydro_weight(self, token_id: int) -> float:
        if token_id < self.n_content:
            return self.entries[token_id].hydro_weight
        return 0.0

    def is_special(self, token_id: int) -> bool:
        return token_id >= self.n_content

    def is_sentinel(self, token_id: int) -> bool:
        return self.sentinel_base <= token_id < self.sentinel_base + N_SENTINELS

    def sentinel_id(self, ordinal: int) -> int:
        """Id of <s{ordinal}>, ordinal in 1..100."""
        if not 1 <= ordinal <= N_SENTINELS:
            raise ValueError(f"sentinel ordinal {ordinal} out of range")
        return self.sentinel_base + ordinal - 1

    def property_id(self, bucket_token: str) -> int:
        return {"<low>": self.low_id, "<med>": self.med_id, "<high>": self.high_id}[
            bucket_token
        ]

    def is_property_token(self, token_id: int) -> bool:
        return token_id in (self.low_id, self.med_id, self.high_id)

    # -- tokenization -----------------------------------------------------

    def _match_at(self, text: str, pos: int) -> str | None:
        first = text[pos]
        for surf in self._by_first.get(first, ()):
            if text.startswith(surf, pos):
                return surf
        return None

    def tokenize(self, name: str) -> TokenSequence:
        """Greedy longest-match segmentation; unmatched runs become one <unk>."""
        if not name:
            raise ValueError("cannot tokenize an empty name")
        ids: list[int] = []
        i = 0
        n = len(name)
        while i < n:
            surf = self._match_at(name, i)
            if surf is not None:
                ids.append(self._surface_to_id[surf])
                i += len(surf)
                continue
            # Maximal run with no match anywhere inside collapses to one <unk>.
            i += 1
            while i < n and self._match_at(name, i) is None:
                i += 1
            ids.append(self.unk_id)
        return TokenSequence(self.version, tuple(ids))

    def detokenize(self, seq: TokenSequence) -> str:
        parts: list[str] = []
        for pos, tid in enumerate(seq.ids):
            if tid == self.unk_id:
                parts.append("<unk>")
                continue
            if self.is_special(tid):
                raise ValueError(f"special token {self.surface(tid)!r} at position {pos}")
            parts.append(self.entries[tid].surface)
        return "".join(parts)

    def surfaces(self, seq: TokenSequence) -> list[str]:
        return [self.surface(t) for t in seq.ids]

    def class_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for e in self.entries:
            counts[e.token_class.value] = counts.get(e.token_class.value, 0) + 1
        return counts


def _parse_line(line: str, lineno: int) -> VocabEntry:
    parts = line.split("\t")
    if len(parts) not in (2, 3):
        raise VocabularyError(f"line {lineno}: expected 2 or 3 tab-separated fields")
    surface, class_label = parts[0], parts[1]
    if not surface:
        raise VocabularyError(f"line {lineno}: empty surface")
    if class_label not in _CONTENT_CLASSES:
        raise VocabularyError(f"line {lineno}: unknown class label {class_label!r}")
    weight = 0.0
    if len(parts) == 3 and parts[2] != "":
        try:
            weight = float(parts[2])
        except ValueError as exc:
            raise VocabularyError(f"line {lineno}: bad weight {parts[2]!r}") from exc
    return VocabEntry(surface, _CONTENT_CLASSES[class_label], weight)


def load_vocabulary(path: str | Path) -> TokenVocabulary:
    """Load a tab-separated vocabulary file; specials are appended implicitly."""
    path = Path(path)
    entries: list[VocabEntry] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            entry = _parse_line(line, lineno)
            if entry.surface in seen:
                raise VocabularyError(f"duplicate surface {entry.surface!r}")
            seen.add(entry.surface)
            entries.append(entry)
    if not entries:
        raise VocabularyError(f"{path}: no vocabulary entries")
    missing = [str(k) for k in range(1, 101) if str(k) not in seen]
    if missing:
        raise VocabularyError(f"locants missing from vocabulary: {missing[:5]}...")
    version = f"{path.stem}-{len(entries)}"
    return TokenVocabulary(version, entries)


def reference_vocabulary_path() -> Path:
    """Path of the vocabulary file shipped with the package."""
    return Path(resources.files("moledit.data") / "vocabulary.tsv")


def load_reference_vocabulary() -> TokenVocabulary:
    return load_vocabulary(reference_vocabulary_path())
