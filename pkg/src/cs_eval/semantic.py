"""Meaning-level scores: embedding cosine over channels, BLEU, and chrF.

Sentence encoders and translation systems run out of process; their
output arrives here as an embedding file, one JSON object per line with
fields ``id``, ``side`` (ref or hyp), ``channel``, and ``vector``. Lines
starting with ``#`` are header comments and are skipped.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateKeyError,
    EmptyReferenceError,
    MissingEmbeddingError,
    ParseError,
    ZeroVectorError,
)

_SIDES = ("ref", "hyp")


def cosine(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> float:
    """Cosine similarity, in [-1, 1] up to rounding."""
    va = np.asarray(a, dtype=float)
    vb = np.asarray(b, dtype=float)
    if va.shape != vb.shape or va.ndim != 1:
        raise DimensionMismatchError(
            f"cannot compare vectors of shape {va.shape} and {vb.shape}"
        )
    norm_a = float(np.linalg.norm(va))
    norm_b = float(np.linalg.norm(vb))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ZeroVectorError("cosine similarity is undefined for an all-zero vector")
    return float(np.dot(va, vb) / (norm_a * norm_b))


@dataclass(frozen=True)
class EmbeddingStore:
    """Vectors addressed by (utterance id, side, channel), all one dimension."""

    dim: int
    vectors: Mapping[tuple[str, str, str], np.ndarray]

    @classmethod
    def load(cls, path: str | Path) -> "EmbeddingStore":
        path = Path(path)
        vectors: dict[tuple[str, str, str], np.ndarray] = {}
        dim: int | None = None
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None
                if not isinstance(record, dict):
                    raise ParseError(f"{path}:{lineno}: expected a JSON object")
                missing = [k for k in ("id", "side", "channel", "vector") if k not in record]
                if missing:
                    raise ParseError(f"{path}:{lineno}: missing fields {missing}")
                side = record["side"]
                if side not in _SIDES:
                    raise ParseError(f"{path}:{lineno}: side must be 'ref' or 'hyp', got {side!r}")
                vector = record["vector"]
                if (not isinstance(vector, list) or not vector
                        or not all(isinstance(x, (int, float)) and math.isfinite(x)
                                   for x in vector)):
                    raise ParseError(
                        f"{path}:{lineno}: vector must be a non-empty list of finite numbers"
                    )
                if dim is None:
                    dim = len(vector)
                elif len(vector) != dim:
                    raise DimensionMismatchError(
                        f"{path}:{lineno}: vector has dimension {len(vector)}, expected {dim}"
                    )
                key = (str(record["id"]), side, str(record["channel"]))
                if key in vectors:
                    raise DuplicateKeyError(
                        f"{path}:{lineno}: duplicate embedding for id={key[0]!r} "
                        f"side={key[1]!r} channel={key[2]!r}"
                    )
                vectors[key] = np.asarray(vector, dtype=float)
        if dim is None:
            raise ParseError(f"{path}: no embedding records found")
        return cls(dim=dim, vectors=vectors)

    def get(self, utterance_id: str, side: str, channel: str) -> np.ndarray:
        try:
            return self.vectors[(utterance_id, side, channel)]
        except KeyError:
            raise MissingEmbeddingError(
                f"no embedding for id={utterance_id!r} side={side!r} channel={channel!r}"
            ) from None

    def channels(self) -> list[str]:
        return sorted({channel for (_, _, channel) in self.vectors})

    def ids(self) -> list[str]:
        return sorted({utt_id for (utt_id, _, _) in self.vectors})


@dataclass(frozen=True)
class ChannelScores:
    """Per-channel similarities plus their mean and maximum."""

    scores: Mapping[str, float]
    avg: float
    max: float

    @classmethod
    def from_scores(cls, scores: Mapping[str, float]) -> "ChannelScores":
        if not scores:
            raise ValueError("at least one channel score is required")
        values = list(scores.values())
        return cls(scores=dict(scores), avg=sum(values) / len(values), max=max(values))


def channel_semantic(utterance_id: str, store: EmbeddingStore,
                     channels: Iterable[str]) -> ChannelScores:
    """Cosine between the ref and hyp vectors of each channel."""
    scores = {
        channel: cosine(store.get(utterance_id, "ref", channel),
                        store.get(utterance_id, "hyp", channel))
        for channel in channels
    }
    return ChannelScores.from_scores(scores)


def _ngram_counts(items: Sequence, order: int) -> Counter:
    return Counter(tuple(items[i:i + order]) for i in range(len(items) - order + 1))


def bleu(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> float:
    """Sentence BLEU, orders 1 to 4, in [0, 1].

    Precisions are clipped; orders two and up get add-one smoothing.
    Zero unigram overlap scores zero outright. The brevity penalty is
    exp(1 - len(ref) / len(hyp)) for hypotheses shorter than the
    reference.
    """
    if len(ref_tokens) == 0:
        raise EmptyReferenceError("BLEU needs a non-empty reference")
    if len(hyp_tokens) == 0:
        return 0.0
    log_sum = 0.0
    for order in range(1, 5):
        hyp_counts = _ngram_counts(hyp_tokens, order)
        ref_counts = _ngram_counts(ref_tokens, order)
        matched = sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())
        total = sum(hyp_counts.values())
        if order == 1:
            if matched == 0:
                return 0.0
            precision = matched / total
        else:
            precision = (matched + 1) / (total + 1)
        log_sum += math.log(precision)
    brevity = 1.0
    if len(hyp_tokens) < len(ref_tokens):
        brevity = math.exp(1.0 - len(ref_tokens) / len(hyp_tokens))
    return brevity * math.exp(log_sum / 4.0)


def chrf(ref_text: str, hyp_text: str, max_order: int = 6, beta: float = 2.0) -> float:
    """Character n-gram F-score, orders 1 to ``max_order``, in [0, 1].

    Whitespace characters participate in the n-grams. Precision and
    recall are averaged over the orders for which the reference has any
    n-grams, then combined with an F-beta (recall-weighted) mean.
    """
    if len(ref_text) == 0:
        raise EmptyReferenceError("chrF needs a non-empty reference")
    precisions: list[float] = []
    recalls: list[float] = []
    for order in range(1, max_order + 1):
        ref_counts = _ngram_counts(ref_text, order)
        ref_total = sum(ref_counts.values())
        if ref_total == 0:
            continue
        hyp_counts = _ngram_counts(hyp_text, order)
        hyp_total = sum(hyp_counts.values())
        matched = sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())
        precisions.append(matched / hyp_total if hyp_total else 0.0)
        recalls.append(matched / ref_total)
    avg_p = sum(precisions) / len(precisions)
    avg_r = sum(recalls) / len(recalls)
    denom = beta * beta * avg_p + avg_r
    if denom == 0.0:
        return 0.0
    return (1 + beta * beta) * avg_p * avg_r / denom
