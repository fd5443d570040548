"""Orthographic error rates: WER, CER, MER, and WIL.

All four are derived from the hit/substitution/deletion/insertion counts
of a unit-cost alignment. With H, S, D, I for those counts:

    WER = (S + D + I) / (H + S + D)
    MER = (S + D + I) / (H + S + D + I)
    WIL = 1 - H^2 / ((H + S + D) * (H + S + I))

CER is the WER formula applied to the character sequence of the tokens
joined with single spaces, so the inter-token spaces count as characters
while whitespace runs and outer whitespace do not. An empty reference
against a non-empty hypothesis has no defined rate and raises; two empty
sides score zero. A zero in either WIL denominator factor (only possible
with H = 0) scores 1.0, total information loss.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .align import AlignmentResult, align
from .errors import EmptyReferenceError
from .textnorm import NormalizationProfile, normalize, tokenize
from .translit import TransliterationScheme, transliterate


def _guard(ref_len: int, hyp_len: int, what: str) -> bool:
    """True when both sides are empty (rate 0); raises on empty reference."""
    if ref_len == 0:
        if hyp_len == 0:
            return True
        raise EmptyReferenceError(f"empty reference with non-empty hypothesis ({what})")
    return False


def wer_from_counts(counts: AlignmentResult) -> float:
    return (counts.subs + counts.dels + counts.ins) / (counts.hits + counts.subs + counts.dels)


def mer_from_counts(counts: AlignmentResult) -> float:
    return (counts.subs + counts.dels + counts.ins) / (
        counts.hits + counts.subs + counts.dels + counts.ins
    )


def wil_from_counts(counts: AlignmentResult) -> float:
    denom = (counts.hits + counts.subs + counts.dels) * (counts.hits + counts.subs + counts.ins)
    if denom == 0:
        return 1.0
    return 1.0 - (counts.hits * counts.hits) / denom


def wer(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> float:
    """Word error rate over two token sequences."""
    if _guard(len(ref_tokens), len(hyp_tokens), "wer"):
        return 0.0
    return wer_from_counts(align(ref_tokens, hyp_tokens))


def mer(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> float:
    """Match error rate; like WER but normalized by the alignment length."""
    if _guard(len(ref_tokens), len(hyp_tokens), "mer"):
        return 0.0
    return mer_from_counts(align(ref_tokens, hyp_tokens))


def wil(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> float:
    """Word information lost."""
    if _guard(len(ref_tokens), len(hyp_tokens), "wil"):
        return 0.0
    return wil_from_counts(align(ref_tokens, hyp_tokens))


def _canonical_chars(text: str) -> str:
    return " ".join(token.surface for token in tokenize(text))


def cer(ref_text: str, hyp_text: str) -> float:
    """Character error rate, inter-token single spaces included.

    Zero if and only if both sides have the same single-space canonical
    form.
    """
    ref_chars = _canonical_chars(ref_text)
    hyp_chars = _canonical_chars(hyp_text)
    if _guard(len(ref_chars), len(hyp_chars), "cer"):
        return 0.0
    return wer_from_counts(align(list(ref_chars), list(hyp_chars)))


@dataclass(frozen=True)
class Pipeline:
    """Text preparation applied identically to both sides before scoring:
    normalization first, then an optional single-script projection."""

    profile: NormalizationProfile = field(default_factory=NormalizationProfile)
    scheme: TransliterationScheme | None = None

    def apply(self, text: str) -> str:
        text = normalize(text, self.profile)
        if self.scheme is not None:
            text = transliterate(text, self.scheme)
        return text


@dataclass(frozen=True)
class ErrorRates:
    """All four rates plus the alignments they came from."""

    wer: float
    cer: float
    mer: float
    wil: float
    word_alignment: AlignmentResult
    char_alignment: AlignmentResult


def score_with_pipeline(ref_text: str, hyp_text: str,
                        pipeline: Pipeline | None = None) -> ErrorRates:
    """Run both sides through a pipeline and compute all four rates.

    Both granularities work on the canonical single-space form, so an
    all-whitespace pair scores zero across the board.
    """
    pipeline = pipeline or Pipeline()
    ref_words = [tok.surface for tok in tokenize(pipeline.apply(ref_text))]
    hyp_words = [tok.surface for tok in tokenize(pipeline.apply(hyp_text))]
    ref_chars = " ".join(ref_words)
    hyp_chars = " ".join(hyp_words)
    words = align(ref_words, hyp_words)
    chars = align(list(ref_chars), list(hyp_chars))
    if _guard(len(ref_words), len(hyp_words), "wer"):
        word_rates = (0.0, 0.0, 0.0)
    else:
        word_rates = (wer_from_counts(words), mer_from_counts(words), wil_from_counts(words))
    if _guard(len(ref_chars), len(hyp_chars), "cer"):
        char_rate = 0.0
    else:
        char_rate = wer_from_counts(chars)
    return ErrorRates(
        wer=word_rates[0],
        cer=char_rate,
        mer=word_rates[1],
        wil=word_rates[2],
        word_alignment=words,
        char_alignment=chars,
    )
