"""Token-level language tagging and the code-mixing index.

Arabic-script tokens carry the matrix language (L1), Latin-script and
mixed-script tokens the embedded language (L2). Tags, digits, and other
letterless tokens stay outside both. For an utterance with N language
tokens, t_L of them in the dominant language, and P switch points along
the L1/L2 subsequence:

    CMI = 100 * (0.5 * (N - max t_L) + 0.5 * P) / N

which is 0 for monolingual text and approaches 100 for dense mixing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import NoLanguageTokensError
from .textnorm import Script, Token


class LangTag(Enum):
    L1 = "L1"
    L2 = "L2"
    OTHER = "Other"


_SCRIPT_TAGS = {
    Script.ARABIC: LangTag.L1,
    Script.LATIN: LangTag.L2,
    Script.MIXED: LangTag.L2,
    Script.OTHER: LangTag.OTHER,
}

_TAG_NAMES = {tag.value.lower(): tag for tag in LangTag}


@dataclass(frozen=True)
class LanguageTaggedUtterance:
    tokens: tuple[Token, ...]
    tags: tuple[LangTag, ...]

    @property
    def language_tags(self) -> tuple[LangTag, ...]:
        """The L1/L2 subsequence, OTHER tokens removed."""
        return tuple(tag for tag in self.tags if tag is not LangTag.OTHER)

    @property
    def n_language_tokens(self) -> int:
        return len(self.language_tags)

    @property
    def alternation_points(self) -> int:
        seq = self.language_tags
        return sum(1 for a, b in zip(seq, seq[1:]) if a is not b)


def tag_languages(tokens: Sequence[Token],
                  lexicon: Mapping[str, str | LangTag] | None = None,
                  ) -> LanguageTaggedUtterance:
    """Assign a language tag to each token, script first, lexicon override.

    Lexicon values may be LangTag members or the strings L1, L2, Other
    (case-insensitive); keys match the exact token surface.
    """
    tags: list[LangTag] = []
    for token in tokens:
        override = lexicon.get(token.surface) if lexicon else None
        if override is None:
            tags.append(_SCRIPT_TAGS[token.script])
        elif isinstance(override, LangTag):
            tags.append(override)
        else:
            try:
                tags.append(_TAG_NAMES[override.lower()])
            except KeyError:
                raise ValueError(f"lexicon tag must be L1, L2, or Other, got {override!r}") from None
    return LanguageTaggedUtterance(tokens=tuple(tokens), tags=tuple(tags))


def cmi(utterance: LanguageTaggedUtterance) -> float:
    """Code-mixing index of one utterance, in [0, 100)."""
    seq = utterance.language_tags
    n = len(seq)
    if n == 0:
        raise NoLanguageTokensError("utterance has no L1/L2 tokens")
    dominant = max(Counter(seq).values())
    switches = utterance.alternation_points
    return 100.0 * (0.5 * (n - dominant) + 0.5 * switches) / n


def recording_cmi(utterances: Iterable[LanguageTaggedUtterance]) -> float:
    """Mean utterance CMI; utterances without language tokens are excluded."""
    values = [cmi(u) for u in utterances if u.n_language_tokens > 0]
    if not values:
        raise NoLanguageTokensError("no utterance in the recording has L1/L2 tokens")
    return sum(values) / len(values)
