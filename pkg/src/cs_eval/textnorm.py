"""Tokenization, script classification, and orthographic normalization.

Everything downstream (error rates, transliteration, phone mapping,
language tagging) consumes the token stream produced here, so the rules
are deliberately small and deterministic:

* tokens are maximal runs of non-whitespace characters;
* a token's script is decided only by the letters it contains;
* bracket-delimited non-speech tags such as ``[laughter]`` or ``<noise>``
  are markup, not words, and classify as ``Script.OTHER``.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum

# Arabic block, Arabic Supplement, Arabic Extended-A, presentation forms.
ARABIC_RANGES = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)

# Hamza-seated and madda alifs fold to bare alif, final alif maqsura to ya.
ALIF_YA_TABLE = str.maketrans({"أ": "ا", "إ": "ا",
                               "آ": "ا", "ى": "ي"})

# Ta marbuta to ha, hamza seats folded onto their carrier letters,
# tatweel dropped entirely.
EXTENDED_ARABIC_TABLE = str.maketrans({"ة": "ه", "ؤ": "و",
                                       "ئ": "ي", "ـ": None})


class Script(Enum):
    ARABIC = "arabic"
    LATIN = "latin"
    MIXED = "mixed"
    OTHER = "other"


@dataclass(frozen=True)
class Token:
    """One whitespace-delimited surface form and its script class."""

    surface: str
    script: Script


@dataclass(frozen=True)
class NormalizationProfile:
    """Which orthographic foldings :func:`normalize` applies.

    ``unicode_form`` (canonical composition) runs first so that decomposed
    hamza carriers are seen by the character maps. ``strip_punct`` removes
    punctuation characters from tokens that contain anything else; tokens
    made of punctuation only are kept, so the token count never changes.
    """

    lowercase_latin: bool = False
    alif_ya: bool = False
    extended_arabic: bool = False
    unicode_form: bool = True
    strip_punct: bool = False


_PROFILE_FLAGS = {
    "lowercase": "lowercase_latin",
    "alif-ya": "alif_ya",
    "extended": "extended_arabic",
    "strip-punct": "strip_punct",
}


def parse_profile(spec: str) -> NormalizationProfile:
    """Build a profile from a comma-separated flag list.

    Accepted names: ``alif-ya``, ``lowercase``, ``extended``,
    ``strip-punct``, or ``none`` / the empty string for the default.
    """
    fields: dict[str, bool] = {}
    for name in spec.split(","):
        name = name.strip()
        if not name or name == "none":
            continue
        if name not in _PROFILE_FLAGS:
            valid = ", ".join(sorted(_PROFILE_FLAGS))
            raise ValueError(f"unknown normalization flag {name!r} (valid: {valid})")
        fields[_PROFILE_FLAGS[name]] = True
    return NormalizationProfile(**fields)


def _is_arabic_letter(ch: str) -> bool:
    if not ch.isalpha():
        return False
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in ARABIC_RANGES)


def _is_basic_latin_letter(ch: str) -> bool:
    return "a" <= ch <= "z" or "A" <= ch <= "Z"


def is_nonspeech_tag(surface: str) -> bool:
    """True for bracket-delimited markup such as ``[noise]`` or ``<unk>``."""
    if len(surface) < 2:
        return False
    return (surface[0] == "[" and surface[-1] == "]") or (
        surface[0] == "<" and surface[-1] == ">"
    )


def classify_script(surface: str) -> Script:
    """Classify one token surface by the letters it contains.

    Arabic and Latin letters each pull toward their script; both present
    means MIXED; no letters (or a non-speech tag) means OTHER. Letters of
    any third script are ignored, so a token written entirely in one is
    OTHER as well.
    """
    if not surface:
        raise ValueError("cannot classify an empty surface")
    if is_nonspeech_tag(surface):
        return Script.OTHER
    has_arabic = False
    has_latin = False
    for ch in surface:
        if _is_arabic_letter(ch):
            has_arabic = True
        elif _is_basic_latin_letter(ch):
            has_latin = True
    if has_arabic and has_latin:
        return Script.MIXED
    if has_arabic:
        return Script.ARABIC
    if has_latin:
        return Script.LATIN
    return Script.OTHER


def tokenize(text: str) -> list[Token]:
    """Split on Unicode whitespace and classify each surface.

    Joining the surfaces back with single spaces reproduces the input up
    to whitespace runs.
    """
    return [Token(surface, classify_script(surface)) for surface in text.split()]


_NONSPACE_RUN = re.compile(r"\S+")


def _map_tokens(text: str, fold) -> str:
    """Rewrite each whitespace-delimited run with ``fold``, leaving the
    whitespace between runs untouched. A run whose image is empty is kept
    as-is, so the token count never changes."""
    def replace(match: re.Match) -> str:
        folded = fold(match.group(0))
        return folded if folded else match.group(0)

    return _NONSPACE_RUN.sub(replace, text)


def _strip_punct(part: str) -> str:
    if is_nonspeech_tag(part):
        return part
    return "".join(ch for ch in part if not unicodedata.category(ch).startswith("P"))


def normalize(text: str, profile: NormalizationProfile | None = None) -> str:
    """Apply a normalization profile to raw text.

    Idempotent for every profile: the image of each folding is outside
    its own domain.
    """
    profile = profile or NormalizationProfile()
    if profile.unicode_form:
        text = unicodedata.normalize("NFC", text)
    if profile.alif_ya:
        text = text.translate(ALIF_YA_TABLE)
    if profile.extended_arabic:
        # Tokenwise: a token of tatweel only must not vanish.
        text = _map_tokens(text, lambda part: part.translate(EXTENDED_ARABIC_TABLE))
    if profile.lowercase_latin:
        text = "".join(ch.lower() if "A" <= ch <= "Z" else ch for ch in text)
    if profile.strip_punct:
        text = _map_tokens(text, _strip_punct)
    return text
