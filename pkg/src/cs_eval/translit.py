"""Projection of mixed-script text into a single script.

The same spoken word often shows up written in either script
(cross-transcription), which plain string comparison punishes as an
error. A :class:`TransliterationScheme` removes that mismatch: a word
lexicon is consulted first, then a one-to-one character table, with the
classic Buckwalter Arabic/ASCII table built in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping

from .errors import DuplicateKeyError, InvalidSchemeError, ParseError
from .textnorm import Script, Token, is_nonspeech_tag, tokenize

# Buckwalter table, ASCII on the left. XML-compatibility aliases are
# left out so the mapping stays a bijection.
BUCKWALTER_TO_ARABIC = {
    "'": "ء",  # hamza
    "|": "آ",  # alif madda
    ">": "أ",  # alif + hamza above
    "&": "ؤ",  # waw + hamza
    "<": "إ",  # alif + hamza below
    "}": "ئ",  # ya + hamza
    "A": "ا",  # alif
    "b": "ب",
    "p": "ة",  # ta marbuta
    "t": "ت",
    "v": "ث",
    "j": "ج",
    "H": "ح",
    "x": "خ",
    "d": "د",
    "*": "ذ",
    "r": "ر",
    "z": "ز",
    "s": "س",
    "$": "ش",
    "S": "ص",
    "D": "ض",
    "T": "ط",
    "Z": "ظ",
    "E": "ع",
    "g": "غ",
    "_": "ـ",  # tatweel
    "f": "ف",
    "q": "ق",
    "k": "ك",
    "l": "ل",
    "m": "م",
    "n": "ن",
    "h": "ه",
    "w": "و",
    "Y": "ى",  # alif maqsura
    "y": "ي",
    "F": "ً",  # fathatan
    "N": "ٌ",  # dammatan
    "K": "ٍ",  # kasratan
    "a": "َ",  # fatha
    "u": "ُ",  # damma
    "i": "ِ",  # kasra
    "~": "ّ",  # shadda
    "o": "ْ",  # sukun
    "`": "ٰ",  # dagger alif
    "{": "ٱ",  # alif wasla
}

BUCKWALTER_TO_ROMAN = {ar: ro for ro, ar in BUCKWALTER_TO_ARABIC.items()}


class Direction(Enum):
    TO_ARABIC = "to-arabic"
    TO_ROMAN = "to-roman"


class Fallback(Enum):
    CHAR_MAP = "char-map"
    PASS_THROUGH = "pass-through"


@dataclass(frozen=True)
class TransliterationScheme:
    """How tokens are projected into the target script.

    ``char_map`` must map single characters; a scheme declared
    ``bijective`` must also map them one-to-one so that the reverse
    direction is well defined.
    """

    name: str
    direction: Direction
    char_map: Mapping[str, str]
    lexicon: Mapping[str, str] = field(default_factory=dict)
    fallback: Fallback = Fallback.CHAR_MAP
    bijective: bool = False

    def __post_init__(self) -> None:
        for src in self.char_map:
            if len(src) != 1:
                raise InvalidSchemeError(
                    f"scheme {self.name!r}: char_map key {src!r} is not a single character"
                )
        if self.bijective:
            values = list(self.char_map.values())
            if len(set(values)) != len(values) or any(len(v) != 1 for v in values):
                raise InvalidSchemeError(
                    f"scheme {self.name!r} declared bijective but char_map is not one-to-one"
                )
        for word, replacement in self.lexicon.items():
            if not replacement or len(replacement.split()) != 1:
                raise InvalidSchemeError(
                    f"scheme {self.name!r}: lexicon entry {word!r} -> {replacement!r} "
                    "must be a single non-empty token"
                )

    @property
    def target_script(self) -> Script:
        return Script.ARABIC if self.direction is Direction.TO_ARABIC else Script.LATIN


def buckwalter_scheme(direction: Direction, lexicon: Mapping[str, str] | None = None,
                      ) -> TransliterationScheme:
    """The built-in Buckwalter scheme, optionally with a word lexicon."""
    char_map = (BUCKWALTER_TO_ARABIC if direction is Direction.TO_ARABIC
                else BUCKWALTER_TO_ROMAN)
    return TransliterationScheme(
        name="buckwalter",
        direction=direction,
        char_map=char_map,
        lexicon=dict(lexicon or {}),
        fallback=Fallback.CHAR_MAP,
        bijective=not lexicon,
    )


def _transliterate_token(token: Token, scheme: TransliterationScheme) -> str:
    # Non-speech tags are markup and must survive verbatim. Every other
    # token not yet in the target script is projected; symbol-only tokens
    # matter because Buckwalter spells some letters as ASCII punctuation,
    # and the round trip would lose them otherwise.
    if token.script is scheme.target_script or is_nonspeech_tag(token.surface):
        return token.surface
    if token.surface in scheme.lexicon:
        return scheme.lexicon[token.surface]
    if scheme.fallback is Fallback.PASS_THROUGH:
        return token.surface
    # Character fallback. Map keys only cover source-script characters,
    # so in a mixed token each maximal run of the target script survives
    # untouched and the rest is projected, run by run.
    return "".join(scheme.char_map.get(ch, ch) for ch in token.surface)


def transliterate(text: str, scheme: TransliterationScheme) -> str:
    """Project every token of ``text`` into the scheme's target script.

    Token count is preserved; tokens already in the target script and
    non-speech tags pass through unchanged, everything else goes through
    the lexicon and then the scheme's fallback.
    """
    return " ".join(_transliterate_token(tok, scheme) for tok in tokenize(text))


_SECTION_HEADERS = {"#charmap": "charmap", "#lexicon": "lexicon"}


def load_scheme(path: str | Path, direction: Direction, *, name: str | None = None,
                fallback: Fallback = Fallback.CHAR_MAP) -> TransliterationScheme:
    """Read a scheme file: tab-separated pairs under ``#charmap`` and
    ``#lexicon`` section headers, ``#`` comments allowed.

    A file with no ``#charmap`` entries falls back to the built-in
    Buckwalter character table for the given direction.
    """
    path = Path(path)
    char_map: dict[str, str] = {}
    lexicon: dict[str, str] = {}
    section: str | None = None
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            stripped = line.strip()
            if not stripped:
                continue
            if stripped in _SECTION_HEADERS:
                section = _SECTION_HEADERS[stripped]
                continue
            if stripped.startswith("#"):
                continue
            if section is None:
                raise ParseError(f"{path}:{lineno}: entry before a section header")
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ParseError(
                    f"{path}:{lineno}: expected 'source<TAB>target', got {line!r}"
                )
            src, dst = parts
            table = char_map if section == "charmap" else lexicon
            if src in table:
                raise DuplicateKeyError(f"{path}:{lineno}: duplicate {section} key {src!r}")
            if section == "charmap" and len(src) != 1:
                raise ParseError(
                    f"{path}:{lineno}: charmap source {src!r} must be a single character"
                )
            if section == "lexicon" and len(dst.split()) != 1:
                raise ParseError(
                    f"{path}:{lineno}: lexicon target {dst!r} must be a single token"
                )
            table[src] = dst
    if not char_map:
        char_map = dict(BUCKWALTER_TO_ARABIC if direction is Direction.TO_ARABIC
                        else BUCKWALTER_TO_ROMAN)
    return TransliterationScheme(
        name=name or path.stem,
        direction=direction,
        char_map=char_map,
        lexicon=lexicon,
        fallback=fallback,
    )
