"""Grapheme-to-phoneme rules, articulatory features, and phone-level rates.

PER treats every phone substitution as equally wrong. The weighted
variant scores a substitution by how far apart the two phones are in
articulatory feature space, so near-misses (voicing, emphasis) cost less
than full confusions:

    PSD = (w_sub * sum(1 - sim(x_i, y_i)) + w_del * D + w_ins * I) / N

where the sum runs over aligned substitution pairs, D and I count
deletions and insertions, and N is the reference phone count. The
alignment itself is optimized under these weighted costs.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

from .align import AlignmentResult, CostModel, align
from .data import G2P_ARABIC, G2P_ENGLISH, FEATURE_TABLE, data_path
from .errors import (
    DuplicateKeyError,
    EmptyReferenceError,
    ParseError,
    UnknownGraphemeError,
    UnknownPhoneError,
)
from .textnorm import ARABIC_RANGES, Script, tokenize

log = logging.getLogger(__name__)

PhoneSequence = tuple[str, ...]

_FEATURE_VALUES = {"+", "-", "0"}
_SILENT = {"", "∅"}  # empty output field, spelled bare or as the empty-set sign


class G2PRule(NamedTuple):
    """One ordered rewrite: grapheme -> phones, with optional contexts.

    A context of ``#`` anchors at the word edge; any other context is a
    literal string that must appear adjacent to the grapheme.
    """

    grapheme: str
    phones: PhoneSequence
    left: str | None = None
    right: str | None = None


@dataclass(frozen=True)
class G2PRuleSet:
    language: str
    rules: tuple[G2PRule, ...]


def load_g2p_rules(path: str | Path, language: str | None = None) -> G2PRuleSet:
    """Read a rule table: ``grapheme<TAB>phones[<TAB>left<TAB>right]`` per
    line, phones space-separated, empty phones meaning silence."""
    path = Path(path)
    rules: list[G2PRule] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 2 or len(parts) > 4:
                raise ParseError(f"{path}:{lineno}: expected 2 to 4 tab-separated fields")
            grapheme = parts[0]
            if not grapheme:
                raise ParseError(f"{path}:{lineno}: empty grapheme")
            ipa = parts[1].strip()
            phones: PhoneSequence = () if ipa in _SILENT else tuple(ipa.split())
            left = parts[2] if len(parts) > 2 and parts[2] else None
            right = parts[3] if len(parts) > 3 and parts[3] else None
            rules.append(G2PRule(grapheme, phones, left, right))
    return G2PRuleSet(language=language or path.stem, rules=tuple(rules))


def _left_matches(ctx: str, text: str, pos: int) -> bool:
    if ctx == "#":
        return pos == 0
    return pos >= len(ctx) and text[pos - len(ctx):pos] == ctx


def _right_matches(ctx: str, text: str, pos: int) -> bool:
    if ctx == "#":
        return pos == len(text)
    return text[pos:pos + len(ctx)] == ctx


def _best_rule(ruleset: G2PRuleSet, text: str, pos: int) -> G2PRule | None:
    # Longest applicable grapheme wins; among equal lengths, earliest rule.
    best: G2PRule | None = None
    for rule in ruleset.rules:
        if not text.startswith(rule.grapheme, pos):
            continue
        if rule.left is not None and not _left_matches(rule.left, text, pos):
            continue
        if rule.right is not None and not _right_matches(rule.right, text, pos + len(rule.grapheme)):
            continue
        if best is None or len(rule.grapheme) > len(best.grapheme):
            best = rule
    return best


def _apply_rules(ruleset: G2PRuleSet, text: str, on_unknown: str) -> list[str]:
    phones: list[str] = []
    pos = 0
    while pos < len(text):
        rule = _best_rule(ruleset, text, pos)
        if rule is None:
            if on_unknown == "error":
                raise UnknownGraphemeError(
                    f"no {ruleset.language} rule applies to {text[pos]!r} "
                    f"at position {pos} of {text!r}"
                )
            log.warning("skipping unknown grapheme %r in %r", text[pos], text)
            pos += 1
            continue
        phones.extend(rule.phones)
        pos += len(rule.grapheme)
    return phones


def _char_script(ch: str) -> Script:
    cp = ord(ch)
    if any(lo <= cp <= hi for lo, hi in ARABIC_RANGES):
        return Script.ARABIC
    # The apostrophe rides with Latin runs so contractions stay whole.
    if "a" <= ch <= "z" or "A" <= ch <= "Z" or ch == "'":
        return Script.LATIN
    return Script.OTHER


def _script_runs(surface: str) -> list[tuple[Script, str]]:
    runs: list[tuple[Script, str]] = []
    for ch in surface:
        script = _char_script(ch)
        if runs and runs[-1][0] is script:
            runs[-1] = (script, runs[-1][1] + ch)
        else:
            runs.append((script, ch))
    return runs


def g2p(text: str, rule_sets: Mapping[Script, G2PRuleSet],
        on_unknown: str = "error") -> PhoneSequence:
    """Convert text to a flat phone sequence, word boundaries dropped.

    Tokens classify OTHER (tags, digits, punctuation) produce no phones.
    Mixed-script tokens are handled one same-script run at a time. Latin
    runs are lowercased first so case never changes pronunciation.
    ``on_unknown`` is ``error`` or ``skip``.
    """
    if on_unknown not in ("error", "skip"):
        raise ValueError(f"on_unknown must be 'error' or 'skip', got {on_unknown!r}")
    phones: list[str] = []
    for token in tokenize(text):
        if token.script is Script.OTHER:
            continue
        for script, run in _script_runs(token.surface):
            if script is Script.OTHER:
                ruleset = None
            else:
                ruleset = rule_sets.get(script)
            if ruleset is None:
                if on_unknown == "error":
                    raise UnknownGraphemeError(
                        f"no rule set covers {run!r} ({script.value}) in token "
                        f"{token.surface!r}"
                    )
                log.warning("skipping %r: no rule set for %s", run, script.value)
                continue
            if script is Script.LATIN:
                run = run.lower()
            phones.extend(_apply_rules(ruleset, run, on_unknown))
    return tuple(phones)


@dataclass(frozen=True)
class FeatureTable:
    """Ternary articulatory feature vectors, one per phone."""

    features: tuple[str, ...]
    vectors: Mapping[str, tuple[str, ...]]

    def __contains__(self, phone: str) -> bool:
        return phone in self.vectors

    @property
    def num_features(self) -> int:
        return len(self.features)

    def vector(self, phone: str) -> tuple[str, ...]:
        try:
            return self.vectors[phone]
        except KeyError:
            raise UnknownPhoneError(f"phone {phone!r} is not in the feature table") from None


def load_feature_table(path: str | Path) -> FeatureTable:
    """Read a feature CSV: header names the features, one row per phone,
    cells drawn from ``+``, ``-``, ``0``."""
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty feature table") from None
        if len(header) < 2 or header[0].strip().lower() != "phone":
            raise ParseError(f"{path}:1: header must be 'phone' followed by feature names")
        features = tuple(name.strip() for name in header[1:])
        if any(not name for name in features):
            raise ParseError(f"{path}:1: empty feature name in header")
        vectors: dict[str, tuple[str, ...]] = {}
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(features) + 1:
                raise ParseError(
                    f"{path}:{lineno}: expected {len(features) + 1} cells, got {len(row)}"
                )
            phone = row[0].strip()
            if not phone:
                raise ParseError(f"{path}:{lineno}: empty phone")
            if phone in vectors:
                raise DuplicateKeyError(f"{path}:{lineno}: duplicate phone {phone!r}")
            values = tuple(cell.strip().replace("−", "-") for cell in row[1:])
            for value in values:
                if value not in _FEATURE_VALUES:
                    raise ParseError(
                        f"{path}:{lineno}: feature value must be one of + - 0, got {value!r}"
                    )
            vectors[phone] = values
    return FeatureTable(features=features, vectors=vectors)


def phone_sim(x: str, y: str, table: FeatureTable) -> float:
    """Feature-space similarity: 1 - (differing features) / F.

    Symmetric, 1.0 on the diagonal; a zero against either signed value
    counts as one differing feature.
    """
    vx = table.vector(x)
    vy = table.vector(y)
    differing = sum(1 for a, b in zip(vx, vy) if a != b)
    return 1.0 - differing / table.num_features


@dataclass(frozen=True)
class PSDWeights:
    w_sub: float = 1.0
    w_del: float = 1.0
    w_ins: float = 1.0

    def __post_init__(self) -> None:
        for label, value in (("w_sub", self.w_sub), ("w_del", self.w_del),
                             ("w_ins", self.w_ins)):
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                raise ValueError(f"{label} must be finite and non-negative, got {value!r}")


def _check_phones(phones: Iterable[str], table: FeatureTable) -> None:
    for phone in phones:
        if phone not in table:
            raise UnknownPhoneError(f"phone {phone!r} is not in the feature table")


def per(ref_phones: Sequence[str], hyp_phones: Sequence[str]) -> float:
    """Phone error rate: unit-cost edits over the reference length."""
    if len(ref_phones) == 0:
        if len(hyp_phones) == 0:
            return 0.0
        raise EmptyReferenceError("empty reference phone sequence")
    counts = align(ref_phones, hyp_phones)
    return (counts.subs + counts.dels + counts.ins) / len(ref_phones)


def psd_alignment(ref_phones: Sequence[str], hyp_phones: Sequence[str],
                  weights: PSDWeights, table: FeatureTable) -> AlignmentResult:
    """The cost-optimal alignment under feature-weighted substitution."""
    model = CostModel(
        sub_cost=lambda a, b: weights.w_sub * (1.0 - phone_sim(a, b, table)),
        del_cost=weights.w_del,
        ins_cost=weights.w_ins,
    )
    return align(ref_phones, hyp_phones, model)


def psd(ref_phones: Sequence[str], hyp_phones: Sequence[str],
        table: FeatureTable, weights: PSDWeights | None = None) -> float:
    """Phone similarity distance, weighted edit cost per reference phone."""
    weights = weights or PSDWeights()
    _check_phones(ref_phones, table)
    _check_phones(hyp_phones, table)
    if len(ref_phones) == 0:
        if len(hyp_phones) == 0:
            return 0.0
        raise EmptyReferenceError("empty reference phone sequence")
    result = psd_alignment(ref_phones, hyp_phones, weights, table)
    return result.cost / len(ref_phones)


def default_feature_table() -> FeatureTable:
    return load_feature_table(data_path(FEATURE_TABLE))


def default_rule_sets() -> dict[Script, G2PRuleSet]:
    """The packaged desk-scale rule tables keyed by token script."""
    return {
        Script.ARABIC: load_g2p_rules(data_path(G2P_ARABIC), language="ara-Arab"),
        Script.LATIN: load_g2p_rules(data_path(G2P_ENGLISH), language="eng-Latn"),
    }
