"""Corpus records and their JSON-lines serialization.

One line per utterance: id fields, the reference transcript, one
hypothesis per system, zero or more minimal-edit post-editions keyed by
annotator, and an ``unclear`` flag for utterances whose audio the
annotators could not resolve.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DuplicateIdError, ParseError


@dataclass
class UtteranceRecord:
    utterance_id: str
    recording_id: str
    reference: str
    hypotheses: dict[str, str]
    minimal_edits: dict[str, str] = field(default_factory=dict)
    unclear: bool = False
    primary_annotator: str | None = None

    def to_json(self) -> dict:
        record = {
            "utterance_id": self.utterance_id,
            "recording_id": self.recording_id,
            "reference": self.reference,
            "hypotheses": self.hypotheses,
            "minimal_edits": self.minimal_edits,
            "unclear": self.unclear,
        }
        if self.primary_annotator is not None:
            record["primary_annotator"] = self.primary_annotator
        return record


def _string_map(value: object, what: str, problems: list[str], lineno: int,
                require_entries: bool) -> dict[str, str] | None:
    if not isinstance(value, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in value.items()
    ):
        problems.append(f"line {lineno}: {what} must map strings to strings")
        return None
    if require_entries and not value:
        problems.append(f"line {lineno}: {what} must have at least one entry")
        return None
    return dict(value)


def _record_from_json(obj: object, lineno: int, problems: list[str]) -> UtteranceRecord | None:
    if not isinstance(obj, dict):
        problems.append(f"line {lineno}: expected a JSON object")
        return None
    bad = False
    for key in ("utterance_id", "recording_id", "reference"):
        value = obj.get(key)
        if not isinstance(value, str) or (key != "reference" and not value):
            problems.append(f"line {lineno}: {key} must be a non-empty string"
                            if key != "reference"
                            else f"line {lineno}: reference must be a string")
            bad = True
    hypotheses = _string_map(obj.get("hypotheses"), "hypotheses", problems, lineno,
                             require_entries=True)
    minimal_edits = _string_map(obj.get("minimal_edits", {}), "minimal_edits", problems,
                                lineno, require_entries=False)
    unclear = obj.get("unclear", False)
    if not isinstance(unclear, bool):
        problems.append(f"line {lineno}: unclear must be a boolean")
        bad = True
    primary = obj.get("primary_annotator")
    if primary is not None and not isinstance(primary, str):
        problems.append(f"line {lineno}: primary_annotator must be a string")
        bad = True
    if bad or hypotheses is None or minimal_edits is None:
        return None
    return UtteranceRecord(
        utterance_id=obj["utterance_id"],
        recording_id=obj["recording_id"],
        reference=obj["reference"],
        hypotheses=hypotheses,
        minimal_edits=minimal_edits,
        unclear=unclear,
        primary_annotator=primary,
    )


def load_corpus(path: str | Path) -> list[UtteranceRecord]:
    """Read a JSON-lines corpus, reporting every malformed line at once."""
    path = Path(path)
    records: list[UtteranceRecord] = []
    problems: list[str] = []
    duplicates: list[str] = []
    seen: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                problems.append(f"line {lineno}: invalid JSON ({exc.msg})")
                continue
            record = _record_from_json(obj, lineno, problems)
            if record is None:
                continue
            if record.utterance_id in seen:
                duplicates.append(
                    f"line {lineno}: utterance_id {record.utterance_id!r} already "
                    f"seen on line {seen[record.utterance_id]}"
                )
                continue
            seen[record.utterance_id] = lineno
            records.append(record)
    if duplicates:
        raise DuplicateIdError(f"{path}: " + "; ".join(duplicates))
    if problems:
        raise ParseError(f"{path}:\n" + "\n".join(problems))
    return records


def save_corpus(records: Iterable[UtteranceRecord], path: str | Path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record.to_json(), ensure_ascii=False) + "\n")


def choose_minimal_edit(record: UtteranceRecord,
                        annotator: str | None = None) -> tuple[str, str] | None:
    """Pick the minimal edit used as scoring ground truth.

    An explicit ``annotator`` wins and must exist on the record; next the
    record's designated primary annotator if it has an edit; otherwise
    the lexicographically first annotator. None if the record has no
    edits at all.
    """
    edits = record.minimal_edits
    if annotator is not None:
        if annotator not in edits:
            raise KeyError(
                f"annotator {annotator!r} has no minimal edit for "
                f"utterance {record.utterance_id!r}"
            )
        return annotator, edits[annotator]
    if not edits:
        return None
    if record.primary_annotator is not None and record.primary_annotator in edits:
        return record.primary_annotator, edits[record.primary_annotator]
    first = min(edits)
    return first, edits[first]
