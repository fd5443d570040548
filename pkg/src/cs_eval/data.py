"""Locations of the packaged data tables.

Setting the ``CS_EVAL_DATA_DIR`` environment variable points default
lookups at a directory of replacement tables; files missing there fall
back to the packaged copies.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

ENV_DATA_DIR = "CS_EVAL_DATA_DIR"

FEATURE_TABLE = "phone_features.csv"
G2P_ARABIC = "g2p_arabic.tsv"
G2P_ENGLISH = "g2p_english.tsv"
TOY_CORPUS = "toy_corpus.jsonl"
TOY_EMBEDDINGS = "toy_embeddings.jsonl"
TOY_SCHEME = "toy_scheme.tsv"


def data_path(filename: str) -> Path:
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        candidate = Path(override) / filename
        if candidate.exists():
            return candidate
    return Path(str(resources.files("cs_eval").joinpath("data", filename)))
