import json
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cs_eval.errors import (
    DimensionMismatchError,
    DuplicateKeyError,
    EmptyReferenceError,
    MissingEmbeddingError,
    ParseError,
    ZeroVectorError,
)
from cs_eval.semantic import (
    ChannelScores,
    EmbeddingStore,
    bleu,
    channel_semantic,
    chrf,
    cosine,
)
from oracles import bleu_oracle, chrf_oracle

words = st.lists(st.sampled_from(["the", "cat", "sat", "on", "mat"]),
                 min_size=1, max_size=10)
strings = st.text(alphabet="abcd ", min_size=1, max_size=12)


# ---------------------------------------------------------------------------
# cosine

def test_cosine_identity():
    v = np.array([0.3, -1.2, 4.0])
    assert cosine(v, v) == pytest.approx(1.0)


def test_cosine_orthogonal():
    assert cosine(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == pytest.approx(0.0)


def test_cosine_hand_value():
    assert cosine(np.array([1.0, 1.0]), np.array([1.0, 0.0])) == pytest.approx(
        1 / math.sqrt(2))


def test_cosine_scale_invariant():
    a = np.array([0.5, 2.0, -1.0])
    b = np.array([1.5, 0.25, 0.75])
    assert cosine(3.0 * a, b) == pytest.approx(cosine(a, 10.0 * b))


def test_cosine_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        cosine(np.array([1.0, 2.0]), np.array([1.0, 2.0, 3.0]))


def test_cosine_zero_vector():
    with pytest.raises(ZeroVectorError):
        cosine(np.zeros(3), np.array([1.0, 2.0, 3.0]))


# ---------------------------------------------------------------------------
# embedding store

def write_store(path, records):
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record) + "\n")


def base_records():
    return [
        {"id": "u1", "side": "ref", "channel": "Base", "vector": [1.0, 0.0]},
        {"id": "u1", "side": "hyp", "channel": "Base", "vector": [1.0, 0.0]},
        {"id": "u1", "side": "ref", "channel": "En", "vector": [0.0, 1.0]},
        {"id": "u1", "side": "hyp", "channel": "En", "vector": [1.0, 1.0]},
    ]


def test_store_load_and_get(tmp_path):
    path = tmp_path / "emb.jsonl"
    write_store(path, base_records())
    store = EmbeddingStore.load(path)
    assert store.dim == 2
    assert sorted(store.channels()) == ["Base", "En"]
    assert list(store.get("u1", "ref", "Base")) == [1.0, 0.0]


def test_store_skips_comments_and_blanks(tmp_path):
    path = tmp_path / "emb.jsonl"
    lines = ["# header comment", ""]
    lines.extend(json.dumps(r) for r in base_records())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    assert EmbeddingStore.load(path).dim == 2


def test_store_dimension_mismatch_names_line(tmp_path):
    path = tmp_path / "emb.jsonl"
    records = base_records()
    records[2]["vector"] = [1.0, 2.0, 3.0]
    write_store(path, records)
    with pytest.raises(DimensionMismatchError, match=":3"):
        EmbeddingStore.load(path)


def test_store_duplicate_key_rejected(tmp_path):
    path = tmp_path / "emb.jsonl"
    records = base_records() + [base_records()[0]]
    write_store(path, records)
    with pytest.raises(DuplicateKeyError):
        EmbeddingStore.load(path)


def test_store_missing_field_rejected(tmp_path):
    path = tmp_path / "emb.jsonl"
    write_store(path, [{"id": "u1", "side": "ref", "vector": [1.0]}])
    with pytest.raises(ParseError, match="channel"):
        EmbeddingStore.load(path)


def test_store_bad_side_rejected(tmp_path):
    path = tmp_path / "emb.jsonl"
    write_store(path, [{"id": "u1", "side": "reference", "channel": "Base",
                        "vector": [1.0]}])
    with pytest.raises(ParseError, match="side"):
        EmbeddingStore.load(path)


def test_store_missing_embedding_names_key(tmp_path):
    path = tmp_path / "emb.jsonl"
    write_store(path, base_records())
    store = EmbeddingStore.load(path)
    with pytest.raises(MissingEmbeddingError, match="u2.*hyp.*Base"):
        store.get("u2", "hyp", "Base")


# ---------------------------------------------------------------------------
# channel aggregation

def test_channel_semantic_identical_vectors(tmp_path):
    path = tmp_path / "emb.jsonl"
    write_store(path, base_records())
    store = EmbeddingStore.load(path)
    scores = channel_semantic("u1", store, ["Base"])
    assert scores.scores["Base"] == pytest.approx(1.0)
    assert scores.avg == pytest.approx(1.0)
    assert scores.max == pytest.approx(1.0)


def test_channel_scores_avg_and_max():
    scores = ChannelScores.from_scores({"Base": 0.8, "Ar": 0.6, "Ja": 1.0})
    assert scores.avg == pytest.approx(0.8)
    assert scores.max == pytest.approx(1.0)


def test_two_channel_aggregate_formula():
    scores = ChannelScores.from_scores({"a": 0.25, "b": 0.75})
    assert scores.avg == pytest.approx(0.5)
    assert scores.max == pytest.approx(0.75)


@given(st.dictionaries(st.sampled_from(["a", "b", "c", "d"]),
                       st.floats(-1, 1), min_size=1))
def test_avg_never_exceeds_max(scores):
    cs = ChannelScores.from_scores(scores)
    assert cs.avg <= cs.max + 1e-12


# ---------------------------------------------------------------------------
# bleu

def test_bleu_perfect_match():
    assert bleu(["a", "b", "c", "d"], ["a", "b", "c", "d"]) == pytest.approx(1.0)


def test_bleu_zero_unigram_overlap():
    assert bleu(["a", "b"], ["x", "y"]) == 0.0


def test_bleu_empty_hypothesis():
    assert bleu(["a"], []) == 0.0


def test_bleu_empty_reference_raises():
    with pytest.raises(EmptyReferenceError):
        bleu([], ["a"])


def test_bleu_worked_pair_matches_oracle():
    ref = ["a", "b", "c", "d"]
    hyp = ["a", "b", "c", "d", "e"]
    assert bleu(ref, hyp) == pytest.approx(bleu_oracle(ref, hyp), abs=1e-9)


def test_bleu_brevity_penalty_applies():
    ref = ["a", "b", "c", "d"]
    hyp = ["a", "b"]
    assert bleu(ref, hyp) == pytest.approx(bleu_oracle(ref, hyp), abs=1e-9)
    assert bleu(ref, hyp) < bleu(["a", "b"], ["a", "b"])


def test_store_empty_file_rejected(tmp_path):
    path = tmp_path / "emb.jsonl"
    path.write_text("# only a comment\n", encoding="utf-8")
    with pytest.raises(ParseError, match="no embedding records"):
        EmbeddingStore.load(path)


@given(words, words)
def test_bleu_matches_oracle(ref, hyp):
    assert bleu(ref, hyp) == pytest.approx(bleu_oracle(ref, hyp), abs=1e-9)


@given(words, words)
def test_bleu_in_unit_interval(ref, hyp):
    assert 0.0 <= bleu(ref, hyp) <= 1.0 + 1e-12


# ---------------------------------------------------------------------------
# chrf

def test_chrf_perfect_match():
    assert chrf("abcd", "abcd") == pytest.approx(1.0)


def test_chrf_disjoint_characters():
    assert chrf("aaaa", "zzzz") == 0.0


def test_chrf_empty_reference_raises():
    with pytest.raises(EmptyReferenceError):
        chrf("", "abc")


def test_chrf_worked_pair_matches_oracle():
    assert chrf("abcd", "abcf") == pytest.approx(chrf_oracle("abcd", "abcf"),
                                                 abs=1e-9)


def test_chrf_whitespace_counts_as_characters():
    assert chrf("a b", "ab") != chrf("ab", "ab")


@given(strings, strings)
def test_chrf_matches_oracle(ref, hyp):
    assert chrf(ref, hyp) == pytest.approx(chrf_oracle(ref, hyp), abs=1e-9)


@given(strings, strings)
def test_chrf_in_unit_interval(ref, hyp):
    assert 0.0 <= chrf(ref, hyp) <= 1.0 + 1e-12


def test_bleu_chrf_are_directional():
    # ref/hyp roles matter: swapping them changes the value
    ref = ["a", "a", "b"]
    hyp = ["a", "b", "b", "b"]
    assert bleu(ref, hyp) != bleu(hyp, ref)
    assert chrf("aab", "abbb") != chrf("abbb", "aab")
