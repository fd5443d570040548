import pytest

from cs_eval.data import data_path
from cs_eval.phonology import default_feature_table, default_rule_sets


@pytest.fixture(scope="session")
def feature_table():
    return default_feature_table()


@pytest.fixture(scope="session")
def rule_sets():
    return default_rule_sets()


@pytest.fixture(scope="session")
def toy_corpus_path():
    return data_path("toy_corpus.jsonl")


@pytest.fixture(scope="session")
def toy_embeddings_path():
    return data_path("toy_embeddings.jsonl")


@pytest.fixture(scope="session")
def toy_scheme_path():
    return data_path("toy_scheme.tsv")
