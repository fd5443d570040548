"""Evaluation toolkit for code-switched ASR output.

Alignment-based error rates, phonologically weighted distances,
transliteration and normalization pipelines, code-mixing statistics,
and a ground-truth benchmarking harness.
"""

from .align import AlignmentResult, CostModel, EditOp, align, unit_cost_model
from .benchmark import (
    AveragePooling,
    CorrelationReport,
    CountsPooling,
    IAAMatrix,
    MetricConfig,
    RatioPooling,
    SystemReport,
    correlation_csv,
    correlation_markdown,
    error_rate_configs,
    gold_cer,
    iaa_csv,
    iaa_markdown,
    iaa_matrix,
    mt_metric_configs,
    pearson,
    per_recording_csv,
    phonology_configs,
    recording_cmi_values,
    semantic_configs,
    sentence_correlations,
    spearman,
    system_csv,
    system_markdown,
    system_scores,
    utterance_cmi_values,
)
from .codeswitch import LangTag, LanguageTaggedUtterance, cmi, recording_cmi, tag_languages
from .corpus import UtteranceRecord, choose_minimal_edit, load_corpus, save_corpus
from .errors import (
    DegenerateVarianceError,
    DimensionMismatchError,
    DuplicateIdError,
    DuplicateKeyError,
    EmptyReferenceError,
    InsufficientAnnotatorsError,
    InvalidSchemeError,
    MissingEmbeddingError,
    NoLanguageTokensError,
    ParseError,
    ToolkitError,
    UnknownGraphemeError,
    UnknownPhoneError,
    ZeroVectorError,
)
from .error_rates import ErrorRates, Pipeline, cer, mer, score_with_pipeline, wer, wil
from .phonology import (
    FeatureTable,
    G2PRule,
    G2PRuleSet,
    PSDWeights,
    default_feature_table,
    default_rule_sets,
    g2p,
    load_feature_table,
    load_g2p_rules,
    per,
    phone_sim,
    psd,
    psd_alignment,
)
from .semantic import ChannelScores, EmbeddingStore, bleu, channel_semantic, chrf, cosine
from .textnorm import (
    NormalizationProfile,
    Script,
    Token,
    classify_script,
    normalize,
    parse_profile,
    tokenize,
)
from .translit import (
    Direction,
    Fallback,
    TransliterationScheme,
    buckwalter_scheme,
    load_scheme,
    transliterate,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult",
    "AveragePooling",
    "ChannelScores",
    "CorrelationReport",
    "CostModel",
    "CountsPooling",
    "DegenerateVarianceError",
    "DimensionMismatchError",
    "Direction",
    "DuplicateIdError",
    "DuplicateKeyError",
    "EditOp",
    "EmbeddingStore",
    "EmptyReferenceError",
    "ErrorRates",
    "Fallback",
    "FeatureTable",
    "G2PRule",
    "G2PRuleSet",
    "IAAMatrix",
    "InsufficientAnnotatorsError",
    "InvalidSchemeError",
    "LangTag",
    "LanguageTaggedUtterance",
    "MetricConfig",
    "MissingEmbeddingError",
    "NoLanguageTokensError",
    "NormalizationProfile",
    "PSDWeights",
    "ParseError",
    "Pipeline",
    "RatioPooling",
    "Script",
    "SystemReport",
    "Token",
    "ToolkitError",
    "TransliterationScheme",
    "UnknownGraphemeError",
    "UnknownPhoneError",
    "UtteranceRecord",
    "ZeroVectorError",
    "align",
    "bleu",
    "buckwalter_scheme",
    "cer",
    "channel_semantic",
    "choose_minimal_edit",
    "chrf",
    "classify_script",
    "cmi",
    "correlation_csv",
    "correlation_markdown",
    "cosine",
    "default_feature_table",
    "default_rule_sets",
    "error_rate_configs",
    "g2p",
    "gold_cer",
    "iaa_csv",
    "iaa_markdown",
    "iaa_matrix",
    "load_corpus",
    "load_feature_table",
    "load_g2p_rules",
    "load_scheme",
    "mer",
    "mt_metric_configs",
    "normalize",
    "parse_profile",
    "pearson",
    "per",
    "per_recording_csv",
    "phone_sim",
    "phonology_configs",
    "psd",
    "psd_alignment",
    "recording_cmi",
    "recording_cmi_values",
    "save_corpus",
    "score_with_pipeline",
    "semantic_configs",
    "sentence_correlations",
    "spearman",
    "system_csv",
    "system_markdown",
    "system_scores",
    "tag_languages",
    "tokenize",
    "transliterate",
    "unit_cost_model",
    "utterance_cmi_values",
    "wer",
    "wil",
]
