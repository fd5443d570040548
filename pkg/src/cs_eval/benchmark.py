"""Benchmarking metrics against human ground truth.

The ground truth for a hypothesis is its minimal-edit post-edition: the
transcript an annotator produced by changing the hypothesis only where
it is actually wrong. GoldCER is the character error rate of the
hypothesis measured against that post-edition. Everything here compares
automatic metrics to GoldCER: sentence-level correlation (pooled and per
recording), inter-annotator agreement matrices, and system-level scores
with rank-agreement flags.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
from scipy import stats as _stats

from .align import AlignmentResult, align
from .codeswitch import LanguageTaggedUtterance, cmi as utterance_cmi, tag_languages
from .corpus import UtteranceRecord, choose_minimal_edit
from .errors import (
    DegenerateVarianceError,
    EmptyReferenceError,
    InsufficientAnnotatorsError,
    NoLanguageTokensError,
)
from .error_rates import (
    ErrorRates,
    Pipeline,
    cer,
    mer_from_counts,
    score_with_pipeline,
    wer_from_counts,
    wil_from_counts,
)
from .phonology import FeatureTable, G2PRuleSet, PSDWeights, g2p, psd_alignment
from .semantic import EmbeddingStore, bleu, channel_semantic, chrf, cosine
from .textnorm import NormalizationProfile, Script, tokenize

log = logging.getLogger(__name__)


def gold_cer(hypothesis: str, minimal_edit: str) -> float:
    """Character error rate of a hypothesis against its post-edition."""
    if len(minimal_edit) == 0:
        raise EmptyReferenceError("minimal edit text is empty")
    return cer(minimal_edit, hypothesis)


# ---------------------------------------------------------------------------
# Correlation primitives.

def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    _check_series(xs, ys)
    return float(_stats.pearsonr(xs, ys)[0])


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    _check_series(xs, ys)
    return float(_stats.spearmanr(xs, ys)[0])


def _check_series(xs: Sequence[float], ys: Sequence[float]) -> None:
    if len(xs) != len(ys):
        raise ValueError(f"series lengths differ: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise DegenerateVarianceError("correlation needs at least two points")
    if len(set(xs)) == 1 or len(set(ys)) == 1:
        raise DegenerateVarianceError("correlation is undefined for a constant series")


# ---------------------------------------------------------------------------
# Metric configurations.

@dataclass(frozen=True)
class AveragePooling:
    """System score is the mean of sentence scores."""


@dataclass(frozen=True)
class RatioPooling:
    """System score is a summed numerator over a summed denominator."""

    parts: Callable[[UtteranceRecord, str], tuple[float, float]]


@dataclass(frozen=True)
class CountsPooling:
    """System score applies a rate formula to summed alignment counts."""

    counts: Callable[[UtteranceRecord, str], AlignmentResult]
    formula: Callable[[AlignmentResult], float]


@dataclass(frozen=True)
class MetricConfig:
    """One scoreable metric variant.

    ``kind`` decides the correlation target (error metrics correlate
    with GoldCER, accuracy metrics with 1 - GoldCER) and the ranking
    direction. ``sentence_fn`` maps (record, system id) to a score and
    may raise EmptyReferenceError to drop a row it cannot score.
    """

    metric: str
    config: str
    kind: str  # "error" | "accuracy"
    sentence_fn: Callable[[UtteranceRecord, str], float]
    pooling: AveragePooling | RatioPooling | CountsPooling = field(
        default_factory=AveragePooling
    )

    def __post_init__(self) -> None:
        if self.kind not in ("error", "accuracy"):
            raise ValueError(f"kind must be 'error' or 'accuracy', got {self.kind!r}")

    @property
    def label(self) -> str:
        return f"{self.metric}[{self.config}]"


class _PipelineRates:
    """Shared per-(utterance, system) cache so the four orthographic
    rates of one pipeline cost a single pair of alignments."""

    def __init__(self, pipeline: Pipeline) -> None:
        self.pipeline = pipeline
        self._cache: dict[tuple[str, str], ErrorRates] = {}

    def rates(self, record: UtteranceRecord, system_id: str) -> ErrorRates:
        key = (record.utterance_id, system_id)
        if key not in self._cache:
            self._cache[key] = score_with_pipeline(
                record.reference, record.hypotheses[system_id], self.pipeline
            )
        return self._cache[key]


def error_rate_configs(pipelines: Mapping[str, Pipeline]) -> list[MetricConfig]:
    """CER, WER, MER, and WIL under each named pipeline."""
    configs: list[MetricConfig] = []
    for label, pipeline in pipelines.items():
        cache = _PipelineRates(pipeline)
        char_counts = lambda r, s, c=cache: c.rates(r, s).char_alignment
        word_counts = lambda r, s, c=cache: c.rates(r, s).word_alignment
        configs.extend([
            MetricConfig("cer", label, "error",
                         lambda r, s, c=cache: c.rates(r, s).cer,
                         CountsPooling(char_counts, wer_from_counts)),
            MetricConfig("wer", label, "error",
                         lambda r, s, c=cache: c.rates(r, s).wer,
                         CountsPooling(word_counts, wer_from_counts)),
            MetricConfig("mer", label, "error",
                         lambda r, s, c=cache: c.rates(r, s).mer,
                         CountsPooling(word_counts, mer_from_counts)),
            MetricConfig("wil", label, "error",
                         lambda r, s, c=cache: c.rates(r, s).wil,
                         CountsPooling(word_counts, wil_from_counts)),
        ])
    return configs


class _PhoneCache:
    def __init__(self, rule_sets: Mapping[Script, G2PRuleSet], on_unknown: str) -> None:
        self.rule_sets = rule_sets
        self.on_unknown = on_unknown
        self._ref: dict[str, tuple[str, ...]] = {}
        self._hyp: dict[tuple[str, str], tuple[str, ...]] = {}

    def ref_phones(self, record: UtteranceRecord) -> tuple[str, ...]:
        if record.utterance_id not in self._ref:
            self._ref[record.utterance_id] = g2p(
                record.reference, self.rule_sets, self.on_unknown
            )
        return self._ref[record.utterance_id]

    def hyp_phones(self, record: UtteranceRecord, system_id: str) -> tuple[str, ...]:
        key = (record.utterance_id, system_id)
        if key not in self._hyp:
            self._hyp[key] = g2p(
                record.hypotheses[system_id], self.rule_sets, self.on_unknown
            )
        return self._hyp[key]


def phonology_configs(table: FeatureTable, rule_sets: Mapping[Script, G2PRuleSet],
                      sub_weights: Sequence[float] = (1.0, 2.0, 4.0, 8.0),
                      on_unknown: str = "skip") -> list[MetricConfig]:
    """PER plus one weighted-distance config per substitution weight."""
    cache = _PhoneCache(rule_sets, on_unknown)

    def per_parts(record: UtteranceRecord, system_id: str) -> tuple[float, float]:
        ref = cache.ref_phones(record)
        if not ref:
            raise EmptyReferenceError("reference yields no phones")
        counts = align(ref, cache.hyp_phones(record, system_id))
        return float(counts.subs + counts.dels + counts.ins), float(len(ref))

    configs = [MetricConfig(
        "per", "base", "error",
        lambda r, s: _ratio(per_parts(r, s)),
        RatioPooling(per_parts),
    )]
    for weight in sub_weights:
        weights = PSDWeights(w_sub=float(weight))

        def psd_parts(record: UtteranceRecord, system_id: str,
                      w: PSDWeights = weights) -> tuple[float, float]:
            ref = cache.ref_phones(record)
            if not ref:
                raise EmptyReferenceError("reference yields no phones")
            result = psd_alignment(ref, cache.hyp_phones(record, system_id), w, table)
            return result.cost, float(len(ref))

        label = f"wsub={weight:g}"
        configs.append(MetricConfig(
            "psd", label, "error",
            lambda r, s, parts=psd_parts: _ratio(parts(r, s)),
            RatioPooling(psd_parts),
        ))
    return configs


def _ratio(parts: tuple[float, float]) -> float:
    return parts[0] / parts[1]


def mt_metric_configs(profile: NormalizationProfile | None = None) -> list[MetricConfig]:
    """Sentence BLEU and chrF on normalized text."""
    profile = profile or NormalizationProfile(lowercase_latin=True, alif_ya=True)
    pipeline = Pipeline(profile=profile)

    def bleu_fn(record: UtteranceRecord, system_id: str) -> float:
        ref = [t.surface for t in tokenize(pipeline.apply(record.reference))]
        hyp = [t.surface for t in tokenize(pipeline.apply(record.hypotheses[system_id]))]
        if not ref:
            raise EmptyReferenceError("reference has no tokens")
        return bleu(ref, hyp)

    def chrf_fn(record: UtteranceRecord, system_id: str) -> float:
        ref = pipeline.apply(record.reference)
        hyp = pipeline.apply(record.hypotheses[system_id])
        if not ref:
            raise EmptyReferenceError("reference is empty")
        return chrf(ref, hyp)

    return [
        MetricConfig("bleu", "norm", "accuracy", bleu_fn),
        MetricConfig("chrf", "norm", "accuracy", chrf_fn),
    ]


def semantic_configs(store: EmbeddingStore,
                     channels: Sequence[str] | None = None) -> list[MetricConfig]:
    """Per-channel cosine plus the Avg and Max aggregates."""
    channel_list = list(channels) if channels is not None else store.channels()
    if not channel_list:
        raise ValueError("embedding store has no channels")
    configs = [
        MetricConfig("cosine", channel, "accuracy",
                     lambda r, s, ch=channel: cosine(
                         store.get(r.utterance_id, "ref", ch),
                         store.get(r.utterance_id, "hyp", ch)))
        for channel in channel_list
    ]
    configs.append(MetricConfig(
        "cosine", "avg", "accuracy",
        lambda r, s: channel_semantic(r.utterance_id, store, channel_list).avg))
    configs.append(MetricConfig(
        "cosine", "max", "accuracy",
        lambda r, s: channel_semantic(r.utterance_id, store, channel_list).max))
    return configs


# ---------------------------------------------------------------------------
# Inter-annotator agreement.

@dataclass(frozen=True)
class IAAMatrix:
    granularity: str
    annotators: tuple[str, ...]
    pairwise: Mapping[tuple[str, str], float]
    pair_counts: Mapping[tuple[str, str], int]
    vs_hypotheses: Mapping[str, float]
    vs_references: Mapping[str, float]

    @property
    def pair_average(self) -> float:
        return sum(self.pairwise.values()) / len(self.pairwise)

    @property
    def hyp_average(self) -> float:
        return sum(self.vs_hypotheses.values()) / len(self.vs_hypotheses)

    @property
    def ref_average(self) -> float:
        return sum(self.vs_references.values()) / len(self.vs_references)


def _cer_rate(ref_text: str, hyp_text: str) -> float:
    return cer(ref_text, hyp_text)


def _wer_rate(ref_text: str, hyp_text: str) -> float:
    ref = [t.surface for t in tokenize(ref_text)]
    hyp = [t.surface for t in tokenize(hyp_text)]
    counts = align(ref, hyp)
    if not ref:
        if hyp:
            raise EmptyReferenceError("empty reference tokens")
        return 0.0
    return wer_from_counts(counts)


def iaa_matrix(corpus: Iterable[UtteranceRecord], granularity: str = "cer") -> IAAMatrix:
    """Pairwise annotator agreement on the multiply-annotated records.

    Unclear records are excluded. Each pairwise cell is the mean over
    shared records of the symmetrized rate (both directions averaged).
    The vs-hypotheses column measures each annotator's edit volume with
    the post-edition as reference; the vs-references column measures the
    post-edition against the original reference transcript.
    """
    if granularity not in ("cer", "wer"):
        raise ValueError(f"granularity must be 'cer' or 'wer', got {granularity!r}")
    rate = _cer_rate if granularity == "cer" else _wer_rate
    records = [r for r in corpus if not r.unclear and r.minimal_edits]
    annotators = sorted({a for r in records for a in r.minimal_edits})
    if len(annotators) < 2:
        raise InsufficientAnnotatorsError(
            f"agreement needs at least two annotators, found {len(annotators)}"
        )
    pairwise: dict[tuple[str, str], float] = {}
    pair_counts: dict[tuple[str, str], int] = {}
    for i, first in enumerate(annotators):
        for second in annotators[i + 1:]:
            values = []
            for record in records:
                edits = record.minimal_edits
                if first not in edits or second not in edits:
                    continue
                text_a, text_b = edits[first], edits[second]
                if not text_a or not text_b:
                    continue
                values.append((rate(text_a, text_b) + rate(text_b, text_a)) / 2.0)
            if values:
                pairwise[(first, second)] = sum(values) / len(values)
                pair_counts[(first, second)] = len(values)
    if not pairwise:
        raise InsufficientAnnotatorsError("no record is annotated by two annotators")
    vs_hyp: dict[str, float] = {}
    vs_ref: dict[str, float] = {}
    for annotator in annotators:
        hyp_values = []
        ref_values = []
        for record in records:
            edit = record.minimal_edits.get(annotator)
            if not edit:
                continue
            for system_id in sorted(record.hypotheses):
                hyp_values.append(rate(edit, record.hypotheses[system_id]))
            if record.reference:
                ref_values.append(rate(record.reference, edit))
        if hyp_values:
            vs_hyp[annotator] = sum(hyp_values) / len(hyp_values)
        if ref_values:
            vs_ref[annotator] = sum(ref_values) / len(ref_values)
    return IAAMatrix(
        granularity=granularity,
        annotators=tuple(annotators),
        pairwise=pairwise,
        pair_counts=pair_counts,
        vs_hypotheses=vs_hyp,
        vs_references=vs_ref,
    )


# ---------------------------------------------------------------------------
# Sentence-level correlations.

@dataclass(frozen=True)
class RecordingCorrelation:
    pearson: float | None
    spearman: float | None
    n: int


@dataclass(frozen=True)
class MetricCorrelation:
    metric: str
    config: str
    kind: str
    pearson: float | None
    spearman: float | None
    n: int
    degenerate: bool
    per_recording: Mapping[str, RecordingCorrelation]
    pearson_recording_std: float | None

    @property
    def label(self) -> str:
        return f"{self.metric}[{self.config}]"


@dataclass(frozen=True)
class CorrelationReport:
    entries: tuple[MetricCorrelation, ...]
    n_pairs: int
    excluded_unclear: int
    excluded_no_gold: int


@dataclass(frozen=True)
class _Row:
    record: UtteranceRecord
    system_id: str
    gold: float


def _usable_rows(corpus: Sequence[UtteranceRecord],
                 annotator: str | None) -> tuple[list[_Row], int, int]:
    rows: list[_Row] = []
    excluded_unclear = 0
    excluded_no_gold = 0
    for record in corpus:
        if record.unclear:
            excluded_unclear += 1
            continue
        chosen = choose_minimal_edit(record, annotator)
        if chosen is None or not chosen[1]:
            log.warning("excluding %s: no usable minimal edit", record.utterance_id)
            excluded_no_gold += 1
            continue
        if not record.reference.strip():
            log.warning("excluding %s: empty reference", record.utterance_id)
            excluded_no_gold += 1
            continue
        minimal_edit = chosen[1]
        for system_id in sorted(record.hypotheses):
            rows.append(_Row(record, system_id,
                             gold_cer(record.hypotheses[system_id], minimal_edit)))
    return rows, excluded_unclear, excluded_no_gold


def _correlate(xs: list[float], ys: list[float]) -> tuple[float | None, float | None, bool]:
    try:
        return pearson(xs, ys), spearman(xs, ys), False
    except DegenerateVarianceError:
        return None, None, True


def sentence_correlations(corpus: Sequence[UtteranceRecord],
                          configs: Sequence[MetricConfig],
                          annotator: str | None = None) -> CorrelationReport:
    """Correlate each metric config with GoldCER over all usable pairs.

    Error metrics correlate against GoldCER, accuracy metrics against
    1 - GoldCER. Alongside the pooled correlation, every recording gets
    its own, and the spread of those per-recording Pearson values is
    reported as a population standard deviation.
    """
    rows, excluded_unclear, excluded_no_gold = _usable_rows(corpus, annotator)
    entries: list[MetricCorrelation] = []
    for config in configs:
        xs: list[float] = []
        ys: list[float] = []
        recordings: list[str] = []
        for row in rows:
            try:
                score = config.sentence_fn(row.record, row.system_id)
            except EmptyReferenceError as exc:
                log.warning("%s: dropping %s/%s (%s)", config.label,
                            row.record.utterance_id, row.system_id, exc)
                continue
            xs.append(score)
            ys.append(row.gold if config.kind == "error" else 1.0 - row.gold)
            recordings.append(row.record.recording_id)
        overall_pearson, overall_spearman, degenerate = _correlate(xs, ys)
        by_recording: dict[str, RecordingCorrelation] = {}
        for recording_id in sorted(set(recordings)):
            indexes = [i for i, rec in enumerate(recordings) if rec == recording_id]
            sub_x = [xs[i] for i in indexes]
            sub_y = [ys[i] for i in indexes]
            r, rho, _ = _correlate(sub_x, sub_y)
            by_recording[recording_id] = RecordingCorrelation(r, rho, len(indexes))
        recording_pearsons = [c.pearson for c in by_recording.values()
                              if c.pearson is not None]
        std = float(np.std(recording_pearsons)) if recording_pearsons else None
        entries.append(MetricCorrelation(
            metric=config.metric,
            config=config.config,
            kind=config.kind,
            pearson=overall_pearson,
            spearman=overall_spearman,
            n=len(xs),
            degenerate=degenerate,
            per_recording=by_recording,
            pearson_recording_std=std,
        ))
    return CorrelationReport(
        entries=tuple(entries),
        n_pairs=len(rows),
        excluded_unclear=excluded_unclear,
        excluded_no_gold=excluded_no_gold,
    )


# ---------------------------------------------------------------------------
# System-level scores and rankings.

@dataclass(frozen=True)
class SystemMetricScores:
    metric: str
    config: str
    kind: str
    scores: Mapping[str, float]
    ranks: Mapping[str, int]
    matches_gold: bool

    @property
    def label(self) -> str:
        return f"{self.metric}[{self.config}]"


@dataclass(frozen=True)
class SystemReport:
    systems: tuple[str, ...]
    gold_scores: Mapping[str, float]
    gold_ranks: Mapping[str, int]
    entries: tuple[SystemMetricScores, ...]


def _rank(scores: Mapping[str, float], descending: bool) -> dict[str, int]:
    ordered = sorted(scores, key=lambda s: (-scores[s] if descending else scores[s], s))
    return {system: position + 1 for position, system in enumerate(ordered)}


def _sum_counts(counts: Iterable[AlignmentResult]) -> AlignmentResult:
    hits = subs = dels = ins = 0
    cost = 0.0
    for item in counts:
        hits += item.hits
        subs += item.subs
        dels += item.dels
        ins += item.ins
        cost += item.cost
    return AlignmentResult(ops=(), hits=hits, subs=subs, dels=dels, ins=ins, cost=cost)


def system_scores(corpus: Sequence[UtteranceRecord],
                  configs: Sequence[MetricConfig],
                  annotator: str | None = None) -> SystemReport:
    """Score and rank systems; flag configs whose ranking matches GoldCER.

    Error-rate metrics pool edit counts over the corpus before applying
    their formula; accuracy metrics average sentence scores. GoldCER is
    pooled the same way (summed character edits over summed post-edition
    lengths) and ranks ascending.
    """
    rows, _, _ = _usable_rows(corpus, annotator)
    if not rows:
        raise ValueError("no scoreable (record, system) pairs in the corpus")
    systems = sorted({row.system_id for row in rows})
    gold_num: dict[str, float] = {s: 0.0 for s in systems}
    gold_den: dict[str, float] = {s: 0.0 for s in systems}
    for row in rows:
        chosen = choose_minimal_edit(row.record, annotator)
        assert chosen is not None  # _usable_rows already filtered
        minimal_edit = chosen[1]
        counts = align(list(minimal_edit), list(row.record.hypotheses[row.system_id]))
        gold_num[row.system_id] += counts.subs + counts.dels + counts.ins
        gold_den[row.system_id] += counts.hits + counts.subs + counts.dels
    gold = {s: gold_num[s] / gold_den[s] for s in systems}
    gold_ranks = _rank(gold, descending=False)

    entries: list[SystemMetricScores] = []
    for config in configs:
        scores: dict[str, float] = {}
        for system in systems:
            system_rows = [row for row in rows if row.system_id == system]
            if isinstance(config.pooling, AveragePooling):
                values = []
                for row in system_rows:
                    try:
                        values.append(config.sentence_fn(row.record, row.system_id))
                    except EmptyReferenceError:
                        continue
                if not values:
                    raise ValueError(f"{config.label}: no scoreable rows for {system!r}")
                scores[system] = sum(values) / len(values)
            elif isinstance(config.pooling, RatioPooling):
                numerator = denominator = 0.0
                for row in system_rows:
                    try:
                        num, den = config.pooling.parts(row.record, row.system_id)
                    except EmptyReferenceError:
                        continue
                    numerator += num
                    denominator += den
                if denominator == 0.0:
                    raise ValueError(f"{config.label}: empty denominator for {system!r}")
                scores[system] = numerator / denominator
            else:
                collected = []
                for row in system_rows:
                    try:
                        collected.append(config.pooling.counts(row.record, row.system_id))
                    except EmptyReferenceError:
                        continue
                if not collected:
                    raise ValueError(f"{config.label}: no scoreable rows for {system!r}")
                scores[system] = config.pooling.formula(_sum_counts(collected))
        ranks = _rank(scores, descending=(config.kind == "accuracy"))
        entries.append(SystemMetricScores(
            metric=config.metric,
            config=config.config,
            kind=config.kind,
            scores=scores,
            ranks=ranks,
            matches_gold=(ranks == gold_ranks),
        ))
    return SystemReport(
        systems=tuple(systems),
        gold_scores=gold,
        gold_ranks=gold_ranks,
        entries=tuple(entries),
    )


# ---------------------------------------------------------------------------
# Recording-level CMI for report breakdowns.

def recording_cmi_values(corpus: Sequence[UtteranceRecord]) -> dict[str, float]:
    """Mean reference-transcript CMI per recording; recordings whose
    references carry no language tokens are omitted."""
    grouped: dict[str, list[LanguageTaggedUtterance]] = {}
    for record in corpus:
        tagged = tag_languages(tokenize(record.reference))
        grouped.setdefault(record.recording_id, []).append(tagged)
    values: dict[str, float] = {}
    for recording_id in sorted(grouped):
        tagged_utterances = [u for u in grouped[recording_id] if u.n_language_tokens > 0]
        if not tagged_utterances:
            log.warning("recording %s has no language tokens; skipping CMI", recording_id)
            continue
        values[recording_id] = sum(utterance_cmi(u) for u in tagged_utterances) / len(
            tagged_utterances
        )
    return values


def utterance_cmi_values(corpus: Sequence[UtteranceRecord]) -> list[tuple[str, float | None]]:
    """Reference-transcript CMI per utterance, None where undefined."""
    out: list[tuple[str, float | None]] = []
    for record in corpus:
        tagged = tag_languages(tokenize(record.reference))
        try:
            out.append((record.utterance_id, utterance_cmi(tagged)))
        except NoLanguageTokensError:
            out.append((record.utterance_id, None))
    return out


# ---------------------------------------------------------------------------
# Report rendering. All writers are deterministic for fixed inputs.

def _fmt(value: float | None, digits: int = 4) -> str:
    return "" if value is None else f"{value:.{digits}f}"


def correlation_csv(report: CorrelationReport) -> str:
    lines = ["metric,config,pearson,spearman,n"]
    for entry in report.entries:
        lines.append(
            f"{entry.metric},{entry.config},{_fmt(entry.pearson, 6)},"
            f"{_fmt(entry.spearman, 6)},{entry.n}"
        )
    return "\n".join(lines) + "\n"


def per_recording_csv(report: CorrelationReport,
                      cmi_values: Mapping[str, float]) -> str:
    recordings = sorted({rec for entry in report.entries for rec in entry.per_recording})
    header = ["recording_id", "cmi"] + [entry.label for entry in report.entries]
    lines = [",".join(header)]
    for recording_id in recordings:
        cells = [recording_id, _fmt(cmi_values.get(recording_id), 2)]
        for entry in report.entries:
            recording = entry.per_recording.get(recording_id)
            cells.append(_fmt(recording.pearson if recording else None, 6))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def correlation_markdown(report: CorrelationReport) -> str:
    lines = [
        "## Sentence-level correlation with GoldCER",
        "",
        f"Pairs scored: {report.n_pairs} "
        f"(excluded: {report.excluded_unclear} unclear, "
        f"{report.excluded_no_gold} without usable ground truth)",
        "",
        "| metric | config | kind | Pearson | Spearman | n | recording std |",
        "|---|---|---|---|---|---|---|",
    ]
    for entry in report.entries:
        pearson_cell = "degenerate" if entry.degenerate else _fmt(entry.pearson)
        spearman_cell = "degenerate" if entry.degenerate else _fmt(entry.spearman)
        lines.append(
            f"| {entry.metric} | {entry.config} | {entry.kind} | {pearson_cell} "
            f"| {spearman_cell} | {entry.n} | {_fmt(entry.pearson_recording_std)} |"
        )
    return "\n".join(lines) + "\n"


def system_markdown(report: SystemReport) -> str:
    header = " | ".join(report.systems)
    lines = [
        "## System scores and rankings",
        "",
        "GoldCER (pooled): "
        + ", ".join(f"{s}={report.gold_scores[s]:.4f} (rank {report.gold_ranks[s]})"
                    for s in report.systems),
        "",
        f"| metric | config | {header} | matches GoldCER ranking |",
        "|---" * (len(report.systems) + 3) + "|",
    ]
    for entry in report.entries:
        cells = " | ".join(
            f"{entry.scores[s]:.4f} ({entry.ranks[s]})" for s in report.systems
        )
        flag = "yes" if entry.matches_gold else "no"
        lines.append(f"| {entry.metric} | {entry.config} | {cells} | {flag} |")
    return "\n".join(lines) + "\n"


def system_csv(report: SystemReport) -> str:
    lines = ["metric,config," + ",".join(report.systems) + ",matches_gold"]
    for entry in report.entries:
        cells = ",".join(f"{entry.scores[s]:.6f}" for s in report.systems)
        lines.append(f"{entry.metric},{entry.config},{cells},"
                     f"{'yes' if entry.matches_gold else 'no'}")
    return "\n".join(lines) + "\n"


def _fmt_pct(value: float | None) -> str:
    return "" if value is None else f"{100 * value:.1f}"


def iaa_markdown(matrix: IAAMatrix) -> str:
    # Upper-triangular pair cells; the Avg row carries the pair average
    # in the last pair column next to the column averages.
    unit = matrix.granularity.upper()
    columns = list(matrix.annotators[1:])
    lines = [
        f"## Inter-annotator agreement ({unit}, %)",
        "",
        "| | " + " | ".join(columns) + " | vs hyp | vs ref |",
        "|---" * (len(columns) + 3) + "|",
    ]
    for first in matrix.annotators:
        cells = [
            _fmt_pct(matrix.pairwise.get((first, second))) if first < second else ""
            for second in columns
        ]
        lines.append(
            f"| {first} | " + " | ".join(cells)
            + f" | {_fmt_pct(matrix.vs_hypotheses.get(first))}"
            + f" | {_fmt_pct(matrix.vs_references.get(first))} |"
        )
    avg_cells = [""] * (len(columns) - 1) + [_fmt_pct(matrix.pair_average)]
    lines.append(
        "| **Avg** | " + " | ".join(avg_cells)
        + f" | {_fmt_pct(matrix.hyp_average)} | {_fmt_pct(matrix.ref_average)} |"
    )
    return "\n".join(lines) + "\n"


def iaa_csv(matrix: IAAMatrix) -> str:
    lines = ["first,second,rate,n"]
    for (first, second), value in sorted(matrix.pairwise.items()):
        lines.append(f"{first},{second},{value:.6f},{matrix.pair_counts[(first, second)]}")
    for annotator in matrix.annotators:
        if annotator in matrix.vs_hypotheses:
            lines.append(f"{annotator},<hypotheses>,{matrix.vs_hypotheses[annotator]:.6f},")
        if annotator in matrix.vs_references:
            lines.append(f"{annotator},<references>,{matrix.vs_references[annotator]:.6f},")
    lines.append(f"<average>,<pairs>,{matrix.pair_average:.6f},")
    lines.append(f"<average>,<hypotheses>,{matrix.hyp_average:.6f},")
    lines.append(f"<average>,<references>,{matrix.ref_average:.6f},")
    return "\n".join(lines) + "\n"
