"""Command line front end.

Subcommands cover pair scoring, ground-truth benchmarking, agreement
matrices, code-mixing statistics, and the individual text transforms.
Option values resolve in the order: explicit flag, then ``--config``
file entry (``key = value`` lines, ``#`` comments), then the built-in
default. All file outputs are deterministic: the same invocation on the
same inputs produces byte-identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import benchmark as bench
from .align import align
from .corpus import load_corpus
from .codeswitch import tag_languages
from .data import ENV_DATA_DIR
from .errors import EmptyReferenceError, ToolkitError
from .error_rates import Pipeline, score_with_pipeline
from .phonology import (
    G2PRuleSet,
    PSDWeights,
    default_feature_table,
    default_rule_sets,
    g2p,
    load_feature_table,
    load_g2p_rules,
    psd_alignment,
)
from .semantic import EmbeddingStore, bleu, chrf
from .textnorm import NormalizationProfile, Script, normalize, parse_profile, tokenize
from .translit import Direction, buckwalter_scheme, load_scheme, transliterate

REGISTERED_METRICS = ("cer", "wer", "mer", "wil", "per", "psd", "bleu", "chrf")
_ERROR_RATE_METRICS = {"cer", "wer", "mer", "wil"}

_CONFIG_KEYS = {
    "metric", "norm", "translit-to", "scheme", "features", "arabic-rules",
    "english-rules", "on-unknown", "psd-wsub", "psd-weights", "channels",
    "annotator", "granularity", "system", "out", "out-dir", "embeddings",
    "lexicon", "direction",
}


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    problems: list[str] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                problems.append(f"{path}:{lineno}: expected 'key = value'")
                continue
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                problems.append(f"{path}:{lineno}: unknown config key {key!r}")
                continue
            values[key] = value.strip()
    if problems:
        raise _ValidationFailure(problems)
    return values


class _ValidationFailure(Exception):
    def __init__(self, problems: list[str]) -> None:
        super().__init__("\n".join(problems))
        self.problems = problems


def _resolve(args: argparse.Namespace, config: dict[str, str], key: str,
             default: str | None = None) -> str | None:
    flag_value = getattr(args, key.replace("-", "_"), None)
    if flag_value is not None:
        return flag_value
    if key in config:
        return config[key]
    return default


def _require_file(path: str | None, label: str, problems: list[str]) -> None:
    # exists() rather than is_file() so pipes and process substitution work
    if path is not None and (not Path(path).exists() or Path(path).is_dir()):
        problems.append(f"{label}: no such file: {path}")


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return [line.rstrip("\n") for line in handle]


def _input_lines(args: argparse.Namespace, problems: list[str]) -> list[str]:
    if args.text is not None:
        return [args.text]
    if args.input is not None:
        if not Path(args.input).exists():
            problems.append(f"--input: no such file: {args.input}")
            return []
        return _read_lines(args.input)
    problems.append("one of --text or --input is required")
    return []


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _build_pipeline(norm: str | None, translit_to: str | None, scheme_path: str | None,
                    problems: list[str]) -> Pipeline:
    profile = NormalizationProfile()
    if norm is not None:
        try:
            profile = parse_profile(norm)
        except ValueError as exc:
            problems.append(f"--norm: {exc}")
    scheme = None
    if translit_to is not None:
        if translit_to not in ("arabic", "roman"):
            problems.append(f"--translit-to must be 'arabic' or 'roman', got {translit_to!r}")
        else:
            direction = (Direction.TO_ARABIC if translit_to == "arabic"
                         else Direction.TO_ROMAN)
            if scheme_path is not None:
                _require_file(scheme_path, "--scheme", problems)
                if Path(scheme_path).exists():
                    scheme = load_scheme(scheme_path, direction)
            else:
                scheme = buckwalter_scheme(direction)
    elif scheme_path is not None:
        problems.append("--scheme requires --translit-to")
    return Pipeline(profile=profile, scheme=scheme)


def _load_tables(args: argparse.Namespace, config: dict[str, str],
                 problems: list[str]):
    features_path = _resolve(args, config, "features")
    arabic_path = _resolve(args, config, "arabic-rules")
    english_path = _resolve(args, config, "english-rules")
    _require_file(features_path, "--features", problems)
    _require_file(arabic_path, "--arabic-rules", problems)
    _require_file(english_path, "--english-rules", problems)
    if problems:
        return None, None
    table = (load_feature_table(features_path) if features_path
             else default_feature_table())
    rule_sets = default_rule_sets()
    if arabic_path:
        rule_sets[Script.ARABIC] = load_g2p_rules(arabic_path, language="ara-Arab")
    if english_path:
        rule_sets[Script.LATIN] = load_g2p_rules(english_path, language="eng-Latn")
    return table, rule_sets


# ---------------------------------------------------------------------------
# score

def _cmd_score(args: argparse.Namespace, config: dict[str, str]) -> int:
    problems: list[str] = []
    metric_spec = _resolve(args, config, "metric", "cer,wer,mer,wil")
    metrics = [m.strip() for m in metric_spec.split(",") if m.strip()]
    for metric in metrics:
        if metric not in REGISTERED_METRICS:
            problems.append(
                f"--metric: unknown metric {metric!r} "
                f"(registered: {', '.join(REGISTERED_METRICS)})"
            )
    if not metrics:
        problems.append("--metric: at least one metric is required")
    pipeline = _build_pipeline(
        _resolve(args, config, "norm"),
        _resolve(args, config, "translit-to"),
        _resolve(args, config, "scheme"),
        problems,
    )
    pairs: list[tuple[str, str, str]] = []
    if args.corpus is not None:
        _require_file(args.corpus, "--corpus", problems)
        system = _resolve(args, config, "system")
        if not problems:
            records = load_corpus(args.corpus)
            systems = sorted({s for r in records for s in r.hypotheses})
            if system is None:
                problems.append(f"--system is required with --corpus "
                                f"(available: {', '.join(systems)})")
            elif system not in systems:
                problems.append(f"--system: unknown system {system!r} "
                                f"(available: {', '.join(systems)})")
            else:
                for record in sorted(records, key=lambda r: r.utterance_id):
                    if system in record.hypotheses:
                        pairs.append((record.utterance_id, record.reference,
                                      record.hypotheses[system]))
    elif args.ref is not None and args.hyp is not None:
        _require_file(args.ref, "--ref", problems)
        _require_file(args.hyp, "--hyp", problems)
        if not problems:
            ref_lines = _read_lines(args.ref)
            hyp_lines = _read_lines(args.hyp)
            if len(ref_lines) != len(hyp_lines):
                problems.append(
                    f"--ref has {len(ref_lines)} lines but --hyp has {len(hyp_lines)}"
                )
            else:
                pairs = [(str(i + 1), r, h)
                         for i, (r, h) in enumerate(zip(ref_lines, hyp_lines))]
    else:
        problems.append("provide --ref and --hyp, or --corpus with --system")
    needs_phones = bool({"per", "psd"} & set(metrics))
    table = rule_sets = None
    if needs_phones:
        table, rule_sets = _load_tables(args, config, problems)
    weights = PSDWeights()
    wsub = _resolve(args, config, "psd-wsub")
    if wsub is not None:
        try:
            weights = PSDWeights(w_sub=float(wsub))
        except ValueError as exc:
            problems.append(f"--psd-wsub: {exc}")
    if problems:
        raise _ValidationFailure(problems)

    on_unknown = _resolve(args, config, "on-unknown", "skip")
    lines = ["id," + ",".join(metrics)]
    sums: dict[str, list[float]] = {m: [0.0, 0.0] for m in metrics}
    mt_scores: dict[str, list[float]] = {m: [] for m in metrics}
    for pair_id, ref_text, hyp_text in pairs:
        cells = [pair_id]
        rates = None
        if _ERROR_RATE_METRICS & set(metrics):
            rates = score_with_pipeline(ref_text, hyp_text, pipeline)
        phones = None
        if needs_phones:
            phones = (g2p(pipeline.apply(ref_text), rule_sets, on_unknown),
                      g2p(pipeline.apply(hyp_text), rule_sets, on_unknown))
        for metric in metrics:
            if metric in _ERROR_RATE_METRICS:
                value = getattr(rates, metric)
                counts = (rates.char_alignment if metric == "cer"
                          else rates.word_alignment)
                if metric in ("cer", "wer"):
                    sums[metric][0] += counts.subs + counts.dels + counts.ins
                    sums[metric][1] += counts.hits + counts.subs + counts.dels
                elif metric == "mer":
                    sums[metric][0] += counts.subs + counts.dels + counts.ins
                    sums[metric][1] += (counts.hits + counts.subs + counts.dels
                                        + counts.ins)
                # wil has no pooled closed form; its OVERALL cell stays empty
            elif metric == "per":
                ref_ph, hyp_ph = phones
                if not ref_ph:
                    raise EmptyReferenceError(
                        f"id {pair_id}: reference yields no phones"
                    )
                counts = align(ref_ph, hyp_ph)
                value = (counts.subs + counts.dels + counts.ins) / len(ref_ph)
                sums[metric][0] += counts.subs + counts.dels + counts.ins
                sums[metric][1] += len(ref_ph)
            elif metric == "psd":
                ref_ph, hyp_ph = phones
                if not ref_ph:
                    raise EmptyReferenceError(
                        f"id {pair_id}: reference yields no phones"
                    )
                result = psd_alignment(ref_ph, hyp_ph, weights, table)
                value = result.cost / len(ref_ph)
                sums[metric][0] += result.cost
                sums[metric][1] += len(ref_ph)
            elif metric == "bleu":
                ref_tokens = [t.surface for t in tokenize(pipeline.apply(ref_text))]
                hyp_tokens = [t.surface for t in tokenize(pipeline.apply(hyp_text))]
                value = bleu(ref_tokens, hyp_tokens)
                mt_scores[metric].append(value)
            else:  # chrf
                value = chrf(pipeline.apply(ref_text), pipeline.apply(hyp_text))
                mt_scores[metric].append(value)
            cells.append(f"{value:.6f}")
        lines.append(",".join(cells))
    overall = ["OVERALL"]
    for metric in metrics:
        if metric in ("cer", "wer", "mer", "per", "psd"):
            num, den = sums[metric]
            overall.append(f"{num / den:.6f}" if den else "")
        elif metric == "wil":
            overall.append("")  # no pooled closed form is emitted for WIL
        else:
            values = mt_scores[metric]
            overall.append(f"{sum(values) / len(values):.6f}" if values else "")
    lines.append(",".join(overall))
    _write_output("\n".join(lines) + "\n", _resolve(args, config, "out"))
    return 0


# ---------------------------------------------------------------------------
# benchmark

def _cmd_benchmark(args: argparse.Namespace, config: dict[str, str]) -> int:
    problems: list[str] = []
    _require_file(args.corpus, "--corpus", problems)
    out_dir = _resolve(args, config, "out-dir", "cs-eval-report")
    norm_spec = _resolve(args, config, "norm", "alif-ya,lowercase")
    try:
        profile = parse_profile(norm_spec)
    except ValueError as exc:
        problems.append(f"--norm: {exc}")
        profile = NormalizationProfile()
    scheme_path = _resolve(args, config, "scheme")
    _require_file(scheme_path, "--scheme", problems)
    embeddings_path = _resolve(args, config, "embeddings")
    _require_file(embeddings_path, "--embeddings", problems)
    weights_spec = _resolve(args, config, "psd-weights", "1,2,4,8")
    try:
        psd_weights = [float(w) for w in weights_spec.split(",") if w.strip()]
    except ValueError:
        problems.append(f"--psd-weights: expected comma-separated numbers, "
                        f"got {weights_spec!r}")
        psd_weights = []
    table, rule_sets = _load_tables(args, config, problems)
    if problems:
        raise _ValidationFailure(problems)

    corpus = load_corpus(args.corpus)
    annotator = _resolve(args, config, "annotator")
    scheme_ar = (load_scheme(scheme_path, Direction.TO_ARABIC) if scheme_path
                 else buckwalter_scheme(Direction.TO_ARABIC))
    scheme_en = buckwalter_scheme(Direction.TO_ROMAN)
    pipelines = {
        "base": Pipeline(),
        "norm": Pipeline(profile=profile),
        "translit_ar": Pipeline(scheme=scheme_ar),
        "translit_ar+norm": Pipeline(profile=profile, scheme=scheme_ar),
        "translit_en": Pipeline(scheme=scheme_en),
        "translit_en+norm": Pipeline(profile=profile, scheme=scheme_en),
    }
    configs = bench.error_rate_configs(pipelines)
    configs.extend(bench.phonology_configs(table, rule_sets, psd_weights))
    configs.extend(bench.mt_metric_configs(profile))
    if embeddings_path:
        store = EmbeddingStore.load(embeddings_path)
        channels_spec = _resolve(args, config, "channels")
        channels = ([c.strip() for c in channels_spec.split(",") if c.strip()]
                    if channels_spec else None)
        configs.extend(bench.semantic_configs(store, channels))

    correlations = bench.sentence_correlations(corpus, configs, annotator)
    systems = bench.system_scores(corpus, configs, annotator)
    cmi_values = bench.recording_cmi_values(corpus)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "correlations.csv").write_text(bench.correlation_csv(correlations),
                                          encoding="utf-8")
    (out / "per_recording.csv").write_text(
        bench.per_recording_csv(correlations, cmi_values), encoding="utf-8"
    )
    (out / "systems.csv").write_text(bench.system_csv(systems), encoding="utf-8")
    (out / "report.md").write_text(
        bench.correlation_markdown(correlations) + "\n" + bench.system_markdown(systems),
        encoding="utf-8",
    )
    sys.stdout.write(f"wrote correlations.csv, per_recording.csv, systems.csv, "
                     f"report.md to {out}\n")
    return 0


# ---------------------------------------------------------------------------
# iaa

def _cmd_iaa(args: argparse.Namespace, config: dict[str, str]) -> int:
    problems: list[str] = []
    _require_file(args.corpus, "--corpus", problems)
    granularity = _resolve(args, config, "granularity", "cer")
    if granularity not in ("cer", "wer"):
        problems.append(f"--granularity must be 'cer' or 'wer', got {granularity!r}")
    if problems:
        raise _ValidationFailure(problems)
    matrix = bench.iaa_matrix(load_corpus(args.corpus), granularity)
    sys.stdout.write(bench.iaa_markdown(matrix))
    out = _resolve(args, config, "out")
    if out is not None:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(bench.iaa_csv(matrix))
    return 0


# ---------------------------------------------------------------------------
# cmi

def _cmd_cmi(args: argparse.Namespace, config: dict[str, str]) -> int:
    problems: list[str] = []
    _require_file(args.corpus, "--corpus", problems)
    lexicon_path = _resolve(args, config, "lexicon")
    _require_file(lexicon_path, "--lexicon", problems)
    if problems:
        raise _ValidationFailure(problems)
    corpus = load_corpus(args.corpus)
    lexicon: dict[str, str] = {}
    if lexicon_path:
        for lineno, line in enumerate(_read_lines(lexicon_path), start=1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise _ValidationFailure(
                    [f"--lexicon {lexicon_path}:{lineno}: expected 'word<TAB>tag'"]
                )
            lexicon[parts[0]] = parts[1]
    lines = ["level,id,cmi"]
    per_recording: dict[str, list[float]] = {}
    for record in sorted(corpus, key=lambda r: r.utterance_id):
        tagged = tag_languages(tokenize(record.reference), lexicon or None)
        if tagged.n_language_tokens == 0:
            lines.append(f"utterance,{record.utterance_id},")
            continue
        from .codeswitch import cmi as _cmi
        value = _cmi(tagged)
        lines.append(f"utterance,{record.utterance_id},{value:.2f}")
        per_recording.setdefault(record.recording_id, []).append(value)
    for recording_id in sorted(per_recording):
        values = per_recording[recording_id]
        lines.append(f"recording,{recording_id},{sum(values) / len(values):.2f}")
    _write_output("\n".join(lines) + "\n", _resolve(args, config, "out"))
    return 0


# ---------------------------------------------------------------------------
# g2p / translit / normalize

def _cmd_g2p(args: argparse.Namespace, config: dict[str, str]) -> int:
    problems: list[str] = []
    lines = _input_lines(args, problems)
    table, rule_sets = _load_tables(args, config, problems)
    on_unknown = _resolve(args, config, "on-unknown", "error")
    if on_unknown not in ("error", "skip"):
        problems.append(f"--on-unknown must be 'error' or 'skip', got {on_unknown!r}")
    if problems:
        raise _ValidationFailure(problems)
    out_lines = [" ".join(g2p(line, rule_sets, on_unknown)) for line in lines]
    _write_output("\n".join(out_lines) + "\n", _resolve(args, config, "out"))
    return 0


def _cmd_translit(args: argparse.Namespace, config: dict[str, str]) -> int:
    problems: list[str] = []
    lines = _input_lines(args, problems)
    direction_name = _resolve(args, config, "direction", "to-arabic")
    direction = None
    if direction_name not in ("to-arabic", "to-roman"):
        problems.append(f"--direction must be 'to-arabic' or 'to-roman', "
                        f"got {direction_name!r}")
    else:
        direction = Direction(direction_name)
    scheme_path = _resolve(args, config, "scheme")
    _require_file(scheme_path, "--scheme", problems)
    if problems:
        raise _ValidationFailure(problems)
    scheme = (load_scheme(scheme_path, direction) if scheme_path
              else buckwalter_scheme(direction))
    out_lines = [transliterate(line, scheme) for line in lines]
    _write_output("\n".join(out_lines) + "\n", _resolve(args, config, "out"))
    return 0


def _cmd_normalize(args: argparse.Namespace, config: dict[str, str]) -> int:
    problems: list[str] = []
    lines = _input_lines(args, problems)
    norm_spec = _resolve(args, config, "norm", "alif-ya")
    try:
        profile = parse_profile(norm_spec)
    except ValueError as exc:
        problems.append(f"--norm: {exc}")
        profile = NormalizationProfile()
    if problems:
        raise _ValidationFailure(problems)
    out_lines = [normalize(line, profile) for line in lines]
    _write_output("\n".join(out_lines) + "\n", _resolve(args, config, "out"))
    return 0


# ---------------------------------------------------------------------------
# Parser assembly.

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cs-eval",
        description="Evaluation toolkit for code-switched ASR output.",
        epilog=(
            "registered metrics: cer, wer, mer, wil, per, psd, bleu, chrf "
            "(plus cosine channels via 'benchmark --embeddings'). "
            "pipeline flags: --norm alif-ya,lowercase[,extended][,strip-punct]; "
            "--translit-to arabic|roman with optional --scheme FILE. "
            f"Default data tables can be overridden via ${ENV_DATA_DIR}."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key = value defaults file")
        p.add_argument("--out", help="output file (default: stdout)")

    score = sub.add_parser("score", help="score hypothesis against reference pairs")
    score.add_argument("--ref", help="reference text file, one utterance per line")
    score.add_argument("--hyp", help="hypothesis text file, parallel to --ref")
    score.add_argument("--corpus", help="JSON-lines corpus instead of --ref/--hyp")
    score.add_argument("--system", help="system id to score (with --corpus)")
    score.add_argument("--metric",
                       help=f"comma list from: {', '.join(REGISTERED_METRICS)} "
                            "(default cer,wer,mer,wil)")
    score.add_argument("--norm", help="normalization flags, e.g. alif-ya,lowercase")
    score.add_argument("--translit-to", help="project both sides: arabic or roman")
    score.add_argument("--scheme", help="transliteration scheme file")
    score.add_argument("--features", help="phone feature table CSV")
    score.add_argument("--arabic-rules", help="Arabic G2P rule table")
    score.add_argument("--english-rules", help="English G2P rule table")
    score.add_argument("--on-unknown", help="G2P unknown handling: error or skip")
    score.add_argument("--psd-wsub", help="substitution weight for psd (default 1)")
    add_common(score)
    score.set_defaults(handler=_cmd_score)

    run = sub.add_parser("benchmark",
                         help="correlate every metric config with GoldCER")
    run.add_argument("--corpus", required=True, help="JSON-lines corpus")
    run.add_argument("--out-dir", help="report directory (default cs-eval-report)")
    run.add_argument("--norm", help="profile for the normalized configs "
                                    "(default alif-ya,lowercase)")
    run.add_argument("--scheme", help="scheme file for the to-Arabic configs")
    run.add_argument("--embeddings", help="embedding store (enables cosine configs)")
    run.add_argument("--channels", help="comma list of channels (default: all in store)")
    run.add_argument("--psd-weights", help="substitution weights (default 1,2,4,8)")
    run.add_argument("--annotator", help="annotator whose edits define GoldCER")
    run.add_argument("--features", help="phone feature table CSV")
    run.add_argument("--arabic-rules", help="Arabic G2P rule table")
    run.add_argument("--english-rules", help="English G2P rule table")
    run.add_argument("--config", help="key = value defaults file")
    run.set_defaults(handler=_cmd_benchmark)

    iaa = sub.add_parser("iaa", help="inter-annotator agreement matrix")
    iaa.add_argument("--corpus", required=True, help="JSON-lines corpus")
    iaa.add_argument("--granularity", help="cer or wer (default cer)")
    add_common(iaa)
    iaa.set_defaults(handler=_cmd_iaa)

    cmi = sub.add_parser("cmi", help="code-mixing index per utterance and recording")
    cmi.add_argument("--corpus", required=True, help="JSON-lines corpus")
    cmi.add_argument("--lexicon", help="word<TAB>tag language override table")
    add_common(cmi)
    cmi.set_defaults(handler=_cmd_cmi)

    g2p_cmd = sub.add_parser("g2p", help="text to phone sequences")
    g2p_cmd.add_argument("--text", help="inline input")
    g2p_cmd.add_argument("--input", help="input file, one utterance per line")
    g2p_cmd.add_argument("--arabic-rules", help="Arabic G2P rule table")
    g2p_cmd.add_argument("--english-rules", help="English G2P rule table")
    g2p_cmd.add_argument("--features", help="phone feature table CSV")
    g2p_cmd.add_argument("--on-unknown", help="error (default) or skip")
    add_common(g2p_cmd)
    g2p_cmd.set_defaults(handler=_cmd_g2p)

    translit = sub.add_parser("translit", help="project text into one script")
    translit.add_argument("--text", help="inline input")
    translit.add_argument("--input", help="input file, one utterance per line")
    translit.add_argument("--direction", help="to-arabic (default) or to-roman")
    translit.add_argument("--scheme", help="scheme file (default: Buckwalter)")
    add_common(translit)
    translit.set_defaults(handler=_cmd_translit)

    norm = sub.add_parser("normalize", help="apply a normalization profile")
    norm.add_argument("--text", help="inline input")
    norm.add_argument("--input", help="input file, one utterance per line")
    norm.add_argument("--norm", help="profile flags (default alif-ya)")
    add_common(norm)
    norm.set_defaults(handler=_cmd_normalize)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config) if getattr(args, "config", None) else {}
        handler: Callable[[argparse.Namespace, dict[str, str]], int] = args.handler
        return handler(args, config)
    except _ValidationFailure as failure:
        for problem in failure.problems:
            print(f"error: {problem}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
