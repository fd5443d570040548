import pytest

from cs_eval.cli import REGISTERED_METRICS, main
from cs_eval.codeswitch import cmi, tag_languages
from cs_eval.corpus import load_corpus
from cs_eval.textnorm import tokenize


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def pair_files(tmp_path):
    ref = write(tmp_path / "ref.txt", "ab cd\n")
    hyp = write(tmp_path / "hyp.txt", "ab ce\n")
    return ref, hyp


# ---------------------------------------------------------------------------
# score

def test_score_pair_files(pair_files, capsys):
    ref, hyp = pair_files
    assert main(["score", "--ref", ref, "--hyp", hyp, "--metric", "cer,wer"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "id,cer,wer"
    assert lines[1] == "1,0.200000,0.500000"
    assert lines[2] == "OVERALL,0.200000,0.500000"


def test_score_identical_pair_is_all_zero(tmp_path, capsys):
    ref = write(tmp_path / "r.txt", "مرحبا hello\n")
    hyp = write(tmp_path / "h.txt", "مرحبا hello\n")
    assert main(["score", "--ref", ref, "--hyp", hyp]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "id,cer,wer,mer,wil"
    assert lines[1] == "1,0.000000,0.000000,0.000000,0.000000"
    assert lines[2].startswith("OVERALL,0.000000,0.000000,0.000000")


def test_score_wil_overall_cell_is_blank(pair_files, capsys):
    ref, hyp = pair_files
    assert main(["score", "--ref", ref, "--hyp", hyp, "--metric", "wil"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[2] == "OVERALL,"


def test_score_phone_metrics(tmp_path, capsys):
    ref = write(tmp_path / "r.txt", "cat\n")
    hyp = write(tmp_path / "h.txt", "cad\n")
    assert main(["score", "--ref", ref, "--hyp", hyp,
                 "--metric", "per,psd", "--psd-wsub", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "id,per,psd"
    assert lines[1] == "1,0.333333,0.033333"


def test_score_pipeline_collapses_transliterated_pair(tmp_path, capsys):
    ref = write(tmp_path / "r.txt", "كتاب\n")
    hyp = write(tmp_path / "h.txt", "ktAb\n")
    assert main(["score", "--ref", ref, "--hyp", hyp,
                 "--metric", "cer", "--translit-to", "roman"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "1,0.000000"


def test_score_corpus_rows_sorted_by_utterance(toy_corpus_path, capsys):
    assert main(["score", "--corpus", str(toy_corpus_path),
                 "--system", "sysA", "--metric", "cer"]) == 0
    lines = capsys.readouterr().out.splitlines()
    ids = [line.split(",")[0] for line in lines[1:-1]]
    assert ids == sorted(ids)
    assert len(ids) == 12
    assert lines[-1].startswith("OVERALL,")


def test_score_writes_output_file(pair_files, tmp_path, capsys):
    ref, hyp = pair_files
    out = tmp_path / "scores.csv"
    assert main(["score", "--ref", ref, "--hyp", hyp, "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text(encoding="utf-8").startswith("id,cer,wer,mer,wil\n")


def test_score_is_deterministic(toy_corpus_path, tmp_path):
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert main(["score", "--corpus", str(toy_corpus_path), "--system", "sysB",
                     "--metric", "cer,wer,bleu,chrf", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_score_unknown_metric_exits_two(pair_files, capsys):
    ref, hyp = pair_files
    assert main(["score", "--ref", ref, "--hyp", hyp, "--metric", "cer,rouge"]) == 2
    err = capsys.readouterr().err
    assert "unknown metric 'rouge'" in err
    for metric in REGISTERED_METRICS:
        assert metric in err


def test_score_without_inputs_exits_two(capsys):
    assert main(["score"]) == 2
    assert "provide --ref and --hyp" in capsys.readouterr().err


def test_score_line_count_mismatch_exits_two(tmp_path, capsys):
    ref = write(tmp_path / "r.txt", "a\nb\n")
    hyp = write(tmp_path / "h.txt", "a\n")
    assert main(["score", "--ref", ref, "--hyp", hyp]) == 2
    assert "2 lines but --hyp has 1" in capsys.readouterr().err


def test_score_corpus_requires_known_system(toy_corpus_path, capsys):
    assert main(["score", "--corpus", str(toy_corpus_path),
                 "--system", "sysZ"]) == 2
    err = capsys.readouterr().err
    assert "unknown system 'sysZ'" in err
    assert "sysA" in err


def test_score_missing_file_exits_two(tmp_path, capsys):
    hyp = write(tmp_path / "h.txt", "a\n")
    assert main(["score", "--ref", str(tmp_path / "nope.txt"), "--hyp", hyp]) == 2
    assert "no such file" in capsys.readouterr().err


def test_score_empty_reference_line_exits_one(tmp_path, capsys):
    ref = write(tmp_path / "r.txt", "\n")
    hyp = write(tmp_path / "h.txt", "x\n")
    assert main(["score", "--ref", ref, "--hyp", hyp, "--metric", "cer"]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_score_collects_multiple_problems(tmp_path, capsys):
    assert main(["score", "--ref", str(tmp_path / "nope.txt"),
                 "--hyp", str(tmp_path / "also-nope.txt"),
                 "--metric", "rouge", "--scheme", "x.tsv"]) == 2
    err = capsys.readouterr().err
    assert "unknown metric" in err
    assert "--ref: no such file" in err
    assert "--scheme requires --translit-to" in err


# ---------------------------------------------------------------------------
# config files

def test_config_file_supplies_defaults(pair_files, tmp_path, capsys):
    ref, hyp = pair_files
    cfg = write(tmp_path / "cfg", "# defaults\nmetric = cer\n")
    assert main(["score", "--ref", ref, "--hyp", hyp, "--config", cfg]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "id,cer"


def test_flag_overrides_config_file(pair_files, tmp_path, capsys):
    ref, hyp = pair_files
    cfg = write(tmp_path / "cfg", "metric = cer\n")
    assert main(["score", "--ref", ref, "--hyp", hyp,
                 "--config", cfg, "--metric", "wer"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "id,wer"


def test_config_unknown_key_exits_two(pair_files, tmp_path, capsys):
    ref, hyp = pair_files
    cfg = write(tmp_path / "cfg", "bogus = 1\n")
    assert main(["score", "--ref", ref, "--hyp", hyp, "--config", cfg]) == 2
    assert "unknown config key 'bogus'" in capsys.readouterr().err


def test_config_malformed_line_exits_two(pair_files, tmp_path, capsys):
    ref, hyp = pair_files
    cfg = write(tmp_path / "cfg", "just words\n")
    assert main(["score", "--ref", ref, "--hyp", hyp, "--config", cfg]) == 2
    assert "expected 'key = value'" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# benchmark

def test_benchmark_writes_reports(toy_corpus_path, toy_embeddings_path, tmp_path, capsys):
    out_dir = tmp_path / "report"
    assert main(["benchmark", "--corpus", str(toy_corpus_path),
                 "--embeddings", str(toy_embeddings_path),
                 "--out-dir", str(out_dir)]) == 0
    for name in ("correlations.csv", "per_recording.csv", "systems.csv", "report.md"):
        assert (out_dir / name).exists(), name
    correlations = (out_dir / "correlations.csv").read_text(encoding="utf-8")
    assert correlations.startswith("metric,config,pearson,spearman,n\n")
    assert "cer,base," in correlations
    assert "cosine,avg," in correlations
    report = (out_dir / "report.md").read_text(encoding="utf-8")
    assert "## Sentence-level correlation with GoldCER" in report
    assert "## System scores and rankings" in report
    assert "wrote" in capsys.readouterr().out


def test_benchmark_is_deterministic(toy_corpus_path, toy_embeddings_path, tmp_path):
    contents = []
    for name in ("one", "two"):
        out_dir = tmp_path / name
        assert main(["benchmark", "--corpus", str(toy_corpus_path),
                     "--embeddings", str(toy_embeddings_path),
                     "--out-dir", str(out_dir)]) == 0
        contents.append({
            f.name: f.read_bytes() for f in sorted(out_dir.iterdir())
        })
    assert contents[0] == contents[1]


def test_benchmark_bad_psd_weights_exit_two(toy_corpus_path, capsys):
    assert main(["benchmark", "--corpus", str(toy_corpus_path),
                 "--psd-weights", "1,zap"]) == 2
    assert "--psd-weights" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# iaa

def test_iaa_prints_markdown_and_writes_csv(toy_corpus_path, tmp_path, capsys):
    out = tmp_path / "iaa.csv"
    assert main(["iaa", "--corpus", str(toy_corpus_path), "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "## Inter-annotator agreement (CER, %)" in stdout
    assert "**Avg**" in stdout
    assert out.read_text(encoding="utf-8").startswith("first,second,rate,n\n")


def test_iaa_rejects_bad_granularity(toy_corpus_path, capsys):
    assert main(["iaa", "--corpus", str(toy_corpus_path),
                 "--granularity", "per"]) == 2
    assert "--granularity" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# cmi

def test_cmi_lists_utterances_then_recordings(toy_corpus_path, capsys):
    assert main(["cmi", "--corpus", str(toy_corpus_path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "level,id,cmi"
    levels = [line.split(",")[0] for line in lines[1:]]
    assert levels == sorted(levels, key=lambda l: l != "utterance")
    assert levels.count("utterance") == 12
    assert levels.count("recording") >= 1


def test_cmi_agrees_with_library(toy_corpus_path, capsys):
    records = {r.utterance_id: r for r in load_corpus(toy_corpus_path)}
    assert main(["cmi", "--corpus", str(toy_corpus_path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    row = next(l for l in lines if l.startswith("utterance,utt001,"))
    expected = cmi(tag_languages(tokenize(records["utt001"].reference)))
    assert row == f"utterance,utt001,{expected:.2f}"


def test_cmi_lexicon_override(toy_corpus_path, tmp_path, capsys):
    lexicon = write(tmp_path / "lex.tsv", "hello\tL1\n")
    assert main(["cmi", "--corpus", str(toy_corpus_path),
                 "--lexicon", lexicon]) == 0
    assert capsys.readouterr().out.startswith("level,id,cmi")


def test_cmi_bad_lexicon_row_exits_two(toy_corpus_path, tmp_path, capsys):
    lexicon = write(tmp_path / "lex.tsv", "hello L1\n")
    assert main(["cmi", "--corpus", str(toy_corpus_path),
                 "--lexicon", lexicon]) == 2
    assert "word<TAB>tag" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# g2p / translit / normalize

def test_g2p_inline_text(capsys):
    assert main(["g2p", "--text", "cat"]) == 0
    assert capsys.readouterr().out == "k æ t\n"


def test_g2p_arabic_text(capsys):
    assert main(["g2p", "--text", "باب"]) == 0
    assert capsys.readouterr().out == "b a b\n"


def test_g2p_input_file(tmp_path, capsys):
    path = write(tmp_path / "in.txt", "cat\nباب\n")
    assert main(["g2p", "--input", path]) == 0
    assert capsys.readouterr().out == "k æ t\nb a b\n"


def test_g2p_unknown_grapheme_exits_one(capsys):
    assert main(["g2p", "--text", "naïve"]) == 1
    assert "error:" in capsys.readouterr().err


def test_g2p_skip_mode_succeeds(capsys):
    assert main(["g2p", "--text", "naïve", "--on-unknown", "skip"]) == 0
    assert capsys.readouterr().out == "n æ v\n"


def test_g2p_bad_on_unknown_exits_two(capsys):
    assert main(["g2p", "--text", "cat", "--on-unknown", "maybe"]) == 2
    assert "--on-unknown" in capsys.readouterr().err


def test_g2p_requires_some_input(capsys):
    assert main(["g2p"]) == 2
    assert "--text or --input" in capsys.readouterr().err


def test_translit_default_direction(capsys):
    assert main(["translit", "--text", "ktAb"]) == 0
    assert capsys.readouterr().out == "كتاب\n"


def test_translit_to_roman(capsys):
    assert main(["translit", "--text", "كتاب", "--direction", "to-roman"]) == 0
    assert capsys.readouterr().out == "ktAb\n"


def test_translit_scheme_lexicon(toy_scheme_path, capsys):
    assert main(["translit", "--text", "meeting", "--scheme",
                 str(toy_scheme_path)]) == 0
    assert capsys.readouterr().out == "ميتينج\n"


def test_translit_bad_direction_exits_two(capsys):
    assert main(["translit", "--text", "x", "--direction", "sideways"]) == 2
    assert "--direction" in capsys.readouterr().err


def test_normalize_default_profile(capsys):
    assert main(["normalize", "--text", "أحمد"]) == 0
    assert capsys.readouterr().out == "احمد\n"


def test_normalize_custom_profile(capsys):
    assert main(["normalize", "--text", "Hello  World", "--norm",
                 "lowercase"]) == 0
    assert capsys.readouterr().out == "hello  world\n"


def test_normalize_bad_flag_exits_two(capsys):
    assert main(["normalize", "--text", "x", "--norm", "alif-ya,bogus"]) == 2
    assert "--norm" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# help text

def test_help_lists_registered_metrics(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0
    out = capsys.readouterr().out
    for metric in REGISTERED_METRICS:
        assert metric in out
    assert "cosine" in out
