import json
import os

import pytest
from click.testing import CliRunner

from convoscale.cli import main
from convoscale.config import config_hash, default_config, load_config, regimes_from_config


@pytest.fixture
def runner():
    return CliRunner()


def read_artifacts(out_dir):
    return {
        name: (out_dir / name).read_bytes()
        for name in os.listdir(out_dir)
        if name != "run.log"
    }


def test_default_config_loads_and_hashes():
    cfg = default_config()
    assert cfg["filters"]["min_utterances"] == 10
    assert cfg["regimes"]["corpus_level"] == [2.0, 3.4]
    assert len(config_hash(cfg)) == 16
    assert config_hash(cfg) == config_hash(default_config())


def test_load_config_merges_overrides(tmp_path):
    override = tmp_path / "override.json"
    override.write_text(json.dumps({"filters": {"min_utterances": 3}}), encoding="utf-8")
    cfg = load_config(str(override))
    assert cfg["filters"]["min_utterances"] == 3
    assert cfg["filters"]["drop_null"] is True  # untouched defaults survive
    assert config_hash(cfg) != config_hash(default_config())


def test_regimes_from_config_matches_defaults():
    regimes = regimes_from_config(default_config())
    assert regimes.cells[("noun", "candor")] == (1.4, 3.2)
    assert regimes.cells[("other", "movies_individual")] == (1.45, 2.6)
    bounds = regimes.lookup("all", "candor", axis="y")
    assert (bounds.lo, bounds.hi) == (2.0, 3.4)


def test_cli_synth_analyze_report_pipeline(tmp_path, runner):
    out = tmp_path / "run"
    result = runner.invoke(
        main,
        ["synth", "--process", "heaps", "--beta", "0.7", "--n-tokens", "30000",
         "--seed", "5", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    result = runner.invoke(
        main,
        ["analyze-heaps", "--input", str(out / "synth.jsonl"), "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    lines = (out / "heaps_fits.csv").read_text().splitlines()
    assert lines[0].startswith("# config_hash=")
    header = lines[1].split(",")
    row = dict(zip(header, lines[2].split(",")))
    assert abs(float(row["exponent"]) - 0.7) < 0.05
    assert row["ses_flag"] == ""
    assert row["unit"] == "all"

    result = runner.invoke(main, ["report", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = (out / "report.csv").read_text().splitlines()
    assert report[1] == "corpus,analysis,unit,exponent,ses_flag"
    assert report[2].startswith("generic,heaps,all,")


def test_cli_ingest_empty_directory_fails(tmp_path, runner):
    empty = tmp_path / "empty"
    empty.mkdir()
    (empty / "blank.jsonl").write_text("", encoding="utf-8")
    result = runner.invoke(
        main,
        ["ingest", "--input", str(empty / "blank.jsonl"), "--kind", "generic",
         "--out", str(tmp_path / "out")],
        standalone_mode=False,
    )
    assert result.exit_code != 0 or isinstance(result.exception, Exception)


def test_cli_ingest_movie_dialogs_and_group(tmp_path, runner, movie_dialogs_dir):
    out = tmp_path / "mi"
    result = runner.invoke(
        main,
        ["ingest", "--input", str(movie_dialogs_dir), "--kind", "movies-individual",
         "--min-utterances", "0", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    summary = json.loads((out / "ingest_summary.json").read_text())
    # the documentary movie is filtered by the default excluded genres
    assert summary["n_conversations"] == 2
    assert summary["n_movies"] == 1

    out_g = tmp_path / "mg"
    result = runner.invoke(
        main,
        ["ingest", "--input", str(movie_dialogs_dir), "--kind", "movies-grouped",
         "--out", str(out_g)],
    )
    assert result.exit_code == 0, result.output
    summary = json.loads((out_g / "ingest_summary.json").read_text())
    assert summary["kind"] == "movies_grouped"
    assert summary["n_conversations"] == 1


def test_cli_clean_emits_raw_and_tokenized(tmp_path, runner, movie_dialogs_dir):
    out = tmp_path / "out"
    runner.invoke(
        main,
        ["ingest", "--input", str(movie_dialogs_dir), "--kind", "movies-individual",
         "--min-utterances", "0", "--out", str(out)],
    )
    result = runner.invoke(
        main,
        ["clean", "--input", str(out / "corpus.jsonl"), "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    raw_lines = [
        json.loads(line)
        for line in (out / "clean.raw.jsonl").read_text().splitlines()
    ]
    texts = [u["text"] for rec in raw_lines for u in rec["utterances"]]
    assert "I'm going to leave now." in texts  # gonna expanded

    result = runner.invoke(
        main,
        ["clean", "--input", str(out / "corpus.jsonl"), "--format", "tagged-x",
         "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    tokenized = [
        json.loads(line)
        for line in (out / "clean.tagged-x.jsonl").read_text().splitlines()
    ]
    first_tokens = [t["s"] for t in tokenized[0]["utterances"][0]["tokens"]]
    assert first_tokens == ["They", "do", "not", "!"]


def test_cli_temporal_and_descriptives(tmp_path, runner):
    out = tmp_path / "t"
    runner.invoke(
        main,
        ["synth", "--process", "zipf", "--alpha", "1.0", "--vocab", "50",
         "--n-tokens", "5000", "--seed", "2", "--out", str(out)],
    )
    result = runner.invoke(
        main,
        ["analyze-temporal", "--input", str(out / "synth.jsonl"), "--shuffle",
         "--seed", "1", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    bm_lines = (out / "bm.csv").read_text().splitlines()
    assert bm_lines[1] == "label,b,m,shuffled"
    labels = [line.split(",")[0] for line in bm_lines[2:]]
    assert labels == ["word-types", "word-types"]
    assert (out / "gaps_hist_word-types.csv").exists()
    assert (out / "gaps_tertiles.csv").exists()

    result = runner.invoke(
        main, ["descriptives", "--input", str(out / "synth.jsonl"), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert (out / "descriptive_stats.csv").exists()
    assert (out / "ttr.csv").exists()
    assert (out / "runs.csv").exists()


def test_cli_artifacts_deterministic(tmp_path, runner):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        runner.invoke(
            main,
            ["synth", "--process", "heaps", "--beta", "0.63", "--n-tokens", "5000",
             "--seed", "11", "--out", str(out)],
        )
        runner.invoke(
            main, ["analyze-heaps", "--input", str(out / "synth.jsonl"), "--out", str(out)]
        )
        runner.invoke(
            main, ["descriptives", "--input", str(out / "synth.jsonl"), "--out", str(out)]
        )
        outs.append(read_artifacts(out))
    assert outs[0] == outs[1]


def test_cli_analyze_pos_on_tagged(tmp_path, runner, small_tagged_corpus):
    from convoscale.ingest import write_tagged_jsonl

    path = tmp_path / "tagged.jsonl"
    write_tagged_jsonl(small_tagged_corpus, str(path))
    out = tmp_path / "pos"
    result = runner.invoke(main, ["analyze-pos", "--input", str(path), "--out", str(out)])
    assert result.exit_code == 0, result.output
    props = (out / "pos_proportions.csv").read_text().splitlines()
    assert props[1] == "macro,total_share,unique_share"
    shares = [float(line.split(",")[1]) for line in props[2:]]
    assert sum(shares) == pytest.approx(1.0)


def test_cli_corpus_artifacts_embed_config_hash(tmp_path, runner):
    out = tmp_path / "h"
    runner.invoke(
        main,
        ["synth", "--process", "heaps", "--beta", "0.7", "--n-tokens", "50",
         "--seed", "0", "--out", str(out)],
    )
    record = json.loads((out / "synth.jsonl").read_text().splitlines()[0])
    from convoscale.config import default_config

    assert record["meta"]["config_hash"] == config_hash(default_config())


def test_cli_unknown_command_nonzero(runner):
    result = runner.invoke(main, ["no-such-command"])
    assert result.exit_code != 0
