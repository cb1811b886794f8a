"""Command-line front end: ingest -> clean -> (external tagging) -> analyses
-> reports. Artifacts are deterministic for a given (config, inputs) pair;
timestamps go only to the sidecar run log."""

from __future__ import annotations

import dataclasses
import json
import math
import os
import sys
import time
from typing import Sequence

import click
import numpy as np

from . import descriptives as desc
from . import ingest, scaling, synth, temporal
from .config import config_hash, load_config, profile_from_config, regimes_from_config
from .corpus import Conversation, Corpus, Token, Utterance
from .scaling import UNITS, FitResult, RegimeError, ses_flag
from .textprep import MACRO_CLASSES, clean_text

KIND_CHOICES = {
    "candor": "candor",
    "movies-individual": "movies_individual",
    "movies-grouped": "movies_grouped",
    "generic": "generic",
}

TEMPORAL_UNITS = (temporal.WORD_TYPES,) + tuple(m.lower() for m in MACRO_CLASSES)


class CliError(click.ClickException):
    exit_code = 1


def _log(out_dir: str, message: str) -> None:
    with open(os.path.join(out_dir, "run.log"), "a", encoding="utf-8") as fh:
        fh.write(f"{time.strftime('%Y-%m-%dT%H:%M:%S')} {message}\n")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    return str(value)


def _write_csv(path: str, header: Sequence[str], rows, cfg_hash: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# config_hash={cfg_hash}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(path: str, payload: dict, cfg_hash: str) -> None:
    payload = {"config_hash": cfg_hash, **payload}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")


def _write_corpus_jsonl(corpus: Corpus, path: str, cfg_hash: str) -> None:
    """Corpus artifacts carry the config hash in every record's meta."""
    stamped = Corpus(
        kind=corpus.kind,
        conversations=tuple(
            dataclasses.replace(c, meta={**c.meta, "config_hash": cfg_hash})
            for c in corpus.conversations
        ),
        provenance=corpus.provenance,
    )
    ingest.write_tagged_jsonl(stamped, path)


def _load_inputs(paths: Sequence[str], case_fold: bool) -> Corpus:
    corpora = [ingest.load_tagged_jsonl(p, case_fold) for p in paths]
    if len(corpora) == 1:
        return corpora[0]
    kind = corpora[0].kind
    conversations = []
    for corpus in corpora:
        if corpus.kind != kind:
            raise CliError(f"inputs mix corpus kinds {kind!r} and {corpus.kind!r}")
        conversations.extend(corpus.conversations)
    return Corpus(
        kind=kind,
        conversations=tuple(conversations),
        provenance="; ".join(c.provenance for c in corpora),
    )


def _fit_row(unit: str, kind: str, fit: FitResult) -> tuple:
    return (
        unit,
        kind,
        fit.exponent,
        fit.ses,
        ses_flag(fit.ses),
        fit.r2,
        fit.n_points,
        fit.regime.lo,
        fit.regime.hi,
    )


FIT_HEADER = (
    "unit",
    "corpus",
    "exponent",
    "ses",
    "ses_flag",
    "r2",
    "n_points",
    "regime_lo",
    "regime_hi",
)


def _gap_histogram(gaps: np.ndarray, bin_width: float) -> list[tuple]:
    if len(gaps) == 0:
        return []
    logs = np.log10(gaps.astype(float))
    bins = np.floor(logs / bin_width + 1e-12).astype(int)
    rows = []
    for b in sorted(set(bins.tolist())):
        count = int((bins == b).sum())
        rows.append((round(b * bin_width, 10), round((b + 1) * bin_width, 10), count))
    return rows


@click.group()
def main():
    """Scaling-law and temporal analyses for conversational corpora."""


def _common_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(exists=True), default=None,
                      help="JSON config file merged over the packaged defaults.")(fn)
    fn = click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True,
                      help="Output directory for artifacts.")(fn)
    return fn


def _prepare(config_path, out_dir):
    cfg = load_config(config_path)
    os.makedirs(out_dir, exist_ok=True)
    return cfg, config_hash(cfg)


@main.command(name="ingest")
@click.option("--input", "inputs", type=click.Path(exists=True), multiple=True, required=True)
@click.option("--kind", type=click.Choice(sorted(KIND_CHOICES)), required=True)
@click.option("--min-utterances", type=int, default=None,
              help="Override the config filter for this run.")
@_common_options
def ingest_cmd(inputs, kind, min_utterances, config_path, out_dir):
    """Load raw sources into canonical JSONL (filtered, optionally grouped)."""
    cfg, chash = _prepare(config_path, out_dir)
    case_fold = cfg["tokenize"]["case_fold"]
    filters = cfg["filters"]
    if min_utterances is not None:
        filters = {**filters, "min_utterances": min_utterances}
    kind_key = KIND_CHOICES[kind]

    if kind_key in ("movies_individual", "movies_grouped"):
        if len(inputs) != 1 or not os.path.isdir(inputs[0]):
            raise CliError("movie-dialogs ingest expects one directory input")
        corpus = ingest.load_movie_dialogs(inputs[0], case_fold)
        if kind_key == "movies_grouped":
            corpus = ingest.filter_conversations(
                corpus,
                min_utterances=0,
                excluded_genres=filters["excluded_genres"],
                drop_null=filters["drop_null"],
            )
            corpus = ingest.group_by_movie(corpus)
        else:
            corpus = ingest.filter_conversations(
                corpus,
                min_utterances=filters["min_utterances"],
                excluded_genres=filters["excluded_genres"],
                drop_null=filters["drop_null"],
            )
    else:
        corpora = []
        for path in inputs:
            if path.endswith(".txt"):
                corpora.append(ingest.load_plain_text(path, case_fold))
            else:
                corpora.append(ingest.load_tagged_jsonl(path, case_fold))
        conversations = tuple(c for corp in corpora for c in corp.conversations)
        if conversations and any(c.kind != kind_key for c in conversations):
            raise CliError(f"input corpora are not of kind {kind!r}")
        corpus = Corpus(
            kind=kind_key,
            conversations=conversations,
            provenance="; ".join(c.provenance for c in corpora) or "empty",
        )
        if filters["min_utterances"]:
            corpus = ingest.filter_conversations(
                corpus, min_utterances=filters["min_utterances"]
            )

    if len(corpus) == 0:
        raise CliError("no conversations found")

    out_path = os.path.join(out_dir, "corpus.jsonl")
    _write_corpus_jsonl(corpus, out_path, chash)
    movie_ids = {c.meta.get("movie_id") for c in corpus if c.meta.get("movie_id")}
    _write_json(
        os.path.join(out_dir, "ingest_summary.json"),
        {
            "kind": corpus.kind,
            "n_conversations": len(corpus),
            "n_utterances": corpus.n_utterances,
            "n_tokens": corpus.n_tokens,
            "n_movies": len(movie_ids),
            "provenance": corpus.provenance,
        },
        chash,
    )
    _log(out_dir, f"ingest kind={kind} n={len(corpus)} config={chash}")
    click.echo(f"wrote {out_path} ({len(corpus)} conversations)")


@main.command()
@click.option("--input", "inputs", type=click.Path(exists=True), multiple=True, required=True)
@click.option("--profile", type=click.Choice(["candor", "movies", "common"]), default=None,
              help="Cleaning profile; defaults by corpus kind.")
@click.option("--format", "out_format", type=click.Choice(["raw", "tagged-x"]), default="raw",
              help="raw: text utterances for the tagging adapter; tagged-x: "
                   "tokenized placeholder-tag JSONL for word-level analysis.")
@_common_options
def clean(inputs, profile, out_format, config_path, out_dir):
    """Clean utterance text and emit JSONL for tagging or word-level analysis."""
    cfg, chash = _prepare(config_path, out_dir)
    case_fold = cfg["tokenize"]["case_fold"]
    corpus = _load_inputs(inputs, case_fold)
    if profile is None:
        profile = {
            "candor": "candor",
            "movies_individual": "movies",
            "movies_grouped": "movies",
            "generic": "common",
        }[corpus.kind]
    prof = profile_from_config(cfg, profile)
    common = profile_from_config(cfg, "common")

    out_path = os.path.join(out_dir, f"clean.{out_format}.jsonl")
    if out_format == "tagged-x":
        cleaned = ingest.clean_retokenize(corpus, prof, common, case_fold)
        _write_corpus_jsonl(cleaned, out_path, chash)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            for conv in corpus:
                utterances = []
                for utt in conv.utterances:
                    text = clean_text(
                        " ".join(t.surface for t in utt.tokens), prof, common
                    )
                    utterances.append(
                        {
                            "speaker": utt.speaker_id,
                            "start_s": utt.start_s,
                            "stop_s": utt.stop_s,
                            "text": text,
                        }
                    )
                meta = {**conv.meta, "config_hash": chash}
                record = {
                    "id": conv.id,
                    "kind": conv.kind,
                    "meta": {k: meta[k] for k in sorted(meta)},
                    "utterances": utterances,
                }
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    _log(out_dir, f"clean profile={profile} format={out_format} config={chash}")
    click.echo(f"wrote {out_path}")


def _analysis_corpus(inputs, cfg) -> Corpus:
    return _load_inputs(inputs, cfg["tokenize"]["case_fold"])


@main.command(name="analyze-heaps")
@click.option("--input", "inputs", type=click.Path(exists=True), multiple=True, required=True)
@click.option("--unit", type=click.Choice(UNITS), default="all")
@_common_options
def analyze_heaps(inputs, unit, config_path, out_dir):
    """Heaps fit of the averaged growth curve (regime on unique types)."""
    cfg, chash = _prepare(config_path, out_dir)
    corpus = _analysis_corpus(inputs, cfg)
    regimes = regimes_from_config(cfg)
    fit = scaling.heaps_fit(corpus, unit, regimes)
    _write_csv(
        os.path.join(out_dir, "heaps_fits.csv"),
        FIT_HEADER,
        [_fit_row(unit, corpus.kind, fit)],
        chash,
    )
    curve = scaling.averaged_growth_curve(corpus, unit)
    _write_csv(
        os.path.join(out_dir, f"heaps_curve_{unit}.csv"),
        ("t", "n_unique"),
        zip(curve.n_total.tolist(), curve.n_unique.tolist()),
        chash,
    )
    _log(out_dir, f"analyze-heaps unit={unit} config={chash}")
    click.echo(f"heaps {unit}: exponent={fit.exponent:.4f} ses={fit.ses:.2g}")


@main.command(name="analyze-zipf")
@click.option("--input", "inputs", type=click.Path(exists=True), multiple=True, required=True)
@click.option("--unit", type=click.Choice(UNITS), default="all")
@_common_options
def analyze_zipf(inputs, unit, config_path, out_dir):
    """Zipf fit of the corpus rank-frequency table (regime on rank)."""
    cfg, chash = _prepare(config_path, out_dir)
    corpus = _analysis_corpus(inputs, cfg)
    regimes = regimes_from_config(cfg)
    fit = scaling.zipf_fit(corpus, unit, regimes)
    _write_csv(
        os.path.join(out_dir, "zipf_fits.csv"),
        FIT_HEADER,
        [_fit_row(unit, corpus.kind, fit)],
        chash,
    )
    table = scaling.rank_frequency(corpus, unit)
    _write_csv(
        os.path.join(out_dir, f"zipf_curve_{unit}.csv"),
        ("rank", "count"),
        ((rank, count) for rank, _, count in table.entries()),
        chash,
    )
    _log(out_dir, f"analyze-zipf unit={unit} config={chash}")
    click.echo(f"zipf {unit}: exponent={fit.exponent:.4f} ses={fit.ses:.2g}")


@main.command(name="analyze-pos")
@click.option("--input", "inputs", type=click.Path(exists=True), multiple=True, required=True)
@_common_options
def analyze_pos(inputs, config_path, out_dir):
    """Per macro-class Heaps and Zipf fits plus POS proportions."""
    cfg, chash = _prepare(config_path, out_dir)
    corpus = _analysis_corpus(inputs, cfg)
    regimes = regimes_from_config(cfg)
    heaps_rows, zipf_rows = [], []
    for unit in UNITS[1:]:
        for rows, fitter in ((heaps_rows, scaling.heaps_fit), (zipf_rows, scaling.zipf_fit)):
            try:
                rows.append(_fit_row(unit, corpus.kind, fitter(corpus, unit, regimes)))
            except (RegimeError, ValueError) as exc:
                rows.append((unit, corpus.kind, "", "", "", "", "", "", ""))
                _log(out_dir, f"analyze-pos unit={unit}: {exc}")
    _write_csv(os.path.join(out_dir, "heaps_fits.csv"), FIT_HEADER, heaps_rows, chash)
    _write_csv(os.path.join(out_dir, "zipf_fits.csv"), FIT_HEADER, zipf_rows, chash)
    proportions = desc.pos_proportions(corpus)
    _write_csv(
        os.path.join(out_dir, "pos_proportions.csv"),
        ("macro", "total_share", "unique_share"),
        [(m, t, u) for m, (t, u) in proportions.items()],
        chash,
    )
    _log(out_dir, f"analyze-pos config={chash}")
    click.echo(f"wrote per-class fits and proportions to {out_dir}")


@main.command(name="analyze-temporal")
@click.option("--input", "inputs", type=click.Path(exists=True), multiple=True, required=True)
@click.option("--unit", "units", type=click.Choice(TEMPORAL_UNITS + ("all",)), multiple=True,
              default=("word-types",))
@click.option("--shuffle", is_flag=True, help="Also compute seeded shuffled baselines.")
@click.option("--seed", type=int, default=None, help="Shuffle seed (defaults from config).")
@_common_options
def analyze_temporal(inputs, units, shuffle, seed, config_path, out_dir):
    """Burstiness/memory per unit, gap histograms, tertile gap histograms."""
    cfg, chash = _prepare(config_path, out_dir)
    corpus = _analysis_corpus(inputs, cfg)
    tcfg = cfg["temporal"]
    seed = cfg["seed"] if seed is None else seed
    if "all" in units:
        units = TEMPORAL_UNITS if corpus.is_tagged else (temporal.WORD_TYPES,)
    units = tuple(dict.fromkeys(units))

    rows = []
    for unit in units:
        variants = [(False, 0)] + ([(True, seed)] if shuffle else [])
        for shuffled, s in variants:
            bm = temporal.corpus_bm(
                corpus,
                unit,
                shuffle=shuffled,
                seed=s,
                average=tcfg["average"],
                min_occurrences=tcfg["min_occurrences"],
            )
            rows.append((unit, bm.b, bm.m, int(shuffled)))
    _write_csv(os.path.join(out_dir, "bm.csv"), ("label", "b", "m", "shuffled"), rows, chash)

    bin_width = tcfg["histogram_bin_width"]
    for unit in units:
        pooled = []
        for conv in corpus:
            tokens = list(conv.tokens())
            if not tokens:
                continue
            if unit == temporal.WORD_TYPES:
                positions: dict[str, list[int]] = {}
                for i, tok in enumerate(tokens, 1):
                    positions.setdefault(tok.form, []).append(i)
                for plist in positions.values():
                    pooled.extend(np.diff(np.asarray(plist)).tolist())
            else:
                series = temporal.interarrival_series(tokens, unit.upper())
                pooled.extend(series.gaps.tolist())
        _write_csv(
            os.path.join(out_dir, f"gaps_hist_{unit}.csv"),
            ("bin_lo_log10", "bin_hi_log10", "count"),
            _gap_histogram(np.asarray(pooled, dtype=np.int64), bin_width),
            chash,
        )

    tert_rows = []
    for third_idx in range(3):
        pooled = []
        for conv in corpus:
            if conv.n_tokens < 3:
                continue
            thirds = temporal.tertile_interarrivals(conv, temporal.WORD_TYPES)
            pooled.extend(thirds[third_idx].tolist())
        for row in _gap_histogram(np.asarray(pooled, dtype=np.int64), bin_width):
            tert_rows.append((third_idx + 1,) + row)
    _write_csv(
        os.path.join(out_dir, "gaps_tertiles.csv"),
        ("third", "bin_lo_log10", "bin_hi_log10", "count"),
        tert_rows,
        chash,
    )
    _log(out_dir, f"analyze-temporal units={','.join(units)} config={chash}")
    click.echo(f"wrote b/m and gap histograms to {out_dir}")


@main.command(name="descriptives")
@click.option("--input", "inputs", type=click.Path(exists=True), multiple=True, required=True)
@_common_options
def descriptives_cmd(inputs, config_path, out_dir):
    """Word/utterance moments, TTR, correlations, runs, interjection table."""
    cfg, chash = _prepare(config_path, out_dir)
    corpus = _analysis_corpus(inputs, cfg)

    stat_rows = []
    for measure in desc.MEASURES:
        s = desc.basic_stats(corpus, measure)
        stat_rows.append((measure, s.mean, s.sd, s.median, s.min, s.max, s.cv, s.n))
    _write_csv(
        os.path.join(out_dir, "descriptive_stats.csv"),
        ("measure", "mean", "sd", "median", "min", "max", "cv", "n"),
        stat_rows,
        chash,
    )

    mean_ttr, sd_ttr = desc.corpus_ttr(corpus)
    _write_csv(os.path.join(out_dir, "ttr.csv"), ("mean", "sd"), [(mean_ttr, sd_ttr)], chash)

    words = [float(c.n_words) for c in corpus]
    utts = [float(len(c.utterances)) for c in corpus]
    try:
        r = desc.pearson_r(words, utts)
    except ValueError:
        r = math.nan
    _write_csv(
        os.path.join(out_dir, "words_utterances_r.csv"), ("pearson_r",), [(r,)], chash
    )

    report = desc.run_outliers(corpus, cfg["runs"]["coverage"])
    run_rows = [
        (cid, run, int(cid in report.outliers))
        for cid, run in sorted(report.max_runs.items())
    ]
    _write_csv(
        os.path.join(out_dir, "runs.csv"),
        ("conversation", "max_run", "outlier"),
        run_rows,
        chash,
    )
    _write_json(
        os.path.join(out_dir, "runs_summary.json"),
        {
            "cutoff": report.cutoff,
            "coverage": report.coverage,
            "outliers": sorted(report.outliers),
        },
        chash,
    )

    if corpus.is_tagged:
        _write_csv(
            os.path.join(out_dir, "top_interjections.csv"),
            ("form", "count", "share"),
            desc.top_interjections(corpus, 25),
            chash,
        )

    pauses = [p for conv in corpus for p in desc.utterance_pauses(conv)]
    if pauses:
        thresholds = tuple(cfg["pauses"]["thresholds"])
        score_counts: dict[int, int] = {}
        for p in pauses:
            s = desc.pause_score(p, thresholds)
            score_counts[s] = score_counts.get(s, 0) + 1
        _write_csv(
            os.path.join(out_dir, "pause_scores.csv"),
            ("score", "count"),
            sorted(score_counts.items()),
            chash,
        )
    _log(out_dir, f"descriptives config={chash}")
    click.echo(f"wrote descriptive statistics to {out_dir}")


@main.command(name="synth")
@click.option("--process", type=click.Choice(["heaps", "zipf"]), required=True)
@click.option("--beta", type=float, default=0.7)
@click.option("--alpha", type=float, default=1.0)
@click.option("--vocab", type=int, default=10_000)
@click.option("--n-tokens", type=int, default=100_000)
@click.option("--seed", type=int, default=None)
@_common_options
def synth_cmd(process, beta, alpha, vocab, n_tokens, seed, config_path, out_dir):
    """Generate a synthetic stream and write it as placeholder-tagged JSONL."""
    cfg, chash = _prepare(config_path, out_dir)
    seed = cfg["seed"] if seed is None else seed
    if process == "heaps":
        forms = synth.heaps_process(beta, n_tokens, seed)
        name = f"heaps_beta{beta}_seed{seed}"
    else:
        forms = synth.zipf_sample(alpha, vocab, n_tokens, seed)
        name = f"zipf_alpha{alpha}_seed{seed}"
    corpus = synth.to_corpus(forms, conversation_id=name, provenance=f"synth:{name}")
    out_path = os.path.join(out_dir, "synth.jsonl")
    _write_corpus_jsonl(corpus, out_path, chash)
    _log(out_dir, f"synth {name} config={chash}")
    click.echo(f"wrote {out_path} ({n_tokens} tokens)")


@main.command(name="report")
@_common_options
def report_cmd(config_path, out_dir):
    """Consolidate fit CSVs in the output directory into one regression table."""
    cfg, chash = _prepare(config_path, out_dir)
    rows = []
    for analysis, filename in (("heaps", "heaps_fits.csv"), ("zipf", "zipf_fits.csv")):
        path = os.path.join(out_dir, filename)
        if not os.path.exists(path):
            continue
        with open(path, encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh if not ln.startswith("#")]
        header = lines[0].split(",")
        for line in lines[1:]:
            record = dict(zip(header, line.split(",")))
            rows.append(
                (
                    record.get("corpus", ""),
                    analysis,
                    record.get("unit", ""),
                    record.get("exponent", ""),
                    record.get("ses_flag", ""),
                )
            )
    if not rows:
        raise CliError("no fit tables found; run analyze-heaps/analyze-zipf first")
    rows.sort()
    _write_csv(
        os.path.join(out_dir, "report.csv"),
        ("corpus", "analysis", "unit", "exponent", "ses_flag"),
        rows,
        chash,
    )
    _log(out_dir, f"report rows={len(rows)} config={chash}")
    click.echo(f"wrote {os.path.join(out_dir, 'report.csv')}")


def entry():  # console-script shim with uniform error reporting
    try:
        main(standalone_mode=False)
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(130)
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    entry()
