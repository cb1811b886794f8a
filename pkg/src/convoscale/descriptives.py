"""Descriptive corpus statistics: moments, TTR, correlations, unique-word
runs, POS proportions, interjection tables, pause scoring."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import Conversation, Corpus
from .scaling import rank_frequency
from .textprep import MACRO_CLASSES

MEASURES = ("words", "utterances", "speaker-words")

PAUSE_THRESHOLDS = (0.0, 0.4, 1.25)


@dataclass(frozen=True)
class BasicStats:
    mean: float
    sd: float
    median: float
    min: float
    max: float
    cv: float
    n: int


def _moments(values: Sequence[float]) -> BasicStats:
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("no values to summarize")
    mean = float(arr.mean())
    sd = float(arr.std())
    return BasicStats(
        mean=mean,
        sd=sd,
        median=float(np.median(arr)),
        min=float(arr.min()),
        max=float(arr.max()),
        cv=sd / mean if mean > 0 else math.nan,
        n=int(arr.size),
    )


def _measure_values(corpus: Corpus, measure: str) -> list[float]:
    if measure == "words":
        return [float(c.n_words) for c in corpus]
    if measure == "utterances":
        return [float(len(c.utterances)) for c in corpus]
    if measure == "speaker-words":
        values = []
        for conv in corpus:
            per_speaker: dict[str, int] = {}
            for utt in conv.utterances:
                n = sum(1 for t in utt.tokens if t.is_word)
                per_speaker[utt.speaker_id] = per_speaker.get(utt.speaker_id, 0) + n
            values.extend(float(v) for v in per_speaker.values())
        return values
    raise ValueError(f"unknown measure {measure!r}")


def basic_stats(corpus: Corpus, measure: str = "words") -> BasicStats:
    """Moments of a per-conversation (or per-speaker) count distribution."""
    if len(corpus) == 0:
        raise ValueError("basic_stats needs a nonempty corpus")
    return _moments(_measure_values(corpus, measure))


def ttr(conversation: Conversation) -> float:
    """Type-token ratio: unique forms over total tokens."""
    forms = conversation.forms()
    if not forms:
        raise ValueError(f"conversation {conversation.id!r} has no tokens")
    return len(set(forms)) / len(forms)


def corpus_ttr(corpus: Corpus) -> tuple[float, float]:
    """Mean and (population) sd of per-conversation TTRs."""
    values = [ttr(c) for c in corpus if c.n_tokens > 0]
    if not values:
        raise ValueError("corpus_ttr needs at least one nonempty conversation")
    arr = np.asarray(values)
    return float(arr.mean()), float(arr.std())


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> float:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("pearson_r needs two equal-length vectors of size >= 2")
    dx, dy = x - x.mean(), y - y.mean()
    vx, vy = float(dx @ dx), float(dy @ dy)
    if vx == 0.0 or vy == 0.0:
        raise ValueError("pearson_r is undefined for zero-variance input")
    return float((dx @ dy) / math.sqrt(vx * vy))


def max_unique_run(source: Conversation | Sequence[str]) -> int:
    """Longest stretch of consecutive tokens introducing no new type."""
    forms = source.forms() if isinstance(source, Conversation) else list(source)
    if not forms:
        raise ValueError("max_unique_run needs a nonempty stream")
    seen: set[str] = set()
    run = best = 0
    for form in forms:
        if form in seen:
            run += 1
            if run > best:
                best = run
        else:
            seen.add(form)
            run = 0
    return best


@dataclass(frozen=True)
class RunReport:
    max_runs: dict[str, int]
    cutoff: int
    coverage: float
    outliers: tuple[str, ...]


def run_outliers(corpus: Corpus, coverage: float = 0.9995) -> RunReport:
    """Flag conversations whose max unique-word run exceeds the empirical
    cutoff covering the given share of the distribution."""
    if not 0 < coverage <= 1:
        raise ValueError(f"coverage must be in (0, 1], got {coverage}")
    runs = {c.id: max_unique_run(c) for c in corpus if c.n_tokens > 0}
    if not runs:
        raise ValueError("run_outliers needs at least one nonempty conversation")
    ordered = sorted(runs.values())
    idx = max(0, math.ceil(coverage * len(ordered)) - 1)
    cutoff = ordered[idx]
    outliers = tuple(cid for cid, r in runs.items() if r > cutoff)
    return RunReport(max_runs=runs, cutoff=cutoff, coverage=coverage, outliers=outliers)


def pos_proportions(corpus: Corpus) -> dict[str, tuple[float, float]]:
    """Per macro-class (total share, unique share); each vector sums to 1.

    Unique shares count a form once per class it appears in, matching how
    per-class vocabulary growth is defined.
    """
    corpus.require_tagged("pos_proportions")
    total_counts: dict[str, int] = {}
    unique_pairs: set[tuple[str, str]] = set()
    n_tokens = 0
    for conv in corpus:
        for tok in conv.tokens():
            n_tokens += 1
            total_counts[tok.macro] = total_counts.get(tok.macro, 0) + 1
            unique_pairs.add((tok.form, tok.macro))
    if n_tokens == 0:
        raise ValueError("pos_proportions needs a nonempty corpus")
    unique_counts: dict[str, int] = {}
    for _, macro in unique_pairs:
        unique_counts[macro] = unique_counts.get(macro, 0) + 1
    n_unique = len(unique_pairs)
    return {
        macro: (
            total_counts.get(macro, 0) / n_tokens,
            unique_counts.get(macro, 0) / n_unique,
        )
        for macro in MACRO_CLASSES
    }


def top_interjections(corpus: Corpus, k: int = 25) -> list[tuple[str, int, float]]:
    """Top-k interjection forms with their share of all interjection tokens."""
    corpus.require_tagged("top_interjections")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    forms = corpus.forms("INTJ")
    if not forms or k == 0:
        return []
    table = rank_frequency(forms)
    total = table.total
    return [
        (form, count, count / total) for _, form, count in table.entries()[:k]
    ]


def pause_score(
    pause_s: float, thresholds: tuple[float, float, float] = PAUSE_THRESHOLDS
) -> int:
    """Score a between-turn pause into {-1, 0, 1, 2}.

    Default bands: negative (overlap) -> -1, under 0.4 s -> 0, under 1.25 s
    -> 1, else 2. The band edges are configurable.
    """
    if not math.isfinite(pause_s):
        raise ValueError(f"pause must be finite, got {pause_s}")
    t0, t1, t2 = thresholds
    if not t0 < t1 < t2:
        raise ValueError(f"pause thresholds must increase, got {thresholds}")
    if pause_s < t0:
        return -1
    if pause_s < t1:
        return 0
    if pause_s < t2:
        return 1
    return 2


def utterance_pauses(conversation: Conversation) -> list[float]:
    """Gaps (next start minus previous stop) where both timings exist."""
    pauses = []
    prev_stop = None
    for utt in conversation.utterances:
        if prev_stop is not None and utt.start_s is not None:
            pauses.append(utt.start_s - prev_stop)
        if utt.stop_s is not None:
            prev_stop = utt.stop_s
        elif utt.start_s is not None:
            prev_stop = None
    return pauses
