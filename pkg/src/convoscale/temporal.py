"""Interarrival-time statistics: gap series, burstiness, memory, tertile
splits, and shuffled baselines."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import Conversation, Corpus, Token
from .textprep import MACRO_CLASSES

WORD_TYPES = "word-types"

# Burstiness needs more than 2 occurrences of a kind: 2 occurrences give one
# gap, zero variance, and a hard-coded -1.
MIN_OCCURRENCES = 3


@dataclass(frozen=True)
class InterarrivalSeries:
    key: str
    gaps: np.ndarray
    n_events: int


@dataclass(frozen=True)
class BurstinessMemory:
    b: float | None
    m: float | None


def _stream_pairs(stream: Sequence) -> list[tuple[str, str]]:
    """Normalize a stream of Tokens or bare forms to (form, macro) pairs."""
    out = []
    for item in stream:
        if isinstance(item, Token):
            out.append((item.form, item.macro))
        else:
            out.append((str(item), "OTHER"))
    return out


def _positions(pairs: list[tuple[str, str]], key: str, mode: str) -> list[int]:
    """1-based stream indices of the key's events under the given mode."""
    is_class = key in MACRO_CLASSES
    if mode == "total":
        if is_class:
            return [i for i, (_, macro) in enumerate(pairs, 1) if macro == key]
        return [i for i, (form, _) in enumerate(pairs, 1) if form == key]
    if mode == "unique":
        if not is_class:
            raise ValueError("unique mode applies to macro-class keys only")
        seen: set[str] = set()
        positions = []
        for i, (form, macro) in enumerate(pairs, 1):
            if macro == key and form not in seen:
                seen.add(form)
                positions.append(i)
        return positions
    raise ValueError(f"unknown interarrival mode {mode!r}")


def interarrival_series(
    stream: Sequence, key: str, mode: str = "total"
) -> InterarrivalSeries:
    """Gap series for a type form or macro-class over a token stream.

    Total mode counts index differences between successive occurrences of the
    key; unique mode (class keys only) tracks first occurrences of new types
    within that class. An absent key yields an empty series.
    """
    if len(stream) == 0:
        raise ValueError("interarrival_series needs a nonempty stream")
    positions = _positions(_stream_pairs(stream), key, mode)
    gaps = np.diff(np.asarray(positions, dtype=np.int64))
    return InterarrivalSeries(key=key, gaps=gaps, n_events=len(positions))


def burstiness(series: InterarrivalSeries | Sequence[int]) -> float | None:
    """(sigma - mu) / (sigma + mu) of the gaps; None with fewer than 2 gaps.

    Population standard deviation, so perfectly periodic gaps hit -1 exactly.
    """
    gaps = series.gaps if isinstance(series, InterarrivalSeries) else np.asarray(series)
    if len(gaps) < 2:
        return None
    gaps = np.asarray(gaps, dtype=float)
    mu = gaps.mean()
    sigma = gaps.std()
    return float((sigma - mu) / (sigma + mu))


def memory(series: InterarrivalSeries | Sequence[int]) -> float | None:
    """Lag-1 Pearson correlation of consecutive gaps; None when degenerate."""
    gaps = series.gaps if isinstance(series, InterarrivalSeries) else np.asarray(series)
    if len(gaps) < 3:  # fewer than 2 consecutive pairs
        return None
    gaps = np.asarray(gaps, dtype=float)
    x, y = gaps[:-1], gaps[1:]
    dx, dy = x - x.mean(), y - y.mean()
    vx, vy = float(dx @ dx), float(dy @ dy)
    if vx == 0.0 or vy == 0.0:
        return None
    return float((dx @ dy) / np.sqrt(vx * vy))


def conversation_seed(seed: int, conversation_id: str) -> int:
    """Stable per-conversation shuffle seed, independent of schedule."""
    digest = hashlib.sha256(f"{seed}:{conversation_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _conversation_bm(
    tokens: list[Token], unit: str, min_occurrences: int
) -> tuple[list[float], list[float]]:
    pairs = [(t.form, t.macro) for t in tokens]
    if unit == WORD_TYPES:
        counts: dict[str, int] = {}
        for form, _ in pairs:
            counts[form] = counts.get(form, 0) + 1
        keys = [f for f, c in counts.items() if c >= min_occurrences]
        key_positions: dict[str, list[int]] = {f: [] for f in keys}
        for i, (form, _) in enumerate(pairs, 1):
            if form in key_positions:
                key_positions[form].append(i)
        gap_lists = [np.diff(np.asarray(p, dtype=np.int64)) for p in key_positions.values()]
    else:
        gap_lists = [
            np.diff(np.asarray(_positions(pairs, unit.upper(), "total"), dtype=np.int64))
        ]
    bs, ms = [], []
    for gaps in gap_lists:
        b = burstiness(gaps)
        if b is not None:
            bs.append(b)
        m = memory(gaps)
        if m is not None:
            ms.append(m)
    return bs, ms


def corpus_bm(
    corpus: Corpus,
    unit: str = WORD_TYPES,
    shuffle: bool = False,
    seed: int = 0,
    average: str = "conversation-then-corpus",
    min_occurrences: int = MIN_OCCURRENCES,
) -> BurstinessMemory:
    """Corpus-level burstiness and memory for word types or one macro-class.

    Word-type mode filters types rarer than ``min_occurrences`` per
    conversation; class mode uses the single class series (no rare-type
    filter applies there). Defined values average across keys within each
    conversation and then across conversations; ``average='pooled'`` instead
    takes one mean over all key-level values.
    """
    if unit != WORD_TYPES:
        if unit.upper() not in MACRO_CLASSES:
            raise ValueError(f"unknown burstiness unit {unit!r}")
        corpus.require_tagged(f"class-level burstiness for {unit!r}")
    if average not in ("conversation-then-corpus", "pooled"):
        raise ValueError(f"unknown averaging order {average!r}")

    conv_bs, conv_ms = [], []
    pooled_bs, pooled_ms = [], []
    for conv in corpus:
        tokens = list(conv.tokens())
        if not tokens:
            continue
        if shuffle:
            rng = np.random.default_rng(conversation_seed(seed, conv.id))
            order = rng.permutation(len(tokens))
            tokens = [tokens[i] for i in order]
        bs, ms = _conversation_bm(tokens, unit, min_occurrences)
        pooled_bs.extend(bs)
        pooled_ms.extend(ms)
        if bs:
            conv_bs.append(float(np.mean(bs)))
        if ms:
            conv_ms.append(float(np.mean(ms)))

    if average == "pooled":
        b = float(np.mean(pooled_bs)) if pooled_bs else None
        m = float(np.mean(pooled_ms)) if pooled_ms else None
    else:
        b = float(np.mean(conv_bs)) if conv_bs else None
        m = float(np.mean(conv_ms)) if conv_ms else None
    return BurstinessMemory(b=b, m=m)


def tertile_interarrivals(
    conversation: Conversation | Sequence, unit: str = WORD_TYPES
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pooled gap lists for each narrative third of a conversation.

    The stream is cut at floor(T/3) and floor(2T/3); gaps never cross a
    boundary.
    """
    if isinstance(conversation, Conversation):
        stream: list = list(conversation.tokens())
    else:
        stream = list(conversation)
    t = len(stream)
    if t < 3:
        raise ValueError(f"tertiles need at least 3 tokens, got {t}")
    cuts = (0, t // 3, (2 * t) // 3, t)
    thirds = []
    for i in range(3):
        segment = stream[cuts[i] : cuts[i + 1]]
        pairs = _stream_pairs(segment)
        if unit == WORD_TYPES:
            positions: dict[str, list[int]] = {}
            for j, (form, _) in enumerate(pairs, 1):
                positions.setdefault(form, []).append(j)
            gaps = [
                g
                for plist in positions.values()
                for g in np.diff(np.asarray(plist, dtype=np.int64))
            ]
        else:
            gaps = list(np.diff(np.asarray(_positions(pairs, unit.upper(), "total"), dtype=np.int64)))
        thirds.append(np.asarray(sorted(gaps), dtype=np.int64))
    return thirds[0], thirds[1], thirds[2]
