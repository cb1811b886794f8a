"""Synthetic token streams with known exponents and gap statistics, used as
estimator oracles."""

from __future__ import annotations

import numpy as np

from .corpus import Conversation, Corpus, Token, Utterance


def _forms(ids: np.ndarray, prefix: str = "t") -> list[str]:
    width = max(6, len(str(int(ids.max()))))
    return [f"{prefix}{i:0{width}d}" for i in ids]


def zipf_sample(alpha: float, vocab: int, n_tokens: int, seed: int) -> list[str]:
    """I.i.d. draws from p(r) proportional to r^-alpha over ranks 1..vocab.

    alpha=0 degenerates to the uniform distribution. Type names are
    zero-padded by rank, so lexicographic order equals rank order.
    """
    if vocab < 2:
        raise ValueError(f"vocab must be >= 2, got {vocab}")
    if n_tokens < 1:
        raise ValueError(f"n_tokens must be >= 1, got {n_tokens}")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    ranks = np.arange(1, vocab + 1, dtype=float)
    weights = ranks ** -alpha
    weights /= weights.sum()
    rng = np.random.default_rng(seed)
    ids = rng.choice(vocab, size=n_tokens, p=weights) + 1
    return _forms(ids)


def heaps_process(beta: float, n_tokens: int, seed: int) -> list[str]:
    """Stream whose expected vocabulary grows as t^beta.

    At step t a brand-new type appears with probability min(1, beta *
    t^(beta-1)); otherwise a uniformly random previously seen type repeats.
    The first token is always new.
    """
    if not 0 < beta <= 1:
        raise ValueError(f"beta must be in (0, 1], got {beta}")
    if n_tokens < 1:
        raise ValueError(f"n_tokens must be >= 1, got {n_tokens}")
    rng = np.random.default_rng(seed)
    t = np.arange(1, n_tokens + 1, dtype=float)
    p_new = np.minimum(1.0, beta * t ** (beta - 1.0))
    is_new = rng.random(n_tokens) < p_new
    is_new[0] = True
    n_seen = np.cumsum(is_new)
    # repeats draw uniformly among the types seen before this step
    repeat_pick = np.floor(rng.random(n_tokens) * np.maximum(1, n_seen - is_new)).astype(
        np.int64
    )
    ids = np.where(is_new, n_seen - 1, repeat_pick) + 1
    return _forms(ids)


def periodic_gaps(gap: int, n_gaps: int) -> np.ndarray:
    if gap < 1 or n_gaps < 0:
        raise ValueError("periodic_gaps needs gap >= 1 and n_gaps >= 0")
    return np.full(n_gaps, gap, dtype=np.int64)


def iid_geometric_gaps(p: float, n_gaps: int, seed: int) -> np.ndarray:
    """I.i.d. geometric gaps (support 1, 2, ...) with mean 1/p."""
    if not 0 < p <= 1:
        raise ValueError(f"p must be in (0, 1], got {p}")
    rng = np.random.default_rng(seed)
    return rng.geometric(p, size=n_gaps).astype(np.int64)


def stream_from_gaps(gaps, marker: str = "e") -> list[str]:
    """Token stream where the marker's interarrival gaps equal ``gaps``.

    Positions between marker occurrences are filled with throwaway unique
    types, so the marker's gap series is exactly the input.
    """
    gaps = np.asarray(gaps, dtype=np.int64)
    if len(gaps) and gaps.min() < 1:
        raise ValueError("gaps must all be >= 1")
    length = 1 + int(gaps.sum())
    stream = [""] * length
    pos = 0
    stream[pos] = marker
    for g in gaps:
        pos += int(g)
        stream[pos] = marker
    filler = 0
    for i, s in enumerate(stream):
        if not s:
            stream[i] = f"f{filler:09d}"
            filler += 1
    return stream


def to_corpus(
    forms: list[str],
    kind: str = "generic",
    conversation_id: str = "synth-0",
    provenance: str = "synthetic",
) -> Corpus:
    """Wrap a synthetic stream as a one-conversation placeholder-tagged corpus."""
    tokens = tuple(Token.make(f, "X") for f in forms)
    conv = Conversation(
        id=conversation_id,
        kind=kind,
        utterances=(Utterance(speaker_id="synth", tokens=tokens),),
        meta={},
    )
    return Corpus(kind=kind, conversations=(conv,), provenance=provenance)
