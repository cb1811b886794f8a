"""Vocabulary growth, rank-frequency tables, and regime-restricted log-log
least squares for Heaps and Zipf exponents."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import Corpus
from .textprep import MACRO_CLASSES

UNITS = ("all",) + tuple(m.lower() for m in MACRO_CLASSES)


class RegimeError(ValueError):
    """Too few points survive the regime restriction to fit."""

    def __init__(self, n_points: int, regime: "RegimeBounds"):
        super().__init__(
            f"only {n_points} points inside regime "
            f"({regime.lo}, {regime.hi}] on {regime.axis}; need >= 3"
        )
        self.n_points = n_points


class EmptyGroupError(ValueError):
    """A split produced a group with no conversations."""


@dataclass(frozen=True)
class RegimeBounds:
    """Log10 fit window: lo exclusive, hi inclusive, on the x or y axis."""

    lo: float
    hi: float
    axis: str = "x"

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"regime lo {self.lo} must be < hi {self.hi}")
        if self.axis not in ("x", "y"):
            raise ValueError(f"regime axis must be 'x' or 'y', got {self.axis!r}")

    def on_axis(self, axis: str) -> "RegimeBounds":
        return RegimeBounds(self.lo, self.hi, axis)


@dataclass(frozen=True)
class FitResult:
    exponent: float
    intercept: float
    ses: float
    r2: float
    n_points: int
    regime: RegimeBounds


@dataclass(frozen=True)
class GrowthCurve:
    """Unique types N(t) against total tokens t = 1..T."""

    n_total: np.ndarray
    n_unique: np.ndarray

    def points(self) -> np.ndarray:
        return np.column_stack([self.n_total, self.n_unique])


@dataclass(frozen=True)
class RankTable:
    """Types by descending count; ranks 1..K, deterministic tie order."""

    forms: tuple[str, ...]
    counts: np.ndarray

    def entries(self) -> list[tuple[int, str, int]]:
        return [
            (rank, form, int(count))
            for rank, (form, count) in enumerate(zip(self.forms, self.counts), start=1)
        ]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def points(self) -> np.ndarray:
        ranks = np.arange(1, len(self.forms) + 1, dtype=float)
        return np.column_stack([ranks, self.counts.astype(float)])


def growth_curve(forms: Sequence[str]) -> GrowthCurve:
    """N(t) = number of distinct forms among the first t tokens."""
    n = len(forms)
    if n == 0:
        raise ValueError("growth_curve needs a nonempty token stream")
    arr = np.asarray(forms)
    _, first_idx = np.unique(arr, return_index=True)
    is_new = np.zeros(n, dtype=np.int64)
    is_new[first_idx] = 1
    return GrowthCurve(
        n_total=np.arange(1, n + 1, dtype=np.int64),
        n_unique=np.cumsum(is_new),
    )


def averaged_growth_curve(corpus: Corpus, unit: str = "all") -> GrowthCurve:
    """Window-average of per-conversation growth curves.

    At each position t the mean runs over exactly the conversations still
    going at t; conversations that have ended contribute nothing. For a
    macro-class unit the stream is restricted to that class and positions
    re-indexed within it.
    """
    if unit != "all":
        corpus.require_tagged(f"averaged growth curve for unit {unit!r}")
    streams = [conv.forms(unit.upper() if unit != "all" else "all") for conv in corpus]
    streams = [s for s in streams if s]
    if not streams:
        raise ValueError("no nonempty token streams for averaged growth curve")
    t_max = max(len(s) for s in streams)
    sums = np.zeros(t_max)
    counts = np.zeros(t_max, dtype=np.int64)
    for stream in streams:
        curve = growth_curve(stream)
        sums[: len(stream)] += curve.n_unique
        counts[: len(stream)] += 1
    return GrowthCurve(
        n_total=np.arange(1, t_max + 1, dtype=np.int64),
        n_unique=sums / counts,
    )


def rank_frequency(source: Corpus | Sequence[str], unit: str = "all") -> RankTable:
    """Rank table of type counts; ties broken by first occurrence, then form."""
    if isinstance(source, Corpus):
        forms = source.forms(unit.upper() if unit != "all" else "all")
    else:
        forms = list(source)
    if not forms:
        raise ValueError("rank_frequency needs a nonempty token stream")
    counts = Counter(forms)
    first_pos: dict[str, int] = {}
    for pos, form in enumerate(forms):
        if form not in first_pos:
            first_pos[form] = pos
    ordered = sorted(counts, key=lambda f: (-counts[f], first_pos[f], f))
    return RankTable(
        forms=tuple(ordered),
        counts=np.array([counts[f] for f in ordered], dtype=np.int64),
    )


def fit_loglog(points: np.ndarray | Sequence, regime: RegimeBounds) -> FitResult:
    """Ordinary least squares on log10-transformed points inside the regime.

    The regime filters on log10 of its own axis (x for rank tables, y for
    growth curves). Slope standard error is the textbook OLS estimate.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be an (n, 2) array of (x, y)")
    if np.any(pts <= 0):
        raise ValueError("log-log fit needs strictly positive x and y")
    axis_vals = pts[:, 0] if regime.axis == "x" else pts[:, 1]
    log_axis = np.log10(axis_vals)
    mask = (log_axis > regime.lo) & (log_axis <= regime.hi)
    n = int(mask.sum())
    if n < 3:
        raise RegimeError(n, regime)
    lx = np.log10(pts[mask, 0])
    ly = np.log10(pts[mask, 1])
    mx, my = lx.mean(), ly.mean()
    dx, dy = lx - mx, ly - my
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValueError("regime points are vertically stacked; cannot fit")
    slope = float(dx @ dy) / sxx
    intercept = my - slope * mx
    resid = ly - (intercept + slope * lx)
    rss = float(resid @ resid)
    tss = float(dy @ dy)
    ses = math.sqrt(rss / (n - 2) / sxx)
    r2 = 1.0 if tss == 0.0 else 1.0 - rss / tss
    return FitResult(
        exponent=slope,
        intercept=intercept,
        ses=ses,
        r2=r2,
        n_points=n,
        regime=regime,
    )


# Fit windows chosen visually in the source analysis; frozen as data, never
# re-derived. Keyed by macro-class row, corpus kind column.
CORPUS_LEVEL_REGIME = (2.0, 3.4)

_CLASS_REGIMES = {
    # (candor, movies_individual, movies_grouped)
    "noun": {"start": (1.4, 1.0, 1.4), "end": (3.2, 3.2, 3.2)},
    "verb": {"start": (1.5, 1.3, 1.5), "end": (3.0, 3.0, 3.2)},
    "other": {"start": (1.5, 1.45, 1.45), "end": (3.0, 2.6, 3.2)},
    "func": {"start": (1.25, 1.15, 1.25), "end": (1.9, 1.9, 1.9)},
    "intj": {"start": (1.2, 0.9, 1.4), "end": (2.1, 2.2, 2.4)},
}
_KIND_COLUMNS = ("candor", "movies_individual", "movies_grouped")


@dataclass(frozen=True)
class RegimeMatrix:
    """Fit windows keyed by (unit, corpus kind), with a corpus-level default."""

    corpus_level: tuple[float, float] = CORPUS_LEVEL_REGIME
    cells: dict = None  # {(unit, kind): (lo, hi)}

    def __post_init__(self):
        if self.cells is None:
            object.__setattr__(self, "cells", default_regime_cells())
        lo, hi = self.corpus_level
        if not lo < hi:
            raise ValueError(f"corpus-level regime start {lo} must be < end {hi}")
        for key, (lo, hi) in self.cells.items():
            if not lo < hi:
                raise ValueError(f"regime cell {key}: start {lo} must be < end {hi}")

    def lookup(self, unit: str, kind: str, axis: str) -> RegimeBounds:
        bounds = self.cells.get((unit, kind))
        if bounds is None:
            bounds = self.corpus_level
        return RegimeBounds(bounds[0], bounds[1], axis)


def default_regime_cells() -> dict:
    cells = {}
    for unit, rows in _CLASS_REGIMES.items():
        for kind, lo, hi in zip(_KIND_COLUMNS, rows["start"], rows["end"]):
            cells[(unit, kind)] = (lo, hi)
    return cells


DEFAULT_REGIMES = RegimeMatrix()


def heaps_fit(
    corpus: Corpus, unit: str = "all", regimes: RegimeMatrix = DEFAULT_REGIMES
) -> FitResult:
    """Heaps exponent of the averaged growth curve; regime on the y axis."""
    curve = averaged_growth_curve(corpus, unit)
    regime = regimes.lookup(unit, corpus.kind, axis="y")
    return fit_loglog(curve.points(), regime)


def zipf_fit(
    corpus: Corpus, unit: str = "all", regimes: RegimeMatrix = DEFAULT_REGIMES
) -> FitResult:
    """Zipf slope of the corpus-aggregated rank table; regime on the x axis."""
    if unit != "all":
        corpus.require_tagged(f"zipf fit for unit {unit!r}")
    table = rank_frequency(corpus, unit)
    regime = regimes.lookup(unit, corpus.kind, axis="x")
    return fit_loglog(table.points(), regime)


@dataclass(frozen=True)
class PerConversationFits:
    ids: tuple[str, ...]
    fits: tuple[FitResult, ...]
    n_skipped: int

    def exponents(self) -> np.ndarray:
        return np.array([f.exponent for f in self.fits])


def per_conversation_exponents(
    corpus: Corpus, unit: str = "all", regimes: RegimeMatrix = DEFAULT_REGIMES
) -> PerConversationFits:
    """One Heaps fit per conversation; too-short conversations are skipped."""
    regime = regimes.lookup(unit, corpus.kind, axis="y")
    ids, fits, skipped = [], [], 0
    for conv in corpus:
        stream = conv.forms(unit.upper() if unit != "all" else "all")
        if not stream:
            skipped += 1
            continue
        try:
            fit = fit_loglog(growth_curve(stream).points(), regime)
        except RegimeError:
            skipped += 1
            continue
        ids.append(conv.id)
        fits.append(fit)
    return PerConversationFits(ids=tuple(ids), fits=tuple(fits), n_skipped=skipped)


@dataclass(frozen=True)
class InterjectionSplit:
    low: FitResult
    high: FitResult
    proportions: tuple[float, float]
    low_ids: tuple[str, ...]
    high_ids: tuple[str, ...]


def interjection_split_fit(
    corpus: Corpus, regimes: RegimeMatrix = DEFAULT_REGIMES
) -> InterjectionSplit:
    """Heaps fits for low/high interjection-share halves (median cut).

    Conversations at or below the within-corpus median share go to the low
    group. A corpus where every share ties the median therefore leaves the
    high group empty, which raises :class:`EmptyGroupError`.
    """
    corpus.require_tagged("interjection split")
    convs = [c for c in corpus if c.n_tokens > 0]
    if not convs:
        raise ValueError("no nonempty conversations to split")
    shares = np.array(
        [sum(1 for t in c.tokens() if t.macro == "INTJ") / c.n_tokens for c in convs]
    )
    median = float(np.median(shares))
    low = [c for c, s in zip(convs, shares) if s <= median]
    high = [c for c, s in zip(convs, shares) if s > median]
    if not high:
        raise EmptyGroupError(
            "high interjection group is empty (every share ties the median)"
        )
    fits = []
    for name, group in (("low", low), ("high", high)):
        sub = Corpus(
            kind=corpus.kind,
            conversations=tuple(group),
            provenance=f"{corpus.provenance}; interjection-split:{name}",
        )
        fits.append(heaps_fit(sub, "all", regimes))
    n = len(convs)
    return InterjectionSplit(
        low=fits[0],
        high=fits[1],
        proportions=(len(low) / n, len(high) / n),
        low_ids=tuple(c.id for c in low),
        high_ids=tuple(c.id for c in high),
    )


def ses_flag(ses: float) -> str:
    """Slope-standard-error annotation: '' below .01, '^' to .05, '*' above."""
    if not math.isfinite(ses):
        raise ValueError(f"ses must be finite, got {ses}")
    if ses < 0.01:
        return ""
    if ses < 0.05:
        return "^"
    return "*"
