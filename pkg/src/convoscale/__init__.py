"""Scaling-law and temporal statistics toolkit for conversational corpora."""

from .corpus import Conversation, Corpus, Token, Utterance, UntaggedCorpusError
from .ingest import (
    filter_conversations,
    group_by_movie,
    load_movie_dialogs,
    load_plain_text,
    load_tagged_jsonl,
    write_tagged_jsonl,
)
from .scaling import (
    FitResult,
    GrowthCurve,
    RankTable,
    RegimeBounds,
    RegimeMatrix,
    averaged_growth_curve,
    fit_loglog,
    growth_curve,
    heaps_fit,
    interjection_split_fit,
    per_conversation_exponents,
    rank_frequency,
    ses_flag,
    zipf_fit,
)
from .temporal import (
    BurstinessMemory,
    InterarrivalSeries,
    burstiness,
    corpus_bm,
    interarrival_series,
    memory,
    tertile_interarrivals,
)
from .textprep import CleanProfile, clean_text, recode_upos, tokenize

__version__ = "0.1.0"

__all__ = [
    "BurstinessMemory",
    "CleanProfile",
    "Conversation",
    "Corpus",
    "FitResult",
    "GrowthCurve",
    "InterarrivalSeries",
    "RankTable",
    "RegimeBounds",
    "RegimeMatrix",
    "Token",
    "UntaggedCorpusError",
    "Utterance",
    "averaged_growth_curve",
    "burstiness",
    "clean_text",
    "corpus_bm",
    "filter_conversations",
    "fit_loglog",
    "group_by_movie",
    "growth_curve",
    "heaps_fit",
    "interarrival_series",
    "interjection_split_fit",
    "load_movie_dialogs",
    "load_plain_text",
    "load_tagged_jsonl",
    "memory",
    "per_conversation_exponents",
    "rank_frequency",
    "recode_upos",
    "ses_flag",
    "tertile_interarrivals",
    "tokenize",
    "write_tagged_jsonl",
    "zipf_fit",
]
