"""Canonical in-memory model: tokens, utterances, conversations, corpora."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator

from .textprep import recode_upos, token_form

CORPUS_KINDS = ("candor", "movies_individual", "movies_grouped", "generic")

# Raw (pre-tag) corpora carry this tag on every token; class-level analyses
# refuse such corpora.
PLACEHOLDER_UPOS = "X"

NULL_FLAG_KEY = "has_null"


class UntaggedCorpusError(ValueError):
    """Class-level analysis requested on a placeholder-tagged corpus."""


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    form: str
    upos: str
    macro: str

    @classmethod
    def make(cls, surface: str, upos: str, case_fold: bool = True) -> "Token":
        """Build a token with derived form and macro-class."""
        return cls(
            surface=surface,
            form=token_form(surface, case_fold),
            upos=upos,
            macro=recode_upos(upos),
        )

    @property
    def is_word(self) -> bool:
        """True unless the token is pure punctuation/symbols."""
        return any(c.isalnum() for c in self.form)


@dataclass(frozen=True, slots=True)
class Utterance:
    speaker_id: str
    tokens: tuple[Token, ...]
    start_s: float | None = None
    stop_s: float | None = None

    def __post_init__(self):
        if (
            self.start_s is not None
            and self.stop_s is not None
            and self.stop_s < self.start_s
        ):
            raise ValueError(
                f"utterance stop_s {self.stop_s} precedes start_s {self.start_s}"
            )


@dataclass(frozen=True)
class Conversation:
    id: str
    kind: str
    utterances: tuple[Utterance, ...]
    meta: dict[str, str | list] = field(default_factory=dict)

    def tokens(self) -> Iterator[Token]:
        for utt in self.utterances:
            yield from utt.tokens

    @property
    def n_tokens(self) -> int:
        return sum(len(u.tokens) for u in self.utterances)

    @property
    def n_words(self) -> int:
        return sum(1 for t in self.tokens() if t.is_word)

    @property
    def has_null(self) -> bool:
        return str(self.meta.get(NULL_FLAG_KEY, "")).lower() == "true"

    def forms(self, unit: str = "all") -> list[str]:
        """Token forms in analysis order, optionally restricted to a macro-class."""
        if unit == "all":
            return [t.form for t in self.tokens()]
        return [t.form for t in self.tokens() if t.macro == unit]

    def genres(self) -> list[str]:
        raw = self.meta.get("genres", [])
        if isinstance(raw, str):
            raw = [raw]
        return [str(g) for g in raw]


@dataclass(frozen=True)
class Corpus:
    kind: str
    conversations: tuple[Conversation, ...]
    provenance: str = ""

    def __post_init__(self):
        if self.kind not in CORPUS_KINDS:
            raise ValueError(f"unknown corpus kind {self.kind!r}")
        for conv in self.conversations:
            if conv.kind != self.kind:
                raise ValueError(
                    f"conversation {conv.id!r} kind {conv.kind!r} != corpus kind {self.kind!r}"
                )

    def __len__(self) -> int:
        return len(self.conversations)

    def __iter__(self) -> Iterator[Conversation]:
        return iter(self.conversations)

    @property
    def n_utterances(self) -> int:
        return sum(len(c.utterances) for c in self.conversations)

    @property
    def n_tokens(self) -> int:
        return sum(c.n_tokens for c in self.conversations)

    @property
    def is_tagged(self) -> bool:
        """False when every token carries the raw-ingest placeholder tag."""
        for conv in self.conversations:
            for tok in conv.tokens():
                if tok.upos != PLACEHOLDER_UPOS:
                    return True
        return False

    def forms(self, unit: str = "all") -> list[str]:
        """Concatenated token stream over conversations in corpus order."""
        out: list[str] = []
        for conv in self.conversations:
            out.extend(conv.forms(unit))
        return out

    def require_tagged(self, what: str) -> None:
        if not self.is_tagged:
            raise UntaggedCorpusError(
                f"{what} needs a POS-tagged corpus; this one carries only "
                f"placeholder {PLACEHOLDER_UPOS!r} tags"
            )

    def with_provenance(self, note: str) -> "Corpus":
        joined = f"{self.provenance}; {note}" if self.provenance else note
        return replace(self, provenance=joined)
