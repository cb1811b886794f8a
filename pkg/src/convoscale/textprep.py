"""Text cleaning profiles, punctuation-keeping tokenization, and UPOS recoding."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})

MACRO_CLASSES = ("NOUN", "VERB", "OTHER", "FUNC", "INTJ")

# Five-way collapse of the 17 UPOS tags. Open classes keep their identity
# (adverbs fold into verbs, pronouns and proper nouns into nouns), the three
# connective tags become function words, interjections stay, and everything
# else lands in "other".
_RECODE = {
    "NOUN": "NOUN",
    "PROPN": "NOUN",
    "PRON": "NOUN",
    "VERB": "VERB",
    "ADV": "VERB",
    "ADP": "FUNC",
    "CCONJ": "FUNC",
    "SCONJ": "FUNC",
    "INTJ": "INTJ",
    "ADJ": "OTHER",
    "AUX": "OTHER",
    "DET": "OTHER",
    "NUM": "OTHER",
    "PART": "OTHER",
    "PUNCT": "OTHER",
    "SYM": "OTHER",
    "X": "OTHER",
}


class UnknownUposError(ValueError):
    """Raised for a tag outside the 17-tag universal set."""

    def __init__(self, tag: str, context: str = ""):
        where = f" ({context})" if context else ""
        super().__init__(f"unknown UPOS tag {tag!r}{where}")
        self.tag = tag


def recode_upos(upos: str) -> str:
    """Map a UPOS tag to its macro-class; total over the 17-tag set."""
    try:
        return _RECODE[upos]
    except KeyError:
        raise UnknownUposError(upos) from None


@dataclass(frozen=True)
class CleanProfile:
    """Named, ordered list of idempotent (pattern -> replacement) rewrites."""

    name: str
    rules: tuple[tuple[str, str], ...]

    def apply(self, text: str) -> str:
        for pattern, replacement in self.rules:
            text = re.sub(pattern, replacement, text)
        return text


_WHITESPACE_RULES = (
    (r"\s+", " "),
    (r"^ | $", ""),
)

# Word-boundary expansions of the five shortened forms, with a capitalized
# variant so the first letter's case survives.
_EXPANSIONS = (
    ("sorta", "sort of"),
    ("dunno", "do not know"),
    ("gonna", "going to"),
    ("wanna", "want to"),
    ("gotta", "got to"),
)

_COMMON_RULES = tuple(
    rule
    for short, long in _EXPANSIONS
    for rule in (
        (rf"\b{short}\b", long),
        (rf"\b{short.capitalize()}\b", long.capitalize()),
    )
)

BUILTIN_PROFILES = {
    "candor": CleanProfile(
        name="candor",
        # NaturalTurn marks parallel speech with angle-quote glyphs.
        rules=((r"[≪≫]", " "),) + _WHITESPACE_RULES,
    ),
    "movies": CleanProfile(
        name="movies",
        rules=(
            # mojibake from scripts that went through a latin-1 round trip
            ("â€™", "'"),
            ("â€œ", '"'),
            ("â€", '"'),
            # curly quotes, long dashes, ellipsis to ASCII
            ("[‘’‚`]", "'"),
            ('[“”„]', '"'),
            ("[–—―]", "-"),
            ("…", "..."),
            (" ", " "),
        )
        + _WHITESPACE_RULES,
    ),
    "common": CleanProfile(name="common", rules=_COMMON_RULES),
}


def get_profile(name: str) -> CleanProfile:
    try:
        return BUILTIN_PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown clean profile {name!r}") from None


def clean_text(
    text: str, profile: CleanProfile | str, common: CleanProfile | None = None
) -> str:
    """Apply a cleaning profile; the common expansions always run last."""
    if isinstance(profile, str):
        profile = get_profile(profile)
    if common is None:
        common = BUILTIN_PROFILES["common"]
    text = profile.apply(text)
    if profile.name != "common":
        text = common.apply(text)
    return text


# Words (with internal apostrophes kept, so contractions stay whole) or a
# single non-space, non-word character: punctuation comes out standalone.
_TOKEN_RE = re.compile(r"\w+(?:['’]\w+)*|[^\w\s]")


def token_form(surface: str, case_fold: bool = True) -> str:
    """Type key of a surface: NFC-normalized and (by default) case-folded."""
    form = unicodedata.normalize("NFC", surface)
    return form.casefold() if case_fold else form


def tokenize(text: str, case_fold: bool = True) -> list[tuple[str, str]]:
    """Split cleaned text into (surface, form) pairs, punctuation kept in.

    Input is NFC-normalized first so combining marks never split words.
    Contractions survive as single tokens ("I'm"); every punctuation mark is
    its own token; no token is empty. Joining the surfaces with single spaces
    and re-tokenizing reproduces the sequence.
    """
    text = unicodedata.normalize("NFC", text)
    return [
        (m.group(), token_form(m.group(), case_fold))
        for m in _TOKEN_RE.finditer(text)
    ]
