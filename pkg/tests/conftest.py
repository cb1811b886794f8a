import shutil
from pathlib import Path

import pytest

from convoscale.corpus import Conversation, Corpus, Token, Utterance

DATA_DIR = Path(__file__).parent / "data"


def make_conversation(conv_id, specs, kind="candor", meta=None, speaker="s1"):
    """Build a conversation from utterance specs: lists of (surface, upos)."""
    utterances = tuple(
        Utterance(
            speaker_id=speaker,
            tokens=tuple(Token.make(s, p) for s, p in spec),
        )
        for spec in specs
    )
    return Conversation(id=conv_id, kind=kind, utterances=utterances, meta=meta or {})


def corpus_of(*conversations, kind=None, provenance="test"):
    kind = kind or conversations[0].kind
    return Corpus(kind=kind, conversations=tuple(conversations), provenance=provenance)


def tagged_conversation_from_forms(conv_id, forms, upos="NOUN", kind="candor"):
    return make_conversation(conv_id, [[(f, upos) for f in forms]], kind=kind)


@pytest.fixture
def movie_dialogs_dir():
    return DATA_DIR / "moviedialogs"


@pytest.fixture
def movie_dialogs_with_missing_line(tmp_path, movie_dialogs_dir):
    """Fixture copy plus one conversation referencing a line id that is absent."""
    target = tmp_path / "moviedialogs"
    shutil.copytree(movie_dialogs_dir, target)
    with open(target / "movie_conversations.txt", "a", encoding="utf-8") as fh:
        fh.write("u0 +++$+++ u1 +++$+++ m0 +++$+++ ['L5', 'L999']\n")
    return target


@pytest.fixture
def small_tagged_corpus():
    """Two short, fully tagged conversations with all five macro-classes."""
    conv1 = make_conversation(
        "c1",
        [
            [("Oh", "INTJ"), (",", "PUNCT"), ("yeah", "INTJ"), ("!", "PUNCT")],
            [("I", "PRON"), ("went", "VERB"), ("home", "NOUN"), (".", "PUNCT")],
            [("And", "CCONJ"), ("then", "ADV"), ("home", "NOUN"), ("again", "ADV")],
        ],
    )
    conv2 = make_conversation(
        "c2",
        [
            [("The", "DET"), ("lion", "NOUN"), ("sleeps", "VERB"), (".", "PUNCT")],
            [("yeah", "INTJ"), ("lion", "NOUN"), ("lion", "NOUN"), ("roars", "VERB")],
        ],
    )
    return corpus_of(conv1, conv2)
