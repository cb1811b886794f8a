import json

import pytest

from convoscale.corpus import PLACEHOLDER_UPOS
from convoscale.ingest import (
    SchemaError,
    filter_conversations,
    group_by_movie,
    load_movie_dialogs,
    load_plain_text,
    load_tagged_jsonl,
    write_tagged_jsonl,
)
from convoscale.textprep import UnknownUposError

from conftest import corpus_of, make_conversation

ONE_LINE = {
    "id": "c1",
    "kind": "candor",
    "meta": {"topic": "pets"},
    "utterances": [
        {
            "speaker": "a",
            "start_s": 0.0,
            "stop_s": 1.5,
            "tokens": [{"s": "Oh", "p": "INTJ"}, {"s": ",", "p": "PUNCT"}],
        },
        {
            "speaker": "b",
            "start_s": None,
            "stop_s": None,
            "tokens": [
                {"s": "I", "p": "PRON"},
                {"s": "agree", "p": "VERB"},
                {"s": ".", "p": "PUNCT"},
            ],
        },
    ],
}


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return str(path)


def test_load_tagged_identity(tmp_path):
    path = write_jsonl(tmp_path / "one.jsonl", [ONE_LINE])
    corpus = load_tagged_jsonl(path)
    assert len(corpus) == 1
    assert corpus.n_utterances == 2
    assert corpus.n_tokens == 5
    assert corpus.kind == "candor"
    conv = corpus.conversations[0]
    assert conv.meta == {"topic": "pets"}
    assert conv.utterances[0].tokens[0].form == "oh"


def test_load_missing_tokens_field_names_line(tmp_path):
    record = {"id": "c1", "kind": "candor", "utterances": [{"speaker": "a"}]}
    path = write_jsonl(tmp_path / "bad.jsonl", [record])
    with pytest.raises(SchemaError) as err:
        load_tagged_jsonl(path)
    assert err.value.line_no == 1


def test_load_unknown_upos_names_tag(tmp_path):
    record = json.loads(json.dumps(ONE_LINE))
    record["utterances"][0]["tokens"][0]["p"] = "VBZ"
    path = write_jsonl(tmp_path / "bad.jsonl", [record])
    with pytest.raises(UnknownUposError) as err:
        load_tagged_jsonl(path)
    assert err.value.tag == "VBZ"


def test_load_invalid_json_names_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps(ONE_LINE) + "\n{not json\n", encoding="utf-8")
    with pytest.raises(SchemaError) as err:
        load_tagged_jsonl(str(path))
    assert err.value.line_no == 2


def test_load_recomputes_macro_ignoring_input(tmp_path):
    record = json.loads(json.dumps(ONE_LINE))
    record["utterances"][0]["tokens"][0]["macro"] = "VERB"  # lies; must be ignored
    path = write_jsonl(tmp_path / "m.jsonl", [record])
    corpus = load_tagged_jsonl(path)
    assert corpus.conversations[0].utterances[0].tokens[0].macro == "INTJ"


def test_load_rejects_bad_timings(tmp_path):
    record = json.loads(json.dumps(ONE_LINE))
    record["utterances"][0]["start_s"] = 5.0
    record["utterances"][0]["stop_s"] = 1.0
    path = write_jsonl(tmp_path / "t.jsonl", [record])
    with pytest.raises(SchemaError):
        load_tagged_jsonl(path)


def test_roundtrip_is_byte_stable(tmp_path, small_tagged_corpus):
    first = tmp_path / "first.jsonl"
    second = tmp_path / "second.jsonl"
    write_tagged_jsonl(small_tagged_corpus, str(first))
    write_tagged_jsonl(load_tagged_jsonl(str(first)), str(second))
    assert first.read_bytes() == second.read_bytes()


def test_undecodable_bytes_counted_in_provenance(tmp_path):
    payload = json.dumps(ONE_LINE).encode("utf-8")
    broken = payload.replace(b'"pets"', b'"p\xe9ts"')  # latin-1 e-acute
    path = tmp_path / "latin.jsonl"
    path.write_bytes(broken + b"\n")
    corpus = load_tagged_jsonl(str(path))
    assert "replaced 1 undecodable" in corpus.provenance


def test_movie_dialogs_reconstruction(movie_dialogs_dir):
    corpus = load_movie_dialogs(str(movie_dialogs_dir))
    assert corpus.kind == "movies_individual"
    assert [c.id for c in corpus] == ["m0-0", "m0-1", "m1-0"]
    assert [len(c.utterances) for c in corpus] == [2, 3, 2]
    assert not corpus.is_tagged
    first = corpus.conversations[0]
    assert first.utterances[0].speaker_id == "u0"
    assert [t.surface for t in first.utterances[0].tokens] == ["They", "do", "not!"]
    assert all(t.upos == PLACEHOLDER_UPOS for t in first.tokens())
    assert first.meta["genres"] == ["comedy", "romance"]


def test_movie_dialogs_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError) as err:
        load_movie_dialogs(str(tmp_path))
    assert "movie_titles_metadata.txt" in str(err.value)


def test_movie_dialogs_missing_line_flags_null(movie_dialogs_with_missing_line):
    corpus = load_movie_dialogs(str(movie_dialogs_with_missing_line))
    flagged = [c for c in corpus if c.has_null]
    assert [c.id for c in flagged] == ["m0-2"]
    # the placeholder keeps utterance order but carries no tokens
    assert len(flagged[0].utterances) == 2
    assert flagged[0].utterances[1].tokens == ()


def test_group_by_movie_counts_and_conservation(movie_dialogs_dir):
    corpus = load_movie_dialogs(str(movie_dialogs_dir))
    grouped = group_by_movie(corpus)
    assert grouped.kind == "movies_grouped"
    assert [c.id for c in grouped] == ["m0", "m1"]
    assert [len(c.utterances) for c in grouped] == [5, 2]
    assert grouped.n_tokens == corpus.n_tokens
    assert grouped.n_utterances == corpus.n_utterances
    m0_tokens = sum(c.n_tokens for c in corpus if c.meta["movie_id"] == "m0")
    assert grouped.conversations[0].n_tokens == m0_tokens


def test_group_requires_movie_id():
    conv = make_conversation("c1", [[("hi", "INTJ")]], kind="movies_individual")
    with pytest.raises(ValueError):
        group_by_movie(corpus_of(conv))


def test_filter_min_utterances():
    nine = make_conversation("c9", [[("w", "NOUN")]] * 9)
    ten = make_conversation("c10", [[("w", "NOUN")]] * 10)
    corpus = corpus_of(nine, ten)
    kept = filter_conversations(corpus, min_utterances=10)
    assert [c.id for c in kept] == ["c10"]


def test_filter_identity_when_disabled(small_tagged_corpus):
    out = filter_conversations(small_tagged_corpus, 0, set(), drop_null=False)
    assert out.conversations == small_tagged_corpus.conversations


def test_filter_genres_case_insensitive(movie_dialogs_dir):
    corpus = load_movie_dialogs(str(movie_dialogs_dir))
    kept = filter_conversations(corpus, excluded_genres={"Documentary"})
    assert {c.meta["movie_id"] for c in kept} == {"m0"}


def test_filter_drop_null(movie_dialogs_with_missing_line):
    corpus = load_movie_dialogs(str(movie_dialogs_with_missing_line))
    kept = filter_conversations(corpus, drop_null=True)
    assert all(not c.has_null for c in kept)
    assert len(kept) == len(corpus) - 1


def test_filter_idempotent(movie_dialogs_with_missing_line):
    corpus = load_movie_dialogs(str(movie_dialogs_with_missing_line))
    once = filter_conversations(
        corpus, min_utterances=2, excluded_genres={"documentary"}, drop_null=True
    )
    twice = filter_conversations(
        once, min_utterances=2, excluded_genres={"documentary"}, drop_null=True
    )
    assert twice.conversations == once.conversations


def test_filter_records_settings_in_provenance(small_tagged_corpus):
    out = filter_conversations(small_tagged_corpus, 3, {"b", "a"}, True)
    assert "min_utterances=3" in out.provenance
    assert "['a', 'b']" in out.provenance
    assert "drop_null=True" in out.provenance


def test_load_plain_text(tmp_path):
    path = tmp_path / "book.txt"
    path.write_text("Call me Ishmael.\n\nSome years ago now.\n", encoding="utf-8")
    corpus = load_plain_text(str(path))
    assert corpus.kind == "generic"
    assert len(corpus) == 1
    assert len(corpus.conversations[0].utterances) == 2
    assert not corpus.is_tagged
