import json

import pytest

from sensegraph.corpus import (
    DOCS_PER_SUBPLOT, KEY_DOCS_PER_SUBPLOT, SUBPLOT_SHAPE, generate_corpus,
    load_corpus, write_corpus,
)


def test_corpus_shape():
    documents, manifest = generate_corpus(seed=0)
    assert len(documents) == 24
    names = [name for name, _ in SUBPLOT_SHAPE]
    assert names == ["alpha", "beta", "gamma"]
    for name, target in SUBPLOT_SHAPE:
        docs = [d for d in documents.values() if d.subplot == name]
        assert len(docs) == DOCS_PER_SUBPLOT == 8
        # independent word-count oracle: str.split on each body
        total = sum(len(d.body.split()) for d in docs)
        assert total == target  # exact by construction, well within 2%
        entries = next(s for s in manifest.subplots if s["name"] == name)
        roles = [e["role"] for e in entries["documents"]]
        assert roles.count("key") == KEY_DOCS_PER_SUBPLOT == 6
        assert roles.count("background") == 2
        assert manifest.total_word_counts[name] == target


def test_corpus_total_word_targets():
    _, manifest = generate_corpus(seed=3)
    assert manifest.total_word_counts == {"alpha": 1207, "beta": 1229,
                                          "gamma": 1180}


def test_same_seed_is_byte_identical():
    a_docs, a_manifest = generate_corpus(seed=7)
    b_docs, b_manifest = generate_corpus(seed=7)
    assert {k: v.body for k, v in a_docs.items()} \
        == {k: v.body for k, v in b_docs.items()}
    assert a_manifest.to_dict() == b_manifest.to_dict()


def test_different_seeds_differ():
    a_docs, _ = generate_corpus(seed=1)
    b_docs, _ = generate_corpus(seed=2)
    assert any(a_docs[k].body != b_docs[k].body for k in a_docs)


def test_bodies_contain_parseable_dates():
    documents, _ = generate_corpus(seed=0)
    from sensegraph.graph import parse_time_label
    dated = sum(
        1 for d in documents.values()
        for token in d.body.split() if parse_time_label(token) is not None)
    assert dated > 0


def test_write_and_load_roundtrip(tmp_path):
    documents, manifest = generate_corpus(seed=5)
    write_corpus(documents, manifest, tmp_path)
    loaded_docs, loaded_manifest = load_corpus(tmp_path)
    assert {k: v.body for k, v in loaded_docs.items()} \
        == {k: v.body for k, v in documents.items()}
    assert loaded_manifest.to_dict() == manifest.to_dict()


def test_load_detects_tampered_word_count(tmp_path):
    documents, manifest = generate_corpus(seed=5)
    write_corpus(documents, manifest, tmp_path)
    doc_path = tmp_path / "documents" / "alpha-01.json"
    data = json.loads(doc_path.read_text())
    data["body"] = "too few words"
    doc_path.write_text(json.dumps(data))
    with pytest.raises(ValueError, match="word count mismatch"):
        load_corpus(tmp_path)


def test_load_missing_manifest(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path)
