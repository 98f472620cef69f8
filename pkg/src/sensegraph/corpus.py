"""Synthetic investigation corpus matching the study dataset's shape:
three subplots of eight documents each (six key, two background) with
fixed total word counts. Content is generated, deterministic by seed.
"""

import json
import os
import random
from dataclasses import dataclass, field

from .graph.model import DocumentRecord

SUBPLOT_SHAPE = (
    ("alpha", 1207),
    ("beta", 1229),
    ("gamma", 1180),
)
DOCS_PER_SUBPLOT = 8
KEY_DOCS_PER_SUBPLOT = 6

_VOCABULARY = (
    "smuggling wildlife iguana reptile shipment crate harbor customs "
    "invoice courier warehouse manifest exotic specimen permit forged "
    "broker contact meeting payment transfer account offshore courier "
    "tip informant surveillance photo sighting dealer auction website "
    "forum posting alias phone record ticket flight cargo container "
    "inspection report seizure officer agent lead suspect witness "
    "statement interview note memo letter email fax parcel address"
).split()

_DATES = (
    "2007-01-15", "2007-02-03", "2007-02-20", "2007-03-08", "2007-03-27",
    "2007-04-11", "2007-05-02", "2007-05-19",
)


@dataclass
class CorpusManifest:
    subplots: list = field(default_factory=list)
    per_subplot_counts: dict = field(default_factory=dict)
    total_word_counts: dict = field(default_factory=dict)

    def to_dict(self):
        return {"subplots": self.subplots,
                "perSubplotCounts": self.per_subplot_counts,
                "totalWordCounts": self.total_word_counts}

    @classmethod
    def from_dict(cls, data):
        return cls(subplots=data["subplots"],
                   per_subplot_counts=data["perSubplotCounts"],
                   total_word_counts=data["totalWordCounts"])


def _document_body(rng, word_count):
    words = []
    for i in range(word_count):
        if i and i % 47 == 0:
            words.append(rng.choice(_DATES))
        else:
            word = rng.choice(_VOCABULARY)
            if i and i % 12 == 0:
                words[-1] += "."
                word = word.capitalize()
            words.append(word)
    return " ".join(words)


def generate_corpus(seed=0):
    """Returns (documents: {id: DocumentRecord}, CorpusManifest)."""
    rng = random.Random(seed)
    documents = {}
    manifest = CorpusManifest()
    for subplot, target_words in SUBPLOT_SHAPE:
        base, remainder = divmod(target_words, DOCS_PER_SUBPLOT)
        entries = []
        for i in range(DOCS_PER_SUBPLOT):
            doc_id = f"{subplot}-{i + 1:02d}"
            count = base + (1 if i < remainder else 0)
            role = "key" if i < KEY_DOCS_PER_SUBPLOT else "background"
            doc = DocumentRecord(
                id=doc_id,
                title=f"{subplot.capitalize()} report {i + 1}",
                body=_document_body(rng, count), subplot=subplot)
            assert doc.word_count == count
            documents[doc_id] = doc
            entries.append({"id": doc_id, "role": role,
                            "wordCount": doc.word_count})
        manifest.subplots.append({"name": subplot, "documents": entries})
        manifest.per_subplot_counts[subplot] = DOCS_PER_SUBPLOT
        manifest.total_word_counts[subplot] = sum(e["wordCount"] for e in entries)
    return documents, manifest


def write_corpus(documents, manifest, out_dir):
    os.makedirs(os.path.join(out_dir, "documents"), exist_ok=True)
    for doc in sorted(documents.values(), key=lambda d: d.id):
        path = os.path.join(out_dir, "documents", f"{doc.id}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump({"id": doc.id, "title": doc.title, "body": doc.body,
                       "subplot": doc.subplot, "wordCount": doc.word_count},
                      fh, sort_keys=True, indent=2)
            fh.write("\n")
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest.to_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_corpus(path):
    """Load a corpus directory written by write_corpus; validates word
    counts against the manifest."""
    manifest_path = os.path.join(path, "manifest.json")
    if not os.path.isfile(manifest_path):
        raise FileNotFoundError(f"no corpus manifest at {manifest_path}")
    with open(manifest_path, "r", encoding="utf-8") as fh:
        manifest = CorpusManifest.from_dict(json.load(fh))
    documents = {}
    for subplot in manifest.subplots:
        for entry in subplot["documents"]:
            doc_path = os.path.join(path, "documents", f"{entry['id']}.json")
            with open(doc_path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            doc = DocumentRecord(id=data["id"], title=data["title"],
                                 body=data["body"], subplot=data["subplot"])
            if doc.word_count != entry["wordCount"]:
                raise ValueError(
                    f"manifest word count mismatch for {doc.id}: "
                    f"{entry['wordCount']} != {doc.word_count}")
            documents[doc.id] = doc
    return documents, manifest
