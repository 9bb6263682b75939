"""Shared fixtures and generators for the test suite."""

from pathlib import Path

import numpy as np
import pytest

from lsasum.embeddings import EmbeddingStore

REPO_ROOT = Path(__file__).resolve().parents[1]


def random_store(words, dim, seed):
    """Store over `words` with standard normal float32 vectors."""
    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((len(words), dim)).astype(np.float32)
    return EmbeddingStore(list(words), vectors)


def store_vectors_as_floats(store, words):
    """The exact float values the store holds, as python lists (for oracles)."""
    return {w: [float(x) for x in store.lookup(w)] for w in words}


def random_token_document(rng, max_terms=10, max_sentences=5, min_sentences=2):
    """Random token lists over a small vocabulary, every term used at least
    once so the first-occurrence vocabulary spans all of it."""
    n_terms = int(rng.integers(1, max_terms + 1))
    words = [f"w{i}" for i in range(n_terms)]
    n_sentences = int(rng.integers(min_sentences, max_sentences + 1))
    sentences = [
        [words[int(k)] for k in rng.integers(0, n_terms, size=int(rng.integers(1, 7)))]
        for _ in range(n_sentences)
    ]
    # guarantee every word appears somewhere
    for i, word in enumerate(words):
        if not any(word in s for s in sentences):
            sentences[i % n_sentences].append(word)
    return words, sentences


@pytest.fixture
def tiny_glove(tmp_path):
    """A small on-disk GloVe file covering the two-sentence running example."""
    words = {
        "Obama": [1.0, 0.2, 0.0, 0.1],
        "speaks": [0.3, 1.0, 0.1, 0.0],
        "media": [0.2, 0.8, 0.9, 0.0],
        "Illinois": [0.9, 0.1, 0.2, 0.3],
        "President": [0.8, 0.3, 0.1, 0.2],
        "greets": [0.2, 0.9, 0.2, 0.1],
        "press": [0.1, 0.7, 1.0, 0.0],
        "Chicago": [0.7, 0.0, 0.3, 0.4],
    }
    path = tmp_path / "vectors.txt"
    lines = [w + " " + " ".join(f"{x:.9g}" for x in v) for w, v in words.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_corpus(root, docs, golds=None):
    """Lay out <root>/docs/<id>.txt and <root>/gold/<id>.<k>.txt."""
    (root / "docs").mkdir(parents=True, exist_ok=True)
    (root / "gold").mkdir(parents=True, exist_ok=True)
    for doc_id, text in docs.items():
        (root / "docs" / f"{doc_id}.txt").write_text(text, encoding="utf-8")
    for doc_id, references in (golds or {}).items():
        for k, text in enumerate(references):
            (root / "gold" / f"{doc_id}.{k}.txt").write_text(text, encoding="utf-8")
    return root
