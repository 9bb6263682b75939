#!/usr/bin/env python3
"""Generate the bundled synthetic evaluation corpus.

Five short documents, each built around one topic whose content words share
an embedding direction, plus filler sentences drawn from unrelated words.
Layout written under --root:

    docs/<id>.txt      the documents
    gold/<id>.<k>.txt  one or two reference summaries per document
    vectors.txt        GloVe-style text vectors covering the lexicon

The gold summary of each document is its topic-dense lead sentence. One
document contains a word deliberately missing from vectors.txt to keep the
out-of-vocabulary path exercised. Deterministic for a given --seed.
"""

import argparse
from pathlib import Path

import numpy as np

TOPICS = {
    "harvest": ["orchard", "apples", "pickers", "crates", "cider", "frost"],
    "voyage": ["schooner", "harbor", "rigging", "crew", "storm", "anchor"],
    "reactor": ["reactor", "coolant", "turbine", "neutron", "shielding", "inspectors"],
    "market": ["vendors", "stalls", "spices", "shoppers", "bargain", "lanterns"],
    "glacier": ["glacier", "moraine", "crevasse", "survey", "icefall", "basecamp"],
}

FILLERS = [
    "morning", "afternoon", "report", "village", "road", "letter",
    "meeting", "season", "window", "garden", "record", "journey",
]

# template vocabulary that also needs vectors, but carries no topic signal
CONNECTIVES = [
    "worried", "changed", "expected", "reach", "stood", "needed", "new",
    "said", "decide", "would", "nobody", "assay", "mentioned", "passing",
    "one", "near", "beside",
]

# appears in the "reactor" document but never in vectors.txt
OOV_WORD = "zyrconate"

TEMPLATES = [
    "The {a} and the {b} worried the {c}.",
    "A {a} near the {b} changed the {c}.",
    "Nobody expected the {a} to reach the {b} before the {c}.",
    "The {a} stood beside the {b} all through the {c}.",
    "After the {a}, the {b} needed a new {c}.",
]


def sentence(rng, words):
    a, b, c = (words[int(i)] for i in rng.choice(len(words), size=3, replace=False))
    template = TEMPLATES[int(rng.integers(0, len(TEMPLATES)))]
    return template.format(a=a, b=b, c=c)


def build_document(rng, topic_words, extra_word=None):
    """Sentences around one topic: a dense lead sentence is the gold."""
    n_sentences = int(rng.integers(4, 9))
    lead = (
        f"The {topic_words[0]} report said the {topic_words[1]} and the "
        f"{topic_words[2]} would decide the {topic_words[3]} near the "
        f"{topic_words[4]}."
    )
    body = []
    for _ in range(n_sentences - 1):
        if rng.random() < 0.25:
            pool = [topic_words[int(rng.integers(0, len(topic_words)))]] + FILLERS
            body.append(sentence(rng, pool))
        else:
            body.append(sentence(rng, FILLERS))
    if extra_word is not None:
        body.append(f"One assay mentioned {extra_word} in passing.")
    position = int(rng.integers(0, len(body) + 1))
    sentences = body[:position] + [lead] + body[position:]
    return " ".join(sentences), lead


def build_vectors(rng, dim):
    """Topic words cluster per topic; everything else is diffuse.

    Random directions in 16 dimensions have small mutual cosines, so the
    non-topic words form no cluster of their own.
    """
    vectors = {}
    for t, (_, words) in enumerate(sorted(TOPICS.items())):
        base = np.zeros(dim)
        base[t] = 1.0
        for word in words:
            vectors[word] = base + 0.08 * rng.standard_normal(dim)
    for word in FILLERS + CONNECTIVES:
        vec = rng.standard_normal(dim)
        vectors[word] = vec / np.linalg.norm(vec)
    return vectors


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--root", default="corpora/synthetic5", type=Path)
    parser.add_argument("--seed", default=20240311, type=int)
    parser.add_argument("--dim", default=16, type=int)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    docs_dir = args.root / "docs"
    gold_dir = args.root / "gold"
    docs_dir.mkdir(parents=True, exist_ok=True)
    gold_dir.mkdir(parents=True, exist_ok=True)

    for index, (topic, words) in enumerate(sorted(TOPICS.items())):
        extra = OOV_WORD if topic == "reactor" else None
        text, lead = build_document(rng, words, extra)
        (docs_dir / f"{topic}.txt").write_text(text + "\n", encoding="utf-8")
        (gold_dir / f"{topic}.0.txt").write_text(lead + "\n", encoding="utf-8")
        if index % 2 == 0 and index < 4:  # two documents get a second reference
            alt = (
                f"The {words[1]} and the {words[2]} decided the {words[3]} "
                f"according to the {words[0]} report."
            )
            (gold_dir / f"{topic}.1.txt").write_text(alt + "\n", encoding="utf-8")

    vectors = build_vectors(rng, args.dim)
    lines = [
        word + " " + " ".join(f"{x:.6f}" for x in vec)
        for word, vec in sorted(vectors.items())
    ]
    (args.root / "vectors.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(TOPICS)} documents and {len(vectors)} vectors under {args.root}")


if __name__ == "__main__":
    main()
