#!/usr/bin/env python3
"""Measure how similarity construction scales with vocabulary size.

Builds random documents with a fixed sentence count and doubling vocabulary
sizes, times build_similarity at each size (best of --repeats), and prints
the wall-time ratio between consecutive sizes. The construction is dominated
by a |W| x |W| product, so doubling the vocabulary should roughly quadruple
the time once |W| is large enough to swamp fixed overheads.
"""

import argparse
import time

import numpy as np

from lsasum.embeddings import EmbeddingStore
from lsasum.preprocess import document_from_tokens
from lsasum.weighting import build_similarity


def timed_case(n_terms, dim, n_sentences, repeats, seed):
    rng = np.random.default_rng(seed)
    words = [f"w{i}" for i in range(n_terms)]
    store = EmbeddingStore(words, rng.standard_normal((n_terms, dim)).astype(np.float32))
    per_sentence = n_terms // n_sentences
    sentences = [
        words[i * per_sentence : (i + 1) * per_sentence] for i in range(n_sentences)
    ]
    sentences[-1].extend(words[n_sentences * per_sentence :])
    doc = document_from_tokens([s for s in sentences if s])
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        build_similarity(doc, store)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", default="1000,2000,4000",
        help="comma-separated vocabulary sizes (each should double the last)",
    )
    parser.add_argument("--dim", default=50, type=int)
    parser.add_argument("--sentences", default=20, type=int)
    parser.add_argument("--repeats", default=3, type=int)
    parser.add_argument("--seed", default=7, type=int)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s]
    print(f"{'|W|':>8}{'seconds':>12}{'ratio':>8}")
    previous = None
    for size in sizes:
        seconds = timed_case(size, args.dim, args.sentences, args.repeats, args.seed)
        ratio = "" if previous is None else f"{seconds / previous:>8.2f}"
        print(f"{size:>8}{seconds:>12.4f}{ratio}")
        previous = seconds


if __name__ == "__main__":
    main()
