#!/usr/bin/env python3
"""Run every weighting scheme over the bundled synthetic corpus.

Prints one aggregate row per scheme (mean F1 per metric). The embedding
scheme reads the corpus's own vectors.txt; the frequency-based schemes need
no vectors. Regenerate the corpus first with make_synthetic_corpus.py if it
is missing.
"""

import argparse
import sys
from pathlib import Path

from lsasum.config import PipelineConfig
from lsasum.harness import load_corpus, run_pipeline
from lsasum.weighting import SCHEMES


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--root", default="corpora/synthetic5", type=Path)
    parser.add_argument("--summary-sentences", default=1, type=int)
    parser.add_argument("--workers", default=None, type=int)
    args = parser.parse_args()

    if not (args.root / "docs").is_dir():
        sys.exit(f"no corpus at {args.root}; run scripts/make_synthetic_corpus.py first")
    manifest = load_corpus(args.root)

    rows = []
    metrics = None
    for scheme in SCHEMES:
        raw = {
            "scheme": scheme,
            "summary_sentences": str(args.summary_sentences),
        }
        if args.workers is not None:
            raw["workers"] = str(args.workers)
        if scheme == "EMBAWEF":
            raw["embeddings"] = str(args.root / "vectors.txt")
            raw["embedding_format"] = "glove-txt"
        config = PipelineConfig.from_mapping(raw)
        report = run_pipeline(manifest, config)
        metrics = config.metrics
        rows.append((scheme, report))

    print(f"{'scheme':<10}" + "".join(f"{m.upper():>10}" for m in metrics) + "  failures")
    for scheme, report in rows:
        cells = "".join(f"{report.aggregate[m]['f1']:>10.4f}" for m in metrics)
        print(f"{scheme:<10}{cells}  {len(report.failures)}")


if __name__ == "__main__":
    main()
