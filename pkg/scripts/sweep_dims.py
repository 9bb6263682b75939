#!/usr/bin/env python3
"""Sweep the concept-count policy over a corpus and report mean F1.

The pipeline itself never sweeps k; it applies one policy per run. This
driver reruns the evaluation once per requested setting (fixed counts via
--dims, singular-value ratios via --ratios) so the effect of the cut point
can be read off one table.
"""

import argparse
import sys
from pathlib import Path

from lsasum.config import PipelineConfig
from lsasum.harness import load_corpus, run_pipeline


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--root", default="corpora/synthetic5", type=Path)
    parser.add_argument("--scheme", default="EMBAWEF")
    parser.add_argument("--embeddings", type=Path, default=None,
                        help="vector file (defaults to ROOT/vectors.txt for EMBAWEF)")
    parser.add_argument("--embedding-format", default="glove-txt")
    parser.add_argument("--dims", default="",
                        help="comma list of fixed concept counts, e.g. 1,2,3")
    parser.add_argument("--ratios", default="0.25,0.5,0.75,1.0",
                        help="comma list of sigma ratios in (0, 1]")
    parser.add_argument("--summary-sentences", default=1, type=int)
    parser.add_argument("--workers", default=None, type=int)
    args = parser.parse_args()

    if not (args.root / "docs").is_dir():
        sys.exit(f"no corpus at {args.root}; run scripts/make_synthetic_corpus.py first")
    manifest = load_corpus(args.root)

    settings = [("dims", v.strip()) for v in args.dims.split(",") if v.strip()]
    settings += [("dims_ratio", v.strip()) for v in args.ratios.split(",") if v.strip()]
    if not settings:
        sys.exit("nothing to sweep; pass --dims and/or --ratios")

    rows = []
    metrics = None
    for key, value in settings:
        raw = {
            "scheme": args.scheme,
            "summary_sentences": str(args.summary_sentences),
            key: value,
        }
        if args.workers is not None:
            raw["workers"] = str(args.workers)
        if args.scheme.upper() == "EMBAWEF":
            vectors = args.embeddings or args.root / "vectors.txt"
            raw["embeddings"] = str(vectors)
            raw["embedding_format"] = args.embedding_format
        config = PipelineConfig.from_mapping(raw)
        report = run_pipeline(manifest, config)
        metrics = config.metrics
        label = f"k={value}" if key == "dims" else f"rho={value}"
        rows.append((label, report))

    print(f"{'policy':<12}" + "".join(f"{m.upper():>10}" for m in metrics) + "  failures")
    for label, report in rows:
        cells = "".join(f"{report.aggregate[m]['f1']:>10.4f}" for m in metrics)
        print(f"{label:<12}{cells}  {len(report.failures)}")


if __name__ == "__main__":
    main()
