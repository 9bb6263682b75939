"""Command line interface.

Subcommands: summarize, eval, rouge, dump-matrix. Pipeline settings come
from an optional --config key-value file with flags overriding it key by
key. Exit codes: 0 success; 1 a document failed during processing (eval
completes with per-document failures recorded); 2 configuration or IO error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import PipelineConfig
from .embeddings import GLOVE_TEXT, WORD2VEC_BINARY, load_embeddings
from .errors import (
    ConfigError,
    DataError,
    FormatError,
    IoError,
    SummarizerError,
)
from .harness import (
    emit_report,
    load_corpus,
    run_pipeline,
    summarize_document,
)
from .preprocess import preprocess
from .rouge import evaluate_text
from .weighting import (
    EMBAWEF,
    build_input_matrix,
    drop_oov,
    format_matrix_dump,
    format_matrix_table,
)

log = logging.getLogger(__name__)


def _add_pipeline_flags(parser: argparse.ArgumentParser, with_budget: bool = True) -> None:
    parser.add_argument("--config", metavar="FILE", help="key-value config file")
    parser.add_argument("--scheme", metavar="NAME", help="embawef, awef, or tfidf")
    parser.add_argument("--embeddings", metavar="PATH", help="pretrained vector file")
    parser.add_argument(
        "--embedding-format",
        choices=[WORD2VEC_BINARY, GLOVE_TEXT],
        help="layout of --embeddings",
    )
    dims = parser.add_mutually_exclusive_group()
    dims.add_argument("--dims", type=int, metavar="K", help="fixed concept count")
    dims.add_argument(
        "--dims-ratio",
        type=float,
        metavar="RHO",
        help="keep singular values >= RHO * largest (default 0.5)",
    )
    parser.add_argument(
        "--raw-cosines",
        action="store_true",
        default=None,
        help="accumulate signed cosines instead of clamping negatives to zero",
    )
    parser.add_argument("--stopwords", metavar="FILE", help="replacement stopword list")
    parser.add_argument(
        "--expand-contractions",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    parser.add_argument(
        "--case-fold-fallback",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="retry embedding lookups lowercased on a miss",
    )
    if with_budget:
        budget = parser.add_mutually_exclusive_group()
        budget.add_argument("--summary-words", type=int, metavar="N")
        budget.add_argument("--summary-chars", type=int, metavar="N")
        budget.add_argument("--summary-sentences", type=int, metavar="N")


def _add_rouge_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--metrics", metavar="LIST", help="subset of r1,r2,rl")
    parser.add_argument(
        "--truncate", metavar="MODE", help="candidate cap: words:N, bytes:N, or none"
    )
    parser.add_argument("--rouge-agg", choices=["max", "avg"], default=None)
    parser.add_argument(
        "--stem", action=argparse.BooleanOptionalAction, default=None,
        help="Porter-stem tokens before matching (default on)",
    )
    parser.add_argument(
        "--keep-stopwords", action=argparse.BooleanOptionalAction, default=None,
        help="keep stopwords when scoring (default on)",
    )


def _flag(value: bool | None) -> str | None:
    if value is None:
        return None
    return "true" if value else "false"


def _overrides(args: argparse.Namespace) -> dict[str, str | None]:
    get = lambda name: getattr(args, name, None)
    return {
        "scheme": get("scheme"),
        "embeddings": get("embeddings"),
        "embedding_format": get("embedding_format"),
        "dims": None if get("dims") is None else str(args.dims),
        "dims_ratio": None if get("dims_ratio") is None else repr(args.dims_ratio),
        "summary_words": None if get("summary_words") is None else str(args.summary_words),
        "summary_chars": None if get("summary_chars") is None else str(args.summary_chars),
        "summary_sentences": (
            None if get("summary_sentences") is None else str(args.summary_sentences)
        ),
        "truncate": get("truncate"),
        "raw_cosines": _flag(get("raw_cosines")),
        "stopwords_path": get("stopwords"),
        "expand_contractions": _flag(get("expand_contractions")),
        "case_fold_fallback": _flag(get("case_fold_fallback")),
        "metrics": get("metrics"),
        "rouge_agg": get("rouge_agg"),
        "stem": _flag(get("stem")),
        "keep_stopwords": _flag(get("keep_stopwords")),
        "workers": None if get("workers") is None else str(args.workers),
        "emit_timings": _flag(get("emit_timings")),
    }


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig.from_sources(getattr(args, "config", None), _overrides(args))


def _load_store_for_texts(config: PipelineConfig, texts: list[str]):
    """Vocabulary-filtered store load for a known set of documents."""
    if config.scheme != EMBAWEF:
        return None
    if not config.embeddings:
        raise ConfigError("scheme EMBAWEF requires --embeddings")
    vocab: set[str] = set()
    for text in texts:
        for term in preprocess(text, config.preprocess).vocabulary:
            vocab.add(term)
            vocab.add(term.lower())
    return load_embeddings(config.embeddings, config.embedding_format, vocab=vocab)


def _write_dump(matrix, out_path: str) -> None:
    Path(out_path).write_text(format_matrix_dump(matrix), encoding="utf-8")
    Path(out_path + ".txt").write_text(format_matrix_table(matrix), encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_summarize(args: argparse.Namespace) -> int:
    config = _build_config(args)
    text = _read_input(args.document)
    store = _load_store_for_texts(config, [text])
    result = summarize_document(text, config, store)
    if args.dump_matrix:
        _write_dump(result.matrix, args.dump_matrix)
    if result.summary.over_budget:
        log.warning("shortest viable sentence exceeds the budget; summary flagged")
    if args.output:
        Path(args.output).write_text(result.summary.text + "\n", encoding="utf-8")
    else:
        print(result.summary.text)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    config = _build_config(args)
    manifest = load_corpus(args.corpus_root)
    report = run_pipeline(manifest, config)
    json_text = emit_report(report, "json", emit_timings=config.emit_timings)
    if args.report:
        Path(args.report).write_text(json_text, encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(json_text)
    else:
        sys.stdout.write(emit_report(report, "text"))
    return 1 if report.failures else 0


def _cmd_rouge(args: argparse.Namespace) -> int:
    config = _build_config(args)
    candidate = _read_input(args.cand)
    references = [_read_input(p) for p in args.refs.split(",") if p]
    if not references:
        raise ConfigError("--refs needs at least one reference file")
    scores = evaluate_text(
        candidate,
        references,
        metrics=config.metrics,
        truncation=config.truncation,
        stem=config.stem,
        keep_stopwords=config.keep_stopwords,
        agg=config.rouge_agg,
    )
    for metric in config.metrics:
        score = scores[metric]
        print(
            f"{metric.upper()}  recall={score.recall:.6f}  "
            f"precision={score.precision:.6f}  f1={score.f1:.6f}"
        )
    return 0


def _cmd_dump_matrix(args: argparse.Namespace) -> int:
    config = _build_config(args)
    text = _read_input(args.document)
    store = _load_store_for_texts(config, [text])
    doc = preprocess(text, config.preprocess)
    if config.scheme == EMBAWEF:
        doc, _ = drop_oov(doc, store, config.preprocess.case_fold_fallback)
    matrix = build_input_matrix(
        doc,
        scheme=config.scheme,
        store=store,
        clamp=not config.raw_cosines,
        case_fold_fallback=config.preprocess.case_fold_fallback,
    )
    _write_dump(matrix, args.out)
    print(f"wrote {args.out} and {args.out}.txt")
    return 0


def _read_input(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsasum",
        description="Extractive summarization with embedding-weighted LSA",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="info logging")
    commands = parser.add_subparsers(dest="command", required=True)

    p_sum = commands.add_parser("summarize", help="summarize one document")
    p_sum.add_argument("document", help="path to a UTF-8 text file")
    _add_pipeline_flags(p_sum)
    p_sum.add_argument("--dump-matrix", metavar="PATH", help="also write the input matrix")
    p_sum.add_argument("--output", metavar="FILE", help="write the summary here instead of stdout")
    p_sum.set_defaults(func=_cmd_summarize)

    p_eval = commands.add_parser("eval", help="summarize and score a corpus")
    p_eval.add_argument("corpus_root", help="directory with docs/ and gold/")
    _add_pipeline_flags(p_eval)
    _add_rouge_flags(p_eval)
    p_eval.add_argument("--report", metavar="FILE", help="write the JSON report here")
    p_eval.add_argument("--format", choices=["text", "json"], default="text",
                        help="stdout format (default text)")
    p_eval.add_argument("--workers", type=int, metavar="N", help="worker pool size")
    p_eval.add_argument("--emit-timings", action=argparse.BooleanOptionalAction,
                        default=None, help="include per-stage timings in the JSON report")
    p_eval.set_defaults(func=_cmd_eval)

    p_rouge = commands.add_parser("rouge", help="score a candidate against references")
    p_rouge.add_argument("--cand", required=True, metavar="FILE")
    p_rouge.add_argument("--refs", required=True, metavar="FILE[,FILE...]")
    p_rouge.add_argument("--config", metavar="FILE", help="key-value config file")
    _add_rouge_flags(p_rouge)
    p_rouge.set_defaults(func=_cmd_rouge)

    p_dump = commands.add_parser("dump-matrix", help="write the term-sentence matrix")
    p_dump.add_argument("document", help="path to a UTF-8 text file")
    _add_pipeline_flags(p_dump, with_budget=False)
    p_dump.add_argument("--out", required=True, metavar="PATH",
                        help="machine-readable dump path; PATH.txt gets the table")
    p_dump.set_defaults(func=_cmd_dump_matrix)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ConfigError, IoError, FormatError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SummarizerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
