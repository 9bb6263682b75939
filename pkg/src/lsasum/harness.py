"""Corpus evaluation: load documents and golds, run the pipeline per
document in a bounded worker pool, and emit deterministic reports.

Per-document work is a pure function of (text, config, store), so the pool
size can only change wall time, never results; the report is assembled in
sorted document order and is byte-identical across pool sizes. One failing
document is recorded and never aborts the run.
"""

from __future__ import annotations

import datetime as _dt
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import PipelineConfig
from .embeddings import EmbeddingStore, load_embeddings
from .errors import ConfigError, EmptyVocabularyError, IoError, SummarizerError
from .lsa import SvdResult, decompose, with_dimension
from .preprocess import TokenizedDocument, preprocess
from .rouge import RougeScore, evaluate_text
from .selection import Summary, score_sentences, select
from .weighting import EMBAWEF, InputMatrix, build_input_matrix, drop_oov

log = logging.getLogger(__name__)

REPORT_SCHEMA = "lsasum-report-v1"


# ---------------------------------------------------------------------------
# corpus layout: <root>/docs/<id>.txt and <root>/gold/<id>.<k>.txt


@dataclass(frozen=True)
class CorpusDocument:
    doc_id: str
    doc_path: Path
    gold_paths: tuple[Path, ...]


@dataclass(frozen=True)
class CorpusManifest:
    root: Path
    documents: tuple[CorpusDocument, ...]

    @property
    def doc_ids(self) -> tuple[str, ...]:
        return tuple(d.doc_id for d in self.documents)


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def load_corpus(root: str | Path, require_gold: bool = True) -> CorpusManifest:
    """Scan a corpus directory into a manifest, sorted by document id.

    Evaluation mode (require_gold) drops documents without any gold summary,
    with a warning; gold files whose id matches no document are warned about
    and ignored; documents whose text is empty are skipped with a warning.
    """
    root = Path(root)
    docs_dir = root / "docs"
    gold_dir = root / "gold"
    if not docs_dir.is_dir():
        raise IoError(f"cannot read corpus: {docs_dir} is not a directory")

    golds_by_id: dict[str, list[Path]] = {}
    if gold_dir.is_dir():
        for gold_path in sorted(gold_dir.glob("*.txt")):
            doc_id, _, rest = gold_path.name.partition(".")
            if not rest or rest == "txt":
                log.warning("ignoring gold file with no variant tag: %s", gold_path)
                continue
            golds_by_id.setdefault(doc_id, []).append(gold_path)

    documents = []
    seen_ids = set()
    for doc_path in sorted(docs_dir.glob("*.txt")):
        doc_id = doc_path.stem
        seen_ids.add(doc_id)
        try:
            text = _read_text(doc_path)
        except IoError:
            text = None  # keep it: the per-document run records the failure
        if text is not None and not text.strip():
            log.warning("skipping %s: document has no text", doc_path)
            continue
        golds = tuple(golds_by_id.get(doc_id, ()))
        if require_gold and not golds:
            log.warning("skipping %s: no gold summaries", doc_path)
            continue
        documents.append(CorpusDocument(doc_id, doc_path, golds))

    for orphan_id in sorted(set(golds_by_id) - seen_ids):
        log.warning("gold files for unknown document id %r ignored", orphan_id)

    return CorpusManifest(root=root, documents=tuple(documents))


# ---------------------------------------------------------------------------
# single-document pipeline


@dataclass(frozen=True, eq=False)
class DocumentResult:
    """Everything the pipeline produced for one document."""

    doc: TokenizedDocument
    matrix: InputMatrix
    svd: SvdResult
    scores: np.ndarray
    summary: Summary
    timings: dict[str, float] = field(default_factory=dict)


def summarize_document(
    text: str, config: PipelineConfig, store: EmbeddingStore | None = None
) -> DocumentResult:
    """Run preprocess -> weights -> SVD -> selection on one document."""
    if config.budget is None:
        raise ConfigError(
            "a summary budget is required (summary_words, summary_chars, "
            "or summary_sentences)"
        )
    timings: dict[str, float] = {}

    tick = time.perf_counter()
    doc = preprocess(text, config.preprocess)
    if doc.n_sentences == 0:
        raise EmptyVocabularyError("document has no content sentences")
    if config.scheme == EMBAWEF:
        if store is None:
            raise ConfigError("scheme EMBAWEF requires --embeddings")
        doc, oov = drop_oov(doc, store, config.preprocess.case_fold_fallback)
        if not doc.vocabulary:
            raise EmptyVocabularyError(
                f"all {oov.dropped_count} terms lack embeddings"
            )
    timings["preprocess"] = time.perf_counter() - tick

    tick = time.perf_counter()
    matrix = build_input_matrix(
        doc,
        scheme=config.scheme,
        store=store,
        clamp=not config.raw_cosines,
        case_fold_fallback=config.preprocess.case_fold_fallback,
    )
    timings["weighting"] = time.perf_counter() - tick

    tick = time.perf_counter()
    svd = with_dimension(decompose(matrix.a), config.dim_policy)
    timings["svd"] = time.perf_counter() - tick

    tick = time.perf_counter()
    scores = score_sentences(svd)
    summary = select(scores, doc, config.budget)
    timings["select"] = time.perf_counter() - tick

    return DocumentResult(
        doc=doc, matrix=matrix, svd=svd, scores=scores, summary=summary, timings=timings
    )


# ---------------------------------------------------------------------------
# corpus run


@dataclass(frozen=True, eq=False)
class DocumentOutcome:
    doc_id: str
    summary: Summary
    rouge: dict[str, RougeScore]
    timings: dict[str, float]


@dataclass(frozen=True, eq=False)
class EvaluationReport:
    config_echo: dict
    outcomes: dict[str, DocumentOutcome]  # sorted by doc id
    failures: dict[str, str]
    aggregate: dict[str, dict[str, float]]
    store_seconds: float = 0.0


def _evaluate_one(
    entry: CorpusDocument, config: PipelineConfig, store: EmbeddingStore | None
) -> DocumentOutcome:
    result = summarize_document(_read_text(entry.doc_path), config, store)
    timings = dict(result.timings)
    tick = time.perf_counter()
    rouge_scores: dict[str, RougeScore] = {}
    if entry.gold_paths:
        references = [_read_text(p) for p in entry.gold_paths]
        rouge_scores = evaluate_text(
            result.summary.text,
            references,
            metrics=config.metrics,
            truncation=config.truncation,
            stem=config.stem,
            keep_stopwords=config.keep_stopwords,
            agg=config.rouge_agg,
        )
    timings["rouge"] = time.perf_counter() - tick
    return DocumentOutcome(
        doc_id=entry.doc_id,
        summary=result.summary,
        rouge=rouge_scores,
        timings=timings,
    )


def _mean_scores(
    outcomes: dict[str, DocumentOutcome], metrics: tuple[str, ...]
) -> dict[str, dict[str, float]]:
    aggregate: dict[str, dict[str, float]] = {}
    scored = [o for o in outcomes.values() if o.rouge]
    for metric in metrics:
        if not scored:
            aggregate[metric] = {"recall": 0.0, "precision": 0.0, "f1": 0.0}
            continue
        aggregate[metric] = {
            "recall": sum(o.rouge[metric].recall for o in scored) / len(scored),
            "precision": sum(o.rouge[metric].precision for o in scored) / len(scored),
            "f1": sum(o.rouge[metric].f1 for o in scored) / len(scored),
        }
    return aggregate


def run_pipeline(manifest: CorpusManifest, config: PipelineConfig) -> EvaluationReport:
    """Summarize and score every manifest document under a worker pool.

    Results are keyed and assembled in sorted doc-id order, so the report
    content does not depend on the pool size or completion order. A failure
    in one document becomes a failures[] entry; the rest proceed.
    """
    workers = config.workers or os.cpu_count() or 1
    failures: dict[str, str] = {}
    documents = list(manifest.documents)

    store: EmbeddingStore | None = None
    store_seconds = 0.0
    if config.scheme == EMBAWEF:
        if not config.embeddings:
            raise ConfigError("scheme EMBAWEF requires embeddings")
        tick = time.perf_counter()
        vocab: set[str] = set()
        kept_documents = []
        for entry in documents:
            try:
                doc = preprocess(_read_text(entry.doc_path), config.preprocess)
            except SummarizerError as exc:
                failures[entry.doc_id] = str(exc)
                continue
            kept_documents.append(entry)
            for term in doc.vocabulary:
                vocab.add(term)
                vocab.add(term.lower())
        documents = kept_documents
        store = load_embeddings(config.embeddings, config.embedding_format, vocab=vocab)
        store_seconds = time.perf_counter() - tick

    def work(entry: CorpusDocument) -> tuple[str, DocumentOutcome | None, str | None]:
        try:
            return entry.doc_id, _evaluate_one(entry, config, store), None
        except SummarizerError as exc:
            return entry.doc_id, None, str(exc)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(work, documents))

    outcomes: dict[str, DocumentOutcome] = {}
    for doc_id, outcome, error in sorted(results, key=lambda r: r[0]):
        if error is not None:
            failures[doc_id] = error
        elif outcome is not None:
            outcomes[doc_id] = outcome

    return EvaluationReport(
        config_echo=config.echo(),
        outcomes=outcomes,
        failures=dict(sorted(failures.items())),
        aggregate=_mean_scores(outcomes, config.metrics),
        store_seconds=store_seconds,
    )


# ---------------------------------------------------------------------------
# report emission


def _rouge_dict(scores: dict[str, RougeScore], metrics: tuple[str, ...]) -> dict:
    return {
        m: {
            "recall": scores[m].recall,
            "precision": scores[m].precision,
            "f1": scores[m].f1,
        }
        for m in metrics
        if m in scores
    }


def emit_report(
    report: EvaluationReport,
    fmt: str = "json",
    emit_timings: bool = False,
    include_timestamp: bool = True,
) -> str:
    """Render a report as JSON or a text table.

    JSON key order is fixed; `generated_at` is the only field that varies
    between identical runs (comparisons should exclude it). Timings are
    emitted only on request since they are never deterministic.
    """
    metrics = tuple(report.config_echo.get("metrics") or ())
    if fmt == "json":
        payload: dict = {"schema": REPORT_SCHEMA}
        if include_timestamp:
            payload["generated_at"] = (
                _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
            )
        payload["config"] = report.config_echo
        payload["document_count"] = len(report.outcomes)
        payload["failure_count"] = len(report.failures)
        payload["aggregate"] = report.aggregate
        payload["documents"] = {
            doc_id: {
                "selected": [index for index, _ in outcome.summary.selected],
                "scores": [score for _, score in outcome.summary.selected],
                "over_budget": outcome.summary.over_budget,
                "summary": outcome.summary.text,
                "rouge": _rouge_dict(outcome.rouge, metrics),
            }
            for doc_id, outcome in report.outcomes.items()
        }
        payload["failures"] = report.failures
        if emit_timings:
            payload["timings"] = {
                "store_load_seconds": report.store_seconds,
                "documents": {
                    doc_id: outcome.timings
                    for doc_id, outcome in report.outcomes.items()
                },
            }
        return json.dumps(payload, indent=2) + "\n"

    if fmt == "text":
        lines = []
        header = f"{'scheme':<10}" + "".join(f"{m.upper():>10}" for m in metrics)
        lines.append(header)
        scheme = report.config_echo.get("scheme", "?")
        lines.append(
            f"{scheme:<10}"
            + "".join(f"{report.aggregate[m]['f1']:>10.4f}" for m in metrics)
        )
        lines.append("")
        lines.append(f"{'doc':<16}" + "".join(f"{m.upper():>10}" for m in metrics) + "  selected")
        for doc_id, outcome in report.outcomes.items():
            cells = "".join(
                f"{outcome.rouge[m].f1:>10.4f}" if m in outcome.rouge else f"{'-':>10}"
                for m in metrics
            )
            chosen = ",".join(str(i) for i, _ in outcome.summary.selected)
            lines.append(f"{doc_id:<16}{cells}  [{chosen}]")
        for doc_id, message in report.failures.items():
            lines.append(f"{doc_id:<16}FAILED: {message}")
        lines.append("")
        lines.append(
            f"{len(report.outcomes)} document(s) evaluated, "
            f"{len(report.failures)} failure(s); scores are F1 means"
        )
        return "\n".join(lines) + "\n"

    raise ConfigError(f"unknown report format {fmt!r}; use json or text")
