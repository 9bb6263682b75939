"""Term-sentence input matrices for the SVD stage.

Every scheme factors a cell as local weight times global term weight. The
embedding-based scheme (EMBAWEF) replaces raw term frequency with the sum of
cosine similarities between a term and every token occurrence, so the local
weight rewards terms aligned with a sentence's content and the global weight
measures how evenly that alignment spreads over the document. AWEF keeps the
same functional form on raw counts; TFIDF is the classic baseline.

All accumulation happens in float64. Matrix rows follow the document
vocabulary order; columns follow kept-sentence order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace as dataclass_replace

import numpy as np

from .embeddings import EmbeddingStore
from .errors import ConfigError, EmptyVocabularyError, SingleSentenceError
from .preprocess import Sentence, TokenizedDocument

log = logging.getLogger(__name__)

EMBAWEF = "EMBAWEF"
AWEF = "AWEF"
TFIDF = "TFIDF"
SCHEMES = (EMBAWEF, AWEF, TFIDF)


@dataclass(frozen=True, eq=False)
class SimilarityMatrices:
    """Term-vs-sentence cosine mass and its reductions.

    term_sent_sim[i, j] sums the cosine between term i and each token
    occurrence of sentence j (clamped at zero unless raw cosines were
    requested). term_doc_sim is its row sum, col_max its column max.
    Sentences whose tokens were all dropped produce all-zero columns and are
    flagged in empty_columns.
    """

    term_sent_sim: np.ndarray  # (m, n) float64
    term_doc_sim: np.ndarray  # (m,)
    col_max: np.ndarray  # (n,)
    empty_columns: tuple[int, ...]
    clamped: bool


@dataclass(frozen=True, eq=False)
class OovReport:
    """Outcome of resolving a document vocabulary against a store."""

    resolved: dict[str, str]  # term -> store key actually used
    dropped_terms: tuple[str, ...]

    @property
    def dropped_count(self) -> int:
        return len(self.dropped_terms)


@dataclass(frozen=True, eq=False)
class InputMatrix:
    """Composed input matrix A = local * global, with provenance."""

    a: np.ndarray  # (m, n)
    scheme: str
    term_order: tuple[str, ...]
    local: np.ndarray  # (m, n)
    global_weight: np.ndarray  # (m,)
    similarity: SimilarityMatrices | None = None
    dropped_terms: tuple[str, ...] = ()


def drop_oov(
    doc: TokenizedDocument, store: EmbeddingStore, case_fold_fallback: bool = True
) -> tuple[TokenizedDocument, OovReport]:
    """Remove tokens whose terms have no vector, keeping sentence slots.

    Sentences are never removed here even if every token goes; their columns
    stay in the matrix (all zero) so sentence indexing is stable. The report
    records the dropped terms and the store key used for each survivor.
    """
    resolved: dict[str, str] = {}
    dropped = []
    for term in doc.vocabulary:
        key = store.resolve(term, case_fold_fallback)
        if key is None:
            dropped.append(term)
        else:
            resolved[term] = key
    if dropped:
        log.warning(
            "dropping %d of %d terms with no embedding (e.g. %s)",
            len(dropped),
            len(doc.vocabulary),
            ", ".join(dropped[:5]),
        )
    dropped_set = set(dropped)
    sentences = tuple(
        Sentence(
            index=s.index,
            tokens=tuple(t for t in s.tokens if t not in dropped_set),
            char_span=s.char_span,
        )
        for s in doc.sentences
    )
    new_doc = TokenizedDocument(
        sentences=sentences,
        vocabulary=tuple(t for t in doc.vocabulary if t not in dropped_set),
        raw_text=doc.raw_text,
        dropped_indices=doc.dropped_indices,
    )
    return new_doc, OovReport(resolved=resolved, dropped_terms=tuple(dropped))


def occurrence_counts(doc: TokenizedDocument) -> np.ndarray:
    """Term-frequency matrix: counts[i, j] = occurrences of term i in sentence j."""
    index = {term: i for i, term in enumerate(doc.vocabulary)}
    counts = np.zeros((len(index), doc.n_sentences), dtype=np.float64)
    for j, sentence in enumerate(doc.sentences):
        for token in sentence.tokens:
            counts[index[token], j] += 1.0
    return counts


def build_similarity(
    doc: TokenizedDocument,
    store: EmbeddingStore,
    clamp: bool = True,
    case_fold_fallback: bool = True,
) -> SimilarityMatrices:
    """Accumulate cosine similarity between every term and every sentence.

    Precondition: every vocabulary term resolves in the store (run drop_oov
    first). Cost is dominated by the term-by-term cosine table, so doubling
    the vocabulary at fixed sentence structure roughly quadruples the work.
    The computation is a pure function of its inputs; callers may parallelize
    across documents without affecting results.
    """
    if not doc.vocabulary:
        raise EmptyVocabularyError("no terms left to weight")
    keys = []
    for term in doc.vocabulary:
        key = store.resolve(term, case_fold_fallback)
        if key is None:
            raise KeyError(f"term {term!r} not resolvable in store; drop_oov first")
        keys.append(key)
    units = store.unit_rows(keys)  # (m, d) float64
    counts = occurrence_counts(doc)
    # Stream the (m, m) cosine table in row blocks; materializing it whole
    # stalls on memory bandwidth long before the arithmetic saturates, and
    # row partitioning leaves every dot product bit-identical.
    term_sent_sim = np.empty((units.shape[0], counts.shape[1]))
    block = 512
    for lo in range(0, units.shape[0], block):
        hi = min(lo + block, units.shape[0])
        cosines = units[lo:hi] @ units.T
        if clamp:
            np.maximum(cosines, 0.0, out=cosines)
        term_sent_sim[lo:hi] = cosines @ counts
    empty = tuple(int(j) for j in np.flatnonzero(counts.sum(axis=0) == 0.0))
    if empty:
        log.warning("%d sentence(s) lost every token to OOV drops: %s", len(empty), empty)
    return SimilarityMatrices(
        term_sent_sim=term_sent_sim,
        term_doc_sim=term_sent_sim.sum(axis=1),
        col_max=term_sent_sim.max(axis=0) if len(doc.vocabulary) else np.zeros(0),
        empty_columns=empty,
        clamped=clamp,
    )


def embaw(sim: SimilarityMatrices) -> np.ndarray:
    """Local weight 0.5 + 0.5 * sim / column-max.

    Columns whose maximum is not positive (all-OOV sentences, or everything
    clamped to zero) fall back to a flat 0.5. Under clamped cosines values
    stay in [0.5, 1.0]; raw cosines may leave that band by design.
    """
    col_max = sim.col_max
    safe = np.where(col_max != 0.0, col_max, 1.0)
    local = 0.5 + 0.5 * (sim.term_sent_sim / safe)
    local[:, col_max == 0.0] = 0.5
    return local


def embef(sim: SimilarityMatrices) -> np.ndarray:
    """Global weight 1 + sum_j P log2 P / log2 n with P = sim / row-sum.

    Cells with P <= 0 contribute nothing. Rows whose total similarity mass is
    not positive (possible only with raw cosines) have no defined weight and
    come back NaN; callers drop them with a diagnostic. Raises
    SingleSentenceError when the document has fewer than two sentences, since
    log2(1) = 0 leaves the entropy undefined.
    """
    n = sim.term_sent_sim.shape[1]
    if n < 2:
        raise SingleSentenceError("entropy weight needs at least two sentences")
    totals = sim.term_doc_sim
    valid = totals > 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        p = sim.term_sent_sim / totals[:, None]
        plogp = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    weights = 1.0 + plogp.sum(axis=1) / np.log2(n)
    weights[~valid] = np.nan
    return weights


def augment_weight(counts: np.ndarray) -> np.ndarray:
    """Count-based local weight 0.5 + 0.5 * tf / column-max-tf."""
    col_max = counts.max(axis=0) if counts.size else np.zeros(counts.shape[1])
    safe = np.where(col_max > 0.0, col_max, 1.0)
    local = 0.5 + 0.5 * (counts / safe)
    local[:, col_max == 0.0] = 0.5
    return local


def entropy_frequency(counts: np.ndarray) -> np.ndarray:
    """Count-based global weight 1 + sum_j P log2 P / log2 n, P = tf / gf."""
    n = counts.shape[1]
    if n < 2:
        raise SingleSentenceError("entropy weight needs at least two sentences")
    gf = counts.sum(axis=1)
    safe_gf = np.where(gf > 0.0, gf, 1.0)
    p = counts / safe_gf[:, None]
    plogp = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return 1.0 + plogp.sum(axis=1) / np.log2(n)


def tfidf_components(counts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(local, global) for the TF-IDF baseline: tf and ln(n / sentence-count)."""
    n = counts.shape[1]
    sentence_counts = (counts > 0.0).sum(axis=1)
    safe = np.where(sentence_counts > 0, sentence_counts, 1)
    idf = np.log(n / safe)
    idf[sentence_counts == 0] = 0.0
    return counts.copy(), idf


def build_input_matrix(
    doc: TokenizedDocument,
    scheme: str = EMBAWEF,
    store: EmbeddingStore | None = None,
    clamp: bool = True,
    case_fold_fallback: bool = True,
) -> InputMatrix:
    """Compose A = local * global for the requested scheme.

    EMBAWEF needs a store; the document passed in should already be OOV
    filtered (drop_oov), though unresolvable terms raise rather than pass
    silently. Terms whose entropy weight is undefined (raw-cosine runs) are
    dropped from the matrix with a diagnostic. Single-sentence documents fall
    back to a global weight of 1.
    """
    if scheme not in SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if not doc.vocabulary:
        raise EmptyVocabularyError("document has no content terms")

    if scheme == EMBAWEF:
        if store is None:
            raise ConfigError("EMBAWEF requires an embedding store")
        sim = build_similarity(doc, store, clamp=clamp, case_fold_fallback=case_fold_fallback)
        local = embaw(sim)
        try:
            global_weight = embef(sim)
        except SingleSentenceError:
            global_weight = np.ones(len(doc.vocabulary))
        keep = np.isfinite(global_weight)
        dropped = tuple(t for t, ok in zip(doc.vocabulary, keep) if not ok)
        if dropped:
            log.warning(
                "dropping %d term(s) with non-positive similarity mass: %s",
                len(dropped),
                ", ".join(dropped[:5]),
            )
            local = local[keep]
            global_weight = global_weight[keep]
            sim = dataclass_replace(
                sim,
                term_sent_sim=sim.term_sent_sim[keep],
                term_doc_sim=sim.term_doc_sim[keep],
            )
        term_order = tuple(t for t, ok in zip(doc.vocabulary, keep) if ok)
        if not term_order:
            raise EmptyVocabularyError("every term lost its global weight")
        a = local * global_weight[:, None]
        return InputMatrix(
            a=a,
            scheme=scheme,
            term_order=term_order,
            local=local,
            global_weight=global_weight,
            similarity=sim,
            dropped_terms=dropped,
        )

    counts = occurrence_counts(doc)
    if scheme == AWEF:
        local = augment_weight(counts)
        try:
            global_weight = entropy_frequency(counts)
        except SingleSentenceError:
            global_weight = np.ones(counts.shape[0])
    else:  # TFIDF
        local, global_weight = tfidf_components(counts)
    a = local * global_weight[:, None]
    return InputMatrix(
        a=a,
        scheme=scheme,
        term_order=doc.vocabulary,
        local=local,
        global_weight=global_weight,
    )


def format_matrix_dump(matrix: InputMatrix) -> str:
    """Machine-readable dump: header 'm n scheme', then 9-significant-digit rows."""
    m, n = matrix.a.shape
    lines = [f"{m} {n} {matrix.scheme}"]
    for row in matrix.a:
        lines.append(" ".join(f"{x:.9g}" for x in row))
    return "\n".join(lines) + "\n"


def format_matrix_table(matrix: InputMatrix) -> str:
    """Human-readable dump of A, the local and global factors, and (when
    embedding-based) the similarity accumulation, labeled by term."""
    m, n = matrix.a.shape
    width = max([len("term")] + [len(t) for t in matrix.term_order]) + 2
    header_cols = "".join(f"{f's{j}':>12}" for j in range(n))

    def block(title: str, rows: np.ndarray) -> list[str]:
        lines = [title, f"{'term':<{width}}{header_cols}"]
        for term, row in zip(matrix.term_order, rows):
            cells = "".join(f"{x:>12.6f}" for x in row)
            lines.append(f"{term:<{width}}{cells}")
        lines.append("")
        return lines

    out = [f"scheme {matrix.scheme}  ({m} terms x {n} sentences)", ""]
    out += block("A = local * global", matrix.a)
    out += block("local weight", matrix.local)
    out += [
        "global weight",
        f"{'term':<{width}}{'value':>12}",
        *[
            f"{t:<{width}}{g:>12.6f}"
            for t, g in zip(matrix.term_order, matrix.global_weight)
        ],
        "",
    ]
    if matrix.similarity is not None:
        out += block("term-sentence similarity", matrix.similarity.term_sent_sim)
    if matrix.dropped_terms:
        out.append("dropped terms: " + ", ".join(matrix.dropped_terms))
        out.append("")
    return "\n".join(out)
