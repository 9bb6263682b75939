"""Extractive single-document summarization.

The pipeline builds a term-sentence matrix whose cells combine a local and a
global term weight (embedding-similarity based by default, with count-based
and TF-IDF baselines), decomposes it with an SVD, scores sentences by their
singular-value-weighted concept coordinates, and selects greedily under a
length budget. A self-contained ROUGE-1/2/L evaluator and a corpus harness
round out the package.
"""

from .config import PipelineConfig
from .embeddings import (
    EmbeddingStore,
    cosine_similarity,
    load_embeddings,
    load_glove_text,
    load_word2vec_binary,
    save_glove_text,
    save_word2vec_binary,
)
from .errors import (
    ConfigError,
    DataError,
    DegenerateVectorError,
    EmptyVocabularyError,
    FormatError,
    IoError,
    RecordError,
    SingleSentenceError,
    SummarizerError,
    TruncationError,
)
from .harness import (
    CorpusManifest,
    DocumentResult,
    EvaluationReport,
    emit_report,
    load_corpus,
    run_pipeline,
    summarize_document,
)
from .lsa import DimensionPolicy, SvdResult, choose_k, decompose, with_dimension
from .preprocess import (
    PreprocessConfig,
    Sentence,
    TokenizedDocument,
    document_from_tokens,
    preprocess,
    segment_sentences,
    tokenize,
)
from .rouge import (
    RougeScore,
    TruncationMode,
    evaluate_text,
    rouge_l,
    rouge_n,
    rouge_tokenize,
    truncate,
)
from .selection import Summary, SummaryBudget, score_sentences, select
from .stemming import porter_stem
from .weighting import (
    AWEF,
    EMBAWEF,
    TFIDF,
    InputMatrix,
    OovReport,
    SimilarityMatrices,
    augment_weight,
    build_input_matrix,
    build_similarity,
    drop_oov,
    embaw,
    embef,
    entropy_frequency,
    occurrence_counts,
    tfidf_components,
)

__version__ = "0.1.0"
