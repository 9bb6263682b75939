"""Input-matrix schemes: similarity accumulation, local/global weights."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle_weighting as oracle
from conftest import random_store, random_token_document, store_vectors_as_floats
from lsasum.embeddings import EmbeddingStore
from lsasum.errors import ConfigError, EmptyVocabularyError, SingleSentenceError
from lsasum.preprocess import document_from_tokens
from lsasum.weighting import (
    AWEF,
    EMBAWEF,
    TFIDF,
    augment_weight,
    build_input_matrix,
    build_similarity,
    drop_oov,
    embaw,
    embef,
    entropy_frequency,
    format_matrix_dump,
    format_matrix_table,
    occurrence_counts,
    tfidf_components,
)


def axis_store():
    """Three terms: two orthogonal axes and their diagonal mix."""
    return EmbeddingStore.from_mapping(
        {
            "which": [1.0, 0.0],
            "way": [0.0, 1.0],
            "both": [2.0**-0.5, 2.0**-0.5],
        }
    )


def axis_doc():
    return document_from_tokens([["which", "way"], ["both"]])


# ---------------------------------------------------------------------------
# similarity accumulation


def test_similarity_toy_values():
    sim = build_similarity(axis_doc(), axis_store())
    # sentence 0 holds one occurrence of each axis word
    root_half = 2.0**-0.5
    expected = np.array(
        [
            [1.0, root_half],  # which: cos=1 with itself, 1/sqrt(2) with the mix
            [1.0, root_half],
            [2.0 * root_half, 1.0],  # both: sqrt(2) against sentence 0
        ]
    )
    np.testing.assert_allclose(sim.term_sent_sim, expected, atol=1e-9)
    np.testing.assert_allclose(sim.term_doc_sim, expected.sum(axis=1), atol=1e-9)
    np.testing.assert_allclose(sim.col_max, [2.0 * root_half, 1.0], atol=1e-9)
    assert sim.empty_columns == ()
    assert sim.clamped


def test_similarity_counts_repeated_tokens():
    doc = document_from_tokens([["which", "which", "which"]])
    sim = build_similarity(doc, axis_store())
    assert sim.term_sent_sim[0, 0] == pytest.approx(3.0, abs=1e-12)


def test_similarity_clamp_toggle():
    store = EmbeddingStore.from_mapping({"hot": [1.0, 0.0], "cold": [-1.0, 0.0]})
    doc = document_from_tokens([["hot"], ["cold"]])
    clamped = build_similarity(doc, store)
    raw = build_similarity(doc, store, clamp=False)
    assert clamped.term_sent_sim[0, 1] == 0.0
    assert raw.term_sent_sim[0, 1] == pytest.approx(-1.0, abs=1e-12)
    assert not raw.clamped


def test_similarity_empty_vocabulary_raises():
    doc = document_from_tokens([["solo"]])
    stripped, _ = drop_oov(doc, EmbeddingStore.from_mapping({"other": [1.0]}))
    with pytest.raises(EmptyVocabularyError):
        build_similarity(stripped, axis_store())


def test_similarity_unresolved_term_raises():
    doc = document_from_tokens([["mystery"]])
    with pytest.raises(KeyError):
        build_similarity(doc, axis_store())


# ---------------------------------------------------------------------------
# local weight


def test_embaw_toy_values():
    sim = build_similarity(axis_doc(), axis_store())
    local = embaw(sim)
    # axis words against sentence 0: 0.5 + 0.5 * 1 / sqrt(2)
    assert local[0, 0] == pytest.approx(0.8535533906, abs=1e-9)
    assert local[1, 0] == pytest.approx(0.8535533906, abs=1e-9)
    # the column-maximum term lands exactly on 1.0, not approximately
    assert local[2, 0] == 1.0
    assert local[2, 1] == 1.0


def test_embaw_range_under_clamping():
    rng = np.random.default_rng(7)
    for seed in range(20):
        words, sentences = random_token_document(rng)
        store = random_store(words, dim=8, seed=seed)
        doc = document_from_tokens(sentences)
        local = embaw(build_similarity(doc, store))
        assert (local >= 0.5 - 1e-12).all() and (local <= 1.0 + 1e-12).all()
        # every column's best term sits exactly at the top of the band
        assert (local.max(axis=0) == 1.0).all()


def test_embaw_dead_column_falls_back_flat():
    store = EmbeddingStore.from_mapping({"word": [1.0], "ghost": [1.0]})
    doc = document_from_tokens([["word"], ["ghost"]])
    trimmed, _ = drop_oov(
        doc, EmbeddingStore.from_mapping({"word": [1.0]}), case_fold_fallback=False
    )
    sim = build_similarity(trimmed, store)
    assert sim.empty_columns == (1,)
    local = embaw(sim)
    np.testing.assert_array_equal(local[:, 1], [0.5])


def test_augment_weight_counts():
    counts = np.array([[2.0, 0.0], [4.0, 1.0]])
    local = augment_weight(counts)
    np.testing.assert_allclose(local, [[0.75, 0.5], [1.0, 1.0]], atol=1e-12)


# ---------------------------------------------------------------------------
# global weight


def sim_from_rows(rows):
    from lsasum.weighting import SimilarityMatrices

    return SimilarityMatrices(
        term_sent_sim=rows,
        term_doc_sim=rows.sum(axis=1),
        col_max=rows.max(axis=0),
        empty_columns=(),
        clamped=True,
    )


def test_embef_extremes():
    # fully concentrated similarity mass: weight exactly 1
    concentrated = sim_from_rows(np.array([[3.0, 0.0, 0.0, 0.0]]))
    assert embef(concentrated)[0] == pytest.approx(1.0, abs=1e-9)
    # exactly uniform mass: weight exactly 0
    uniform = sim_from_rows(np.array([[0.7, 0.7, 0.7, 0.7]]))
    assert embef(uniform)[0] == pytest.approx(0.0, abs=1e-9)


def test_entropy_frequency_two_even_occurrences():
    counts = np.array([[2.0, 2.0]])
    assert entropy_frequency(counts)[0] == pytest.approx(0.0, abs=1e-12)


def test_entropy_frequency_range():
    rng = np.random.default_rng(13)
    for _ in range(25):
        counts = rng.integers(0, 4, size=(5, 4)).astype(float)
        counts[counts.sum(axis=1) == 0.0, 0] = 1.0  # no silent all-zero rows
        weights = entropy_frequency(counts)
        assert (weights >= -1e-12).all() and (weights <= 1.0 + 1e-12).all()


def test_entropy_single_sentence_raises():
    with pytest.raises(SingleSentenceError):
        entropy_frequency(np.array([[3.0]]))
    with pytest.raises(SingleSentenceError):
        embef(sim_from_rows(np.array([[1.0]])))


def test_embef_nan_for_massless_rows():
    rows = np.array([[1.0, -1.0], [0.5, 0.5]])
    weights = embef(sim_from_rows(rows))
    assert np.isnan(weights[0])
    assert np.isfinite(weights[1])


# ---------------------------------------------------------------------------
# tf-idf


def test_tfidf_components():
    counts = np.array(
        [
            [2.0, 0.0, 0.0, 0.0],  # appears in 1 of 4 sentences
            [1.0, 1.0, 1.0, 1.0],  # appears everywhere
        ]
    )
    local, glob = tfidf_components(counts)
    np.testing.assert_array_equal(local, counts)
    assert glob[0] == pytest.approx(math.log(4.0), abs=1e-12)
    assert glob[1] == 0.0


def test_tfidf_matrix_value():
    doc = document_from_tokens([["rare", "rare"], ["base"], ["base"], ["base"]])
    matrix = build_input_matrix(doc, scheme=TFIDF)
    row = matrix.term_order.index("rare")
    assert matrix.a[row, 0] == pytest.approx(2.0 * math.log(4.0), abs=1e-9)


# ---------------------------------------------------------------------------
# matrix composition


def test_build_input_matrix_embawef_composition():
    doc = axis_doc()
    matrix = build_input_matrix(doc, scheme=EMBAWEF, store=axis_store())
    assert matrix.scheme == EMBAWEF
    assert matrix.term_order == ("which", "way", "both")
    np.testing.assert_allclose(
        matrix.a, matrix.local * matrix.global_weight[:, None], atol=1e-12
    )
    assert matrix.similarity is not None
    assert matrix.dropped_terms == ()


def test_build_input_matrix_requires_store_for_embawef():
    with pytest.raises(ConfigError):
        build_input_matrix(axis_doc(), scheme=EMBAWEF, store=None)


def test_build_input_matrix_unknown_scheme():
    with pytest.raises(ConfigError):
        build_input_matrix(axis_doc(), scheme="LEXRANK")


def test_build_input_matrix_empty_document():
    doc = document_from_tokens([])
    with pytest.raises(EmptyVocabularyError):
        build_input_matrix(doc, scheme=TFIDF)


def test_single_sentence_global_weight_falls_back_to_one():
    doc = document_from_tokens([["which", "way"]])
    matrix = build_input_matrix(doc, scheme=EMBAWEF, store=axis_store())
    np.testing.assert_array_equal(matrix.global_weight, np.ones(2))
    awef = build_input_matrix(doc, scheme=AWEF)
    np.testing.assert_array_equal(awef.global_weight, np.ones(2))


def test_raw_cosines_drop_massless_terms(caplog):
    store = EmbeddingStore.from_mapping(
        {"hot": [1.0, 0.0], "cold": [-1.0, 0.0], "side": [0.0, 1.0]}
    )
    doc = document_from_tokens([["hot"], ["cold"], ["side"]])
    with caplog.at_level("WARNING"):
        matrix = build_input_matrix(doc, scheme=EMBAWEF, store=store, clamp=False)
    # hot and cold annihilate each other's row mass; side survives
    assert matrix.dropped_terms == ("hot", "cold")
    assert matrix.term_order == ("side",)
    assert matrix.a.shape == (1, 3)
    assert matrix.similarity.term_sent_sim.shape == (1, 3)
    assert "non-positive similarity mass" in caplog.text


def test_raw_cosines_all_terms_massless():
    store = EmbeddingStore.from_mapping({"hot": [1.0], "cold": [-1.0]})
    doc = document_from_tokens([["hot"], ["cold"]])
    with pytest.raises(EmptyVocabularyError):
        build_input_matrix(doc, scheme=EMBAWEF, store=store, clamp=False)


# ---------------------------------------------------------------------------
# invariances


def test_sentence_permutation_moves_columns():
    words, sentences = random_token_document(np.random.default_rng(5))
    store = random_store(words, dim=8, seed=5)
    base = build_input_matrix(
        document_from_tokens(sentences), scheme=EMBAWEF, store=store
    )
    perm = list(reversed(range(len(sentences))))
    permuted = build_input_matrix(
        document_from_tokens([sentences[j] for j in perm]), scheme=EMBAWEF, store=store
    )
    # same terms, possibly reordered rows, columns shuffled by the permutation
    assert set(base.term_order) == set(permuted.term_order)
    base_rows = {t: i for i, t in enumerate(base.term_order)}
    for i, term in enumerate(permuted.term_order):
        np.testing.assert_allclose(
            permuted.a[i], base.a[base_rows[term]][perm], atol=1e-9
        )
    # global weights do not depend on sentence order
    for i, term in enumerate(permuted.term_order):
        assert permuted.global_weight[i] == pytest.approx(
            base.global_weight[base_rows[term]], abs=1e-9
        )


def test_embedding_scale_invariance():
    # powers of two rescale float32 exactly, isolating the math from storage
    words, sentences = random_token_document(np.random.default_rng(17))
    doc = document_from_tokens(sentences)
    store = random_store(words, dim=8, seed=17)
    scaled = EmbeddingStore.from_mapping(
        {w: np.asarray(store.lookup(w), dtype=np.float64) * 4.0 for w in words}
    )
    base = build_input_matrix(doc, scheme=EMBAWEF, store=store)
    again = build_input_matrix(doc, scheme=EMBAWEF, store=scaled)
    np.testing.assert_allclose(again.a, base.a, atol=1e-9)


def test_embedding_scale_invariance_arbitrary_factor():
    # non-dyadic factors re-round under float32 storage; the result drifts by
    # storage epsilon, not by anything scale dependent
    words, sentences = random_token_document(np.random.default_rng(19))
    doc = document_from_tokens(sentences)
    store = random_store(words, dim=8, seed=19)
    scaled = EmbeddingStore.from_mapping(
        {w: np.asarray(store.lookup(w), dtype=np.float64) * 3.7 for w in words}
    )
    base = build_input_matrix(doc, scheme=EMBAWEF, store=store)
    again = build_input_matrix(doc, scheme=EMBAWEF, store=scaled)
    np.testing.assert_allclose(again.a, base.a, atol=1e-5)


# ---------------------------------------------------------------------------
# OOV handling


def test_drop_oov_keeps_sentence_slots():
    store = EmbeddingStore.from_mapping({"alpha": [1.0], "beta": [0.5]})
    doc = document_from_tokens([["alpha", "zzz"], ["zzz"], ["beta"]])
    trimmed, report = drop_oov(doc, store)
    assert report.dropped_terms == ("zzz",)
    assert report.dropped_count == 1
    assert report.resolved == {"alpha": "alpha", "beta": "beta"}
    assert trimmed.n_sentences == 3
    assert trimmed.sentences[1].tokens == ()
    assert trimmed.vocabulary == ("alpha", "beta")


def test_drop_oov_case_fallback():
    store = EmbeddingStore.from_mapping({"obama": [1.0]})
    doc = document_from_tokens([["Obama"]])
    trimmed, report = drop_oov(doc, store)
    assert report.resolved == {"Obama": "obama"}
    assert trimmed.vocabulary == ("Obama",)
    strict, report = drop_oov(doc, store, case_fold_fallback=False)
    assert report.dropped_terms == ("Obama",)
    assert strict.vocabulary == ()


def test_occurrence_counts():
    doc = document_from_tokens([["a", "b", "a"], ["b"]])
    np.testing.assert_array_equal(
        occurrence_counts(doc), np.array([[2.0, 0.0], [1.0, 1.0]])
    )


# ---------------------------------------------------------------------------
# oracle agreement (small smoke; the full sweep runs in the acceptance suite)


@pytest.mark.parametrize("scheme", [EMBAWEF, AWEF, TFIDF])
def test_matches_brute_force_reference(scheme):
    rng = np.random.default_rng(101)
    for seed in range(10):
        words, sentences = random_token_document(rng)
        store = random_store(words, dim=8, seed=1000 + seed)
        doc = document_from_tokens(sentences)
        matrix = build_input_matrix(doc, scheme=scheme, store=store)
        vectors = store_vectors_as_floats(store, words)
        expected = oracle.input_matrix(sentences, scheme, vectors=vectors)
        np.testing.assert_allclose(matrix.a, np.array(expected), atol=1e-9)


# ---------------------------------------------------------------------------
# dumps


def test_format_matrix_dump_round_trip():
    matrix = build_input_matrix(axis_doc(), scheme=EMBAWEF, store=axis_store())
    dump = format_matrix_dump(matrix)
    lines = dump.strip().split("\n")
    m, n, scheme = lines[0].split()
    assert (int(m), int(n)) == matrix.a.shape
    assert scheme == EMBAWEF
    parsed = np.array([[float(x) for x in line.split()] for line in lines[1:]])
    np.testing.assert_allclose(parsed, matrix.a, atol=1e-8)


def test_format_matrix_table_labels_terms():
    matrix = build_input_matrix(axis_doc(), scheme=EMBAWEF, store=axis_store())
    table = format_matrix_table(matrix)
    for term in matrix.term_order:
        assert term in table
    assert "A = local * global" in table
    assert "term-sentence similarity" in table
