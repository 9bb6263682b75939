"""Sentence scoring and budgeted greedy selection.

A sentence's salience is the length of its row in the sigma-weighted concept
space: sqrt(sum_i (sigma_i * vt[i, j])^2) over the first k concepts. That
quantity is invariant to the sign ambiguity of singular vectors and scales
linearly with the input matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .lsa import SvdResult
from .preprocess import TokenizedDocument

WORDS = "words"
CHARACTERS = "characters"
SENTENCES = "sentences"
_BUDGET_KINDS = (WORDS, CHARACTERS, SENTENCES)


@dataclass(frozen=True)
class SummaryBudget:
    """Length cap: words (whitespace tokens), characters (UTF-8 bytes,
    spaces included), or a sentence count."""

    kind: str
    limit: int

    def __post_init__(self):
        if self.kind not in _BUDGET_KINDS:
            raise ConfigError(f"unknown budget kind {self.kind!r}")
        if not isinstance(self.limit, int) or self.limit < 1:
            raise ConfigError(f"budget limit must be an integer >= 1, got {self.limit}")


@dataclass(frozen=True)
class Summary:
    """Selected sentences in document order, plus selection bookkeeping.

    `selected` pairs each original sentence index with its score, ordered by
    position in the document; `rank_order` records the same indices in the
    order selection visited them (nonincreasing score). `over_budget` marks
    the no-fit fallback where the single top sentence exceeds the budget.
    """

    selected: tuple[tuple[int, float], ...]
    text: str
    rank_order: tuple[int, ...]
    over_budget: bool = False


def score_sentences(result: SvdResult) -> np.ndarray:
    """Singular-value-weighted concept score per sentence (column)."""
    k = result.k
    if k == 0:
        return np.zeros(result.vt.shape[1])
    weighted = result.sigma[:k, None] * result.vt[:k, :]
    return np.sqrt((weighted**2).sum(axis=0))


def _cost(kind: str, raw: str) -> int:
    if kind == WORDS:
        return len(raw.split())
    if kind == CHARACTERS:
        return len(raw.encode("utf-8"))
    return 1


def select(
    scores: np.ndarray, doc: TokenizedDocument, budget: SummaryBudget
) -> Summary:
    """Greedy selection by descending score under a length budget.

    Ties go to the earlier sentence. Selection stops at the first sentence
    that would overflow the budget (no skipping ahead to shorter, lower
    ranked ones), so enlarging the budget can only extend the chosen prefix.
    If even the first choice does not fit, it is returned alone and flagged
    over budget so the summary is never empty. The character budget counts
    the bytes of the assembled summary, including the single joining space
    between sentences.
    """
    scores = np.asarray(scores, dtype=np.float64)
    if len(scores) != doc.n_sentences:
        raise ConfigError(
            f"{len(scores)} scores for {doc.n_sentences} sentences; these must match"
        )
    if doc.n_sentences == 0:
        return Summary(selected=(), text="", rank_order=(), over_budget=False)

    ranked = sorted(range(len(scores)), key=lambda j: (-scores[j], j))
    chosen: list[int] = []
    spent = 0
    for j in ranked:
        raw = doc.sentence_text(doc.sentences[j])
        cost = _cost(budget.kind, raw)
        if budget.kind == CHARACTERS and chosen:
            cost += 1  # joining space
        if spent + cost > budget.limit:
            break
        chosen.append(j)
        spent += cost

    over_budget = False
    if not chosen:
        chosen = [ranked[0]]
        over_budget = True

    rank_order = tuple(doc.sentences[j].index for j in chosen)
    in_doc_order = sorted(chosen)
    text = " ".join(doc.sentence_text(doc.sentences[j]) for j in in_doc_order)
    selected = tuple(
        (doc.sentences[j].index, float(scores[j])) for j in in_doc_order
    )
    return Summary(
        selected=selected, text=text, rank_order=rank_order, over_budget=over_budget
    )
