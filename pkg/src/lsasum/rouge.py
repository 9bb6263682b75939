"""ROUGE-1/2/L with candidate truncation and multi-reference aggregation.

This evaluator is self-contained and independent of the summarizer's own
text pipeline: scoring tokenization is lowercase + punctuation stripping +
whitespace split, with optional Porter stemming (default on) and optional
stopword removal (default off, i.e. stopwords kept).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ConfigError
from .preprocess import load_stopwords
from .stemming import porter_stem

R1 = "r1"
R2 = "r2"
RL = "rl"
METRICS = (R1, R2, RL)

AGG_MAX = "max"
AGG_AVG = "avg"


@dataclass(frozen=True)
class RougeScore:
    """recall/precision/f1 for one metric; f1 = 2pr/(p+r), or 0 when p+r = 0."""

    metric: str
    recall: float
    precision: float
    f1: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _score(metric: str, matches: float, cand_total: int, ref_total: int) -> RougeScore:
    recall = matches / ref_total if ref_total else 0.0
    precision = matches / cand_total if cand_total else 0.0
    return RougeScore(metric, recall, precision, _f1(precision, recall))


# ---------------------------------------------------------------------------
# tokenization and truncation

_PUNCT_EDGE = re.compile(r"[^0-9a-z]+")


def rouge_tokenize(
    text: str,
    stem: bool = True,
    keep_stopwords: bool = True,
    stopwords_path: str | None = None,
) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace; then the toggles."""
    tokens = []
    for raw in text.lower().split():
        cleaned = _PUNCT_EDGE.sub("", raw)
        if cleaned:
            tokens.append(cleaned)
    if not keep_stopwords:
        stopwords = load_stopwords(stopwords_path)
        tokens = [t for t in tokens if t not in stopwords]
    if stem:
        tokens = [porter_stem(t) for t in tokens]
    return tokens


@dataclass(frozen=True)
class TruncationMode:
    """Candidate cap applied before scoring: words(N), bytes(N), or none."""

    kind: str  # "words" | "bytes" | "none"
    limit: int = 0

    @classmethod
    def none(cls) -> "TruncationMode":
        return cls("none")

    @classmethod
    def parse(cls, spec: str) -> "TruncationMode":
        """Parse 'words:100', 'bytes:75', or 'none'."""
        if spec == "none":
            return cls.none()
        kind, sep, raw = spec.partition(":")
        if sep and kind in ("words", "bytes"):
            try:
                limit = int(raw)
            except ValueError:
                limit = 0
            if limit >= 1:
                return cls(kind, limit)
        raise ConfigError(f"bad truncation spec {spec!r}; use words:N, bytes:N, or none")


def truncate(text: str, mode: TruncationMode) -> str:
    """Cap a candidate by whitespace words or UTF-8 bytes.

    The byte cap never splits a multibyte character: the cut falls back to
    the last complete character at or below the limit.
    """
    if mode.kind == "none":
        return text
    if mode.kind == "words":
        return " ".join(text.split()[: mode.limit])
    if mode.kind == "bytes":
        encoded = text.encode("utf-8")
        if len(encoded) <= mode.limit:
            return text
        cut = mode.limit
        while cut > 0 and (encoded[cut] & 0xC0) == 0x80:
            cut -= 1  # inside a multibyte sequence
        return encoded[:cut].decode("utf-8")
    raise ConfigError(f"unknown truncation kind {mode.kind!r}")


# ---------------------------------------------------------------------------
# metric cores

def _ngram_counts(tokens: list[str], n: int) -> dict[tuple[str, ...], int]:
    counts: dict[tuple[str, ...], int] = {}
    for i in range(len(tokens) - n + 1):
        gram = tuple(tokens[i : i + n])
        counts[gram] = counts.get(gram, 0) + 1
    return counts


def _lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length, O(len(a) * len(b)) with one row."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def _aggregate(metric: str, per_ref: list[RougeScore], agg: str) -> RougeScore:
    if not per_ref:
        return RougeScore(metric, 0.0, 0.0, 0.0)
    if agg == AGG_MAX:
        return max(per_ref, key=lambda s: s.f1)
    if agg == AGG_AVG:
        recall = sum(s.recall for s in per_ref) / len(per_ref)
        precision = sum(s.precision for s in per_ref) / len(per_ref)
        return RougeScore(metric, recall, precision, _f1(precision, recall))
    raise ConfigError(f"unknown rouge aggregation {agg!r}; use max or avg")


def rouge_n(
    candidate: list[str],
    references: list[list[str]],
    n: int,
    agg: str = AGG_MAX,
) -> RougeScore:
    """Clipped n-gram overlap (n = 1 or 2) against one or more references.

    Matches are multiset-clipped: a candidate n-gram counts at most as often
    as it appears in the reference. References too short to contain any
    n-gram contribute nothing to the aggregate; with no scorable reference
    the result is all zeros, as it is for an empty candidate.
    """
    if n not in (1, 2):
        raise ConfigError(f"rouge_n supports n in {{1, 2}}, got {n}")
    metric = R1 if n == 1 else R2
    cand_counts = _ngram_counts(candidate, n)
    cand_total = max(len(candidate) - n + 1, 0)
    per_ref = []
    for reference in references:
        ref_total = max(len(reference) - n + 1, 0)
        if ref_total == 0:
            continue
        ref_counts = _ngram_counts(reference, n)
        matches = 0
        if cand_counts:
            small, large = (
                (cand_counts, ref_counts)
                if len(cand_counts) <= len(ref_counts)
                else (ref_counts, cand_counts)
            )
            matches = sum(min(c, large.get(g, 0)) for g, c in small.items())
        per_ref.append(_score(metric, float(matches), cand_total, ref_total))
    return _aggregate(metric, per_ref, agg)


def rouge_l(
    candidate: list[str],
    references: list[list[str]],
    agg: str = AGG_MAX,
) -> RougeScore:
    """LCS-based score over the flat token sequences.

    Per reference: recall = lcs / len(reference), precision = lcs /
    len(candidate). Empty candidate or reference scores zero.
    """
    per_ref = []
    for reference in references:
        if not reference:
            continue
        lcs = _lcs_length(candidate, reference)
        per_ref.append(_score(RL, float(lcs), len(candidate), len(reference)))
    return _aggregate(RL, per_ref, agg)


# ---------------------------------------------------------------------------
# text-level entry point


def evaluate_text(
    candidate_text: str,
    reference_texts: list[str],
    metrics: tuple[str, ...] = METRICS,
    truncation: TruncationMode | None = None,
    stem: bool = True,
    keep_stopwords: bool = True,
    agg: str = AGG_MAX,
) -> dict[str, RougeScore]:
    """Tokenize, optionally truncate the candidate, and score each metric."""
    for metric in metrics:
        if metric not in METRICS:
            raise ConfigError(f"unknown metric {metric!r}; expected subset of {METRICS}")
    candidate_text = truncate(candidate_text, truncation or TruncationMode.none())
    candidate = rouge_tokenize(candidate_text, stem, keep_stopwords)
    references = [rouge_tokenize(r, stem, keep_stopwords) for r in reference_texts]
    out: dict[str, RougeScore] = {}
    for metric in metrics:
        if metric == R1:
            out[metric] = rouge_n(candidate, references, 1, agg)
        elif metric == R2:
            out[metric] = rouge_n(candidate, references, 2, agg)
        else:
            out[metric] = rouge_l(candidate, references, agg)
    return out
