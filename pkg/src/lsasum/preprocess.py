"""Sentence segmentation and token normalization.

The pipeline is deliberately rule based and deterministic: a regex boundary
detector with an abbreviation exception list, contraction expansion, a
word-character tokenizer, and stopword removal. Term identity stays
case-sensitive; stopword matching does not.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import IoError
from .kv import parse_bool, parse_kv_file

# ---------------------------------------------------------------------------
# bundled resources

_DATA = resources.files("lsasum") / "data"


def _read_word_list(path: str | Path | None, default_name: str) -> frozenset[str]:
    if path is None:
        text = (_DATA / default_name).read_text(encoding="utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot read word list {path}: {exc}") from exc
    words = set()
    for line in text.splitlines():
        entry = line.strip()
        if entry and not entry.startswith("#"):
            words.add(entry.casefold())
    return frozenset(words)


@lru_cache(maxsize=None)
def load_stopwords(path: str | None = None) -> frozenset[str]:
    """Stopword set, casefolded. `path=None` loads the bundled list."""
    return _read_word_list(path, "stopwords.txt")


@lru_cache(maxsize=None)
def load_abbreviations(path: str | None = None) -> frozenset[str]:
    """Abbreviation exception set for the sentence splitter."""
    return _read_word_list(path, "abbreviations.txt")


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class PreprocessConfig:
    """Knobs for tokenization; also carries the embedding lookup case policy."""

    stopwords_path: str | None = None
    expand_contractions: bool = True
    case_fold_fallback: bool = True

    @classmethod
    def from_file(cls, path: str | Path) -> "PreprocessConfig":
        """Load from a flat key-value file; unrelated keys are ignored so a
        shared pipeline config can be passed straight through."""
        raw = parse_kv_file(path)
        kwargs = {}
        if "stopwords_path" in raw:
            kwargs["stopwords_path"] = raw["stopwords_path"] or None
        if "expand_contractions" in raw:
            kwargs["expand_contractions"] = parse_bool(
                raw["expand_contractions"], "expand_contractions"
            )
        if "case_fold_fallback" in raw:
            kwargs["case_fold_fallback"] = parse_bool(
                raw["case_fold_fallback"], "case_fold_fallback"
            )
        return cls(**kwargs)

    def stopwords(self) -> frozenset[str]:
        return load_stopwords(self.stopwords_path)


# ---------------------------------------------------------------------------
# contraction expansion

_IRREGULAR_CONTRACTIONS = {
    "won't": "will not",
    "can't": "cannot",
    "shan't": "shall not",
    "ain't": "is not",
    "let's": "let us",
    "it's": "it is",
    "he's": "he is",
    "she's": "she is",
    "that's": "that is",
    "there's": "there is",
    "here's": "here is",
    "what's": "what is",
    "who's": "who is",
    "where's": "where is",
    "when's": "when is",
    "why's": "why is",
    "how's": "how is",
    "y'all": "you all",
    "ma'am": "madam",
}

# Applied only when no irregular form matches; 'd is genuinely ambiguous
# (would/had) and "would" is the best-effort pick.
_CONTRACTION_SUFFIXES = (
    ("n't", " not"),
    ("'re", " are"),
    ("'ve", " have"),
    ("'ll", " will"),
    ("'m", " am"),
    ("'d", " would"),
)

_CONTRACTION = re.compile(r"[A-Za-z]+(?:['’][A-Za-z]+)+")


def _expand_one(match: re.Match) -> str:
    word = match.group(0)
    key = word.replace("’", "'").lower()
    if key in _IRREGULAR_CONTRACTIONS:
        replacement = _IRREGULAR_CONTRACTIONS[key]
    else:
        for suffix, tail in _CONTRACTION_SUFFIXES:
            if key.endswith(suffix) and len(key) > len(suffix):
                replacement = key[: -len(suffix)] + tail
                break
        else:
            return word  # possessive 's, o'clock, and similar stay intact
    if word[0].isupper():
        replacement = replacement[0].upper() + replacement[1:]
    return replacement


def expand_contractions(text: str) -> str:
    """Rewrite known contractions as their full forms ("it's" -> "it is")."""
    return _CONTRACTION.sub(_expand_one, text)


# ---------------------------------------------------------------------------
# sentence segmentation

# A boundary is a sentence-final punctuation group (with any closing quotes
# or brackets) followed by whitespace and an optionally quoted capital or
# digit. Periods additionally pass through the abbreviation filter.
_BOUNDARY = re.compile(
    r"[.?!]+[\"'”’)\]]*" r"(?=\s+[\"'“‘(\[]*[A-Z0-9])"
)

_CLOSERS = "\"'”’)]"
_OPENERS = "\"'“‘(["


def _suppressed_by_abbreviation(
    text: str, match: re.Match, abbreviations: frozenset[str]
) -> bool:
    group = match.group(0).rstrip(_CLOSERS)
    if set(group) != {"."}:
        return False  # '?' and '!' always split
    preceding = re.search(r"(\S+)$", text[: match.start()])
    if preceding is None:
        return False
    token = preceding.group(1).lstrip(_OPENERS).rstrip(".")
    return token.casefold() in abbreviations


def segment_sentences(
    text: str, abbreviations_path: str | None = None
) -> list[tuple[tuple[int, int], str]]:
    """Split `text` into sentences.

    Returns a list of ((start, end), sentence_text) pairs with spans into the
    original string. Spans include the terminal punctuation group and exclude
    surrounding whitespace, so concatenating the spans in order reproduces the
    document minus inter-sentence whitespace. Empty or whitespace-only input
    yields an empty list; a final fragment without terminal punctuation still
    becomes a sentence.
    """
    abbreviations = load_abbreviations(abbreviations_path)
    cuts = [0]
    for match in _BOUNDARY.finditer(text):
        if not _suppressed_by_abbreviation(text, match, abbreviations):
            cuts.append(match.end())
    cuts.append(len(text))

    sentences = []
    for left, right in zip(cuts, cuts[1:]):
        segment = text[left:right]
        lead = len(segment) - len(segment.lstrip())
        start = left + lead
        end = start + len(segment.strip())
        if end > start:
            sentences.append(((start, end), text[start:end]))
    return sentences


# ---------------------------------------------------------------------------
# tokenization

_TOKEN = re.compile(r"\w+(?:['’\-]\w+)*")


def tokenize(text: str, config: PreprocessConfig | None = None) -> list[str]:
    """Normalize one sentence to content tokens.

    Contractions are expanded first (when enabled), then word-character runs
    are extracted (so punctuation-only tokens never appear) and stopwords are
    removed case-insensitively. Original casing is preserved on the surviving
    tokens. The function is idempotent: feeding the joined output back in
    returns the same tokens.
    """
    config = config or PreprocessConfig()
    if config.expand_contractions:
        text = expand_contractions(text)
    stopwords = config.stopwords()
    return [t for t in _TOKEN.findall(text) if t.casefold() not in stopwords]


# ---------------------------------------------------------------------------
# document assembly


@dataclass(frozen=True)
class Sentence:
    """One kept sentence: its original index, tokens, and character span."""

    index: int
    tokens: tuple[str, ...]
    char_span: tuple[int, int]


@dataclass(frozen=True)
class TokenizedDocument:
    sentences: tuple[Sentence, ...]
    vocabulary: tuple[str, ...]  # distinct terms, first-occurrence order
    raw_text: str
    dropped_indices: tuple[int, ...] = ()

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    def sentence_text(self, sentence: Sentence) -> str:
        start, end = sentence.char_span
        return self.raw_text[start:end]


def _ordered_vocabulary(sentences: tuple[Sentence, ...]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for sentence in sentences:
        for token in sentence.tokens:
            seen.setdefault(token, None)
    return tuple(seen)


def preprocess(text: str, config: PreprocessConfig | None = None) -> TokenizedDocument:
    """Segment, tokenize, and index a document.

    Sentences left empty by normalization are dropped; their original
    segmentation indices are recorded so downstream reports can account for
    them. Kept sentences retain their original indices.
    """
    config = config or PreprocessConfig()
    kept = []
    dropped = []
    for index, (span, sentence_text) in enumerate(segment_sentences(text)):
        tokens = tokenize(sentence_text, config)
        if tokens:
            kept.append(Sentence(index=index, tokens=tuple(tokens), char_span=span))
        else:
            dropped.append(index)
    sentences = tuple(kept)
    return TokenizedDocument(
        sentences=sentences,
        vocabulary=_ordered_vocabulary(sentences),
        raw_text=text,
        dropped_indices=tuple(dropped),
    )


def document_from_tokens(token_lists: list[list[str]]) -> TokenizedDocument:
    """Build a document directly from token lists, bypassing text analysis.

    Intended for synthetic inputs in tests and experiment scripts; the raw
    text is the space-joined tokens so spans and budgets stay meaningful.
    """
    sentences = []
    pieces = []
    cursor = 0
    for index, tokens in enumerate(token_lists):
        piece = " ".join(tokens)
        span = (cursor, cursor + len(piece))
        sentences.append(Sentence(index=index, tokens=tuple(tokens), char_span=span))
        pieces.append(piece)
        cursor += len(piece) + 1
    doc_sentences = tuple(sentences)
    return TokenizedDocument(
        sentences=doc_sentences,
        vocabulary=_ordered_vocabulary(doc_sentences),
        raw_text=" ".join(pieces),
    )
