"""Pretrained word vector stores: word2vec binary and GloVe text formats.

Vectors are kept as loaded (float32) for faithful round-trips; the unit
vectors handed to the similarity kernel are computed once in float64 so that
cosines reduce to dot products without float32 normalization noise.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    DataError,
    DegenerateVectorError,
    FormatError,
    IoError,
    RecordError,
    TruncationError,
)

log = logging.getLogger(__name__)

WORD2VEC_BINARY = "word2vec-bin"
GLOVE_TEXT = "glove-txt"
IN_MEMORY = "memory"


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine of the angle between two vectors, computed in float64.

    Raises DegenerateVectorError when either vector has zero norm and
    DataError on shape mismatch or non-finite input.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise DataError(f"cosine needs two equal-length vectors, got {u.shape} and {v.shape}")
    if not (np.isfinite(u).all() and np.isfinite(v).all()):
        raise DataError("cosine input contains non-finite values")
    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u == 0.0 or norm_v == 0.0:
        raise DegenerateVectorError("cosine undefined for zero-norm vectors")
    return float(np.dot(u, v) / (norm_u * norm_v))


class EmbeddingStore:
    """Immutable term -> vector mapping.

    Lookups of absent terms return None; nothing is ever silently mapped to a
    zero vector. `resolve` implements the case policy: exact match first,
    lowercase fallback on miss when enabled.
    """

    def __init__(
        self,
        words: Sequence[str],
        vectors: np.ndarray,
        source_format: str = IN_MEMORY,
    ):
        vectors = np.asarray(vectors, dtype=np.float32)
        if vectors.ndim != 2 or len(words) != vectors.shape[0]:
            raise DataError("embedding matrix must be (len(words), dimension)")
        if vectors.shape[1] < 1:
            raise DataError("embedding dimension must be positive")
        if not np.isfinite(vectors).all():
            raise DataError("embedding matrix contains non-finite values")
        self._index: dict[str, int] = {}
        for word in words:
            if word in self._index:
                raise DataError(f"duplicate embedding entry {word!r}")
            self._index[word] = len(self._index)
        self._vectors = vectors
        self._vectors.setflags(write=False)
        units = vectors.astype(np.float64)
        norms = np.linalg.norm(units, axis=1)
        zero_rows = int(np.count_nonzero(norms == 0.0))
        if zero_rows:
            log.warning("%d zero-norm embedding rows; they match nothing", zero_rows)
        np.divide(units, norms[:, None], out=units, where=norms[:, None] > 0.0)
        self._units = units
        self._units.setflags(write=False)
        self.source_format = source_format

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[str, Iterable[float]], source_format: str = IN_MEMORY
    ) -> "EmbeddingStore":
        words = list(mapping)
        matrix = np.array([np.asarray(mapping[w], dtype=np.float32) for w in words])
        return cls(words, matrix, source_format)

    @property
    def dimension(self) -> int:
        return self._vectors.shape[1]

    @property
    def vocab_size(self) -> int:
        return len(self._index)

    def __len__(self) -> int:
        return len(self._index)

    def __contains__(self, term: str) -> bool:
        return term in self._index

    def terms(self) -> Iterator[str]:
        return iter(self._index)

    def lookup(self, term: str) -> np.ndarray | None:
        """Stored (float32) vector for `term`, or None when absent."""
        row = self._index.get(term)
        return None if row is None else self._vectors[row]

    def resolve(self, term: str, case_fold_fallback: bool = True) -> str | None:
        """Stored key under which `term` is found, honoring the case policy."""
        if term in self._index:
            return term
        if case_fold_fallback:
            lowered = term.lower()
            if lowered in self._index:
                return lowered
        return None

    def unit_rows(self, terms: Sequence[str]) -> np.ndarray:
        """Float64 unit vectors for already-resolved store keys, row per term."""
        try:
            rows = [self._index[t] for t in terms]
        except KeyError as exc:
            raise KeyError(f"term {exc.args[0]!r} not in embedding store") from exc
        return self._units[rows]


# ---------------------------------------------------------------------------
# word2vec binary format


def load_word2vec_binary(
    path: str | Path, vocab: Iterable[str] | None = None
) -> EmbeddingStore:
    """Load a word2vec binary file.

    Layout: an ASCII header line "<vocab_size> <dimension>\\n", then one
    record per word: the utf-8 word terminated by a single space, followed by
    `dimension` little-endian float32s. Leading newlines before a word are
    tolerated for files written by tools that add a record separator.

    When `vocab` is given, only matching words are retained; skipped records
    are seeked over without parsing, so value checks apply to retained
    records only.
    """
    wanted = None if vocab is None else set(vocab)
    try:
        handle = open(path, "rb")
    except OSError as exc:
        raise IoError(f"cannot read embeddings {path}: {exc}") from exc
    with handle:
        header = handle.readline(128)
        parts = header.split()
        if not header.endswith(b"\n") or len(parts) != 2:
            raise FormatError(f"{path}: malformed word2vec header {header!r}")
        try:
            declared, dimension = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"{path}: malformed word2vec header {header!r}") from None
        if declared < 0 or dimension < 1:
            raise FormatError(f"{path}: bad word2vec header counts {header!r}")

        file_size = os.fstat(handle.fileno()).st_size
        record_bytes = 4 * dimension
        words: list[str] = []
        vectors: list[np.ndarray] = []
        seen: set[str] = set()
        for _ in range(declared):
            word_bytes = bytearray()
            while True:
                char = handle.read(1)
                if not char:
                    raise TruncationError(
                        f"{path}: file ended inside a word", handle.tell()
                    )
                if char == b" ":
                    break
                if char in (b"\n", b"\r") and not word_bytes:
                    continue  # separator written by some producers
                word_bytes.extend(char)
            word = word_bytes.decode("utf-8", errors="replace")
            if wanted is not None and word not in wanted:
                handle.seek(record_bytes, 1)
                if handle.tell() > file_size:
                    raise TruncationError(
                        f"{path}: file ended inside the vector for {word!r}",
                        file_size,
                    )
                continue
            raw = handle.read(record_bytes)
            if len(raw) != record_bytes:
                raise TruncationError(
                    f"{path}: file ended inside the vector for {word!r}", handle.tell()
                )
            vector = np.frombuffer(raw, dtype="<f4")
            if not np.isfinite(vector).all():
                raise DataError(f"{path}: non-finite component in vector for {word!r}")
            if word in seen:
                log.warning("%s: duplicate entry %r, keeping the first", path, word)
                continue
            seen.add(word)
            words.append(word)
            vectors.append(vector)

    matrix = (
        np.vstack(vectors) if vectors else np.empty((0, dimension), dtype=np.float32)
    )
    store = EmbeddingStore(words, matrix, WORD2VEC_BINARY)
    if wanted is not None:
        log.info(
            "loaded %d of %d requested terms from %s", len(words), len(wanted), path
        )
    return store


def save_word2vec_binary(store: EmbeddingStore, path: str | Path) -> None:
    """Write the store in word2vec binary layout (word, space, raw float32s)."""
    with open(path, "wb") as handle:
        handle.write(f"{store.vocab_size} {store.dimension}\n".encode("ascii"))
        for word in store.terms():
            vector = store.lookup(word)
            handle.write(word.encode("utf-8") + b" ")
            handle.write(np.asarray(vector, dtype="<f4").tobytes())


# ---------------------------------------------------------------------------
# GloVe text format


def load_glove_text(
    path: str | Path, vocab: Iterable[str] | None = None
) -> EmbeddingStore:
    """Load a GloVe text file: one "word v1 ... vd" line per term.

    The dimension is inferred from the first line; every later line must
    match it or RecordError(line) is raised. An empty file is a FormatError
    because no dimension can be inferred.
    """
    wanted = None if vocab is None else set(vocab)
    try:
        handle = open(path, "r", encoding="utf-8", errors="replace")
    except OSError as exc:
        raise IoError(f"cannot read embeddings {path}: {exc}") from exc

    words: list[str] = []
    vectors: list[list[float]] = []
    seen: set[str] = set()
    dimension = None
    with handle:
        for line_number, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n").rstrip("\r")
            if not stripped:
                continue
            fields = stripped.split(" ")
            if dimension is None:
                dimension = len(fields) - 1
                if dimension < 1:
                    raise RecordError("no vector components on first line", line_number)
            if len(fields) != dimension + 1:
                raise RecordError(
                    f"expected {dimension + 1} fields, got {len(fields)}", line_number
                )
            word = fields[0]
            if wanted is not None and word not in wanted:
                continue
            try:
                values = [float(f) for f in fields[1:]]
            except ValueError:
                raise RecordError("unparseable float component", line_number) from None
            if word in seen:
                log.warning("%s: duplicate entry %r, keeping the first", path, word)
                continue
            seen.add(word)
            words.append(word)
            vectors.append(values)
    if dimension is None:
        raise FormatError(f"{path}: empty GloVe file, cannot infer dimension")

    matrix = np.array(vectors, dtype=np.float32).reshape(len(words), dimension)
    if not np.isfinite(matrix).all():
        raise DataError(f"{path}: non-finite vector component")
    return EmbeddingStore(words, matrix, GLOVE_TEXT)


def save_glove_text(store: EmbeddingStore, path: str | Path) -> None:
    """Write the store as GloVe text; 9 significant digits round-trip float32."""
    with open(path, "w", encoding="utf-8") as handle:
        for word in store.terms():
            vector = store.lookup(word)
            components = " ".join(f"{float(x):.9g}" for x in vector)
            handle.write(f"{word} {components}\n")


_LOADERS = {WORD2VEC_BINARY: load_word2vec_binary, GLOVE_TEXT: load_glove_text}


def load_embeddings(
    path: str | Path, fmt: str, vocab: Iterable[str] | None = None
) -> EmbeddingStore:
    """Dispatch to the loader for `fmt` (word2vec-bin or glove-txt)."""
    try:
        loader = _LOADERS[fmt]
    except KeyError:
        raise DataError(
            f"unknown embedding format {fmt!r}; expected one of {sorted(_LOADERS)}"
        ) from None
    return loader(path, vocab=vocab)
