"""Mono-domain embedding spaces: loading, lookup, sentence averaging.

The on-disk format is the common plain-text one: a header line ``v d``
followed by ``v`` lines of ``word x1 ... xd``.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from .errors import ParseError
from .seeding import rng_for_word

logger = logging.getLogger(__name__)

OOV_RANGE = 0.25  # out-of-vocabulary vectors are uniform in [-0.25, 0.25]


class EmbeddingSpace:
    """A vocabulary-indexed dense matrix for one domain.

    Out-of-vocabulary words receive a deterministic random vector keyed by
    (seed, word), cached so train and test see identical representations.
    The matrix itself is never mutated after construction.
    """

    def __init__(self, vocabulary: dict[str, int], matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        if len(vocabulary) != matrix.shape[0]:
            raise ValueError("vocabulary size does not match row count")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("matrix contains non-finite entries")
        self.vocabulary = dict(vocabulary)
        self.matrix = matrix
        self.dimension = int(matrix.shape[1])
        self._oov_cache: dict[tuple[int, str], np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.vocabulary)

    def __contains__(self, word: str) -> bool:
        return word in self.vocabulary

    def lookup(self, word: str, seed: int) -> np.ndarray:
        """The stored row for a known word, or its cached OOV vector."""
        index = self.vocabulary.get(word)
        if index is not None:
            return self.matrix[index].copy()
        key = (seed, word)
        vector = self._oov_cache.get(key)
        if vector is None:
            rng = rng_for_word(seed, word)
            vector = rng.uniform(-OOV_RANGE, OOV_RANGE, self.dimension)
            self._oov_cache[key] = vector
        return vector.copy()

    def warm_oov(self, words, seed: int) -> int:
        """Pre-resolve OOV vectors. Returns how many distinct ones were created."""
        count = 0
        for word in words:
            if word in self.vocabulary or (seed, word) in self._oov_cache:
                continue
            self.lookup(word, seed)
            count += 1
        return count

    def average_sentence(self, tokens, seed: int) -> np.ndarray:
        """Elementwise mean of the token vectors."""
        if not tokens:
            raise ValueError("empty sentence")
        stacked = np.stack([self.lookup(t, seed) for t in tokens])
        return stacked.mean(axis=0)


def load_text_embeddings(path: str | Path) -> EmbeddingSpace:
    """Parse a plain-text vector file into an EmbeddingSpace.

    A duplicated word keeps its original row position but the later vector
    wins (with a warning).
    """
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        header = handle.readline()
        parts = header.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:1: expected header '<rows> <dim>'")
        try:
            declared_rows, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"{path}:1: non-integer header") from None
        if declared_rows < 0 or dim < 1:
            raise ParseError(f"{path}:1: invalid header counts")

        vocabulary: dict[str, int] = {}
        matrix = np.empty((declared_rows, dim), dtype=np.float64)
        rows_seen = 0
        for lineno, line in enumerate(handle, start=2):
            if rows_seen >= declared_rows:
                raise ParseError(
                    f"{path}:{lineno}: more rows than the header declares"
                )
            fields = line.split()
            if len(fields) != dim + 1:
                raise ParseError(
                    f"{path}:{lineno}: expected 1 word + {dim} components, "
                    f"got {len(fields)} fields"
                )
            word = fields[0]
            try:
                vector = np.array(fields[1:], dtype=np.float64)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-numeric component") from None
            rows_seen += 1
            existing = vocabulary.get(word)
            if existing is not None:
                logger.warning("%s:%d: duplicate word %r, keeping last", path, lineno, word)
                matrix[existing] = vector
            else:
                matrix[len(vocabulary)] = vector
                vocabulary[word] = len(vocabulary)
        if rows_seen != declared_rows:
            raise ParseError(
                f"{path}: header declares {declared_rows} rows, file has {rows_seen}"
            )
    return EmbeddingSpace(vocabulary, matrix[: len(vocabulary)])


def save_text_embeddings(space: EmbeddingSpace, path: str | Path) -> None:
    """Write a space in the plain-text format, round-trip exact (17 sig. digits)."""
    path = Path(path)
    ordered = sorted(space.vocabulary.items(), key=lambda item: item[1])
    with path.open("w", encoding="utf-8") as handle:
        handle.write(f"{len(space)} {space.dimension}\n")
        for word, index in ordered:
            row = " ".join(f"{x:.17g}" for x in space.matrix[index])
            handle.write(f"{word} {row}\n")
