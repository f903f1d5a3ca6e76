"""Corpus ingestion, tokenization, and term statistics.

Corpus files are UTF-8 text with one document per line in the form
``<label>\t<text>`` where the label is one of ``pos``, ``neg`` or
``unlabeled``; blank lines are skipped.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError

POSITIVE = "pos"
NEGATIVE = "neg"
UNLABELED = "unlabeled"
LABEL_SET = (POSITIVE, NEGATIVE)

# A token is a run of letters/digits, optionally chained through internal
# apostrophes or hyphens; everything else separates tokens and is dropped.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*")


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split it into punctuation-free tokens."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class Document:
    """One tokenized text with an optional binary sentiment label."""

    tokens: tuple[str, ...]
    label: str | None = None


@dataclass(frozen=True)
class LabeledCorpus:
    """A named collection of documents from a single domain."""

    domain_name: str
    documents: tuple[Document, ...]
    label_set: tuple[str, str] = LABEL_SET

    def __len__(self) -> int:
        return len(self.documents)

    def labeled(self) -> list[Document]:
        return [d for d in self.documents if d.label is not None]

    def unigram_counts(self) -> Counter:
        counts: Counter = Counter()
        for doc in self.documents:
            counts.update(doc.tokens)
        return counts


@dataclass(frozen=True)
class CorpusSplit:
    """Train/dev/test portions of one domain's labeled corpus."""

    train: LabeledCorpus
    dev: LabeledCorpus
    test: LabeledCorpus


@dataclass(frozen=True)
class TermDistribution:
    """A probability distribution over a fixed, ordered vocabulary."""

    vocabulary: tuple[str, ...]
    probabilities: np.ndarray

    def __post_init__(self):
        if len(self.vocabulary) != len(self.probabilities):
            raise ValueError("vocabulary and probabilities differ in length")
        if np.any(self.probabilities < 0):
            raise ValueError("negative probability")
        total = float(np.sum(self.probabilities))
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total!r}, not 1")


def load_corpus(path: str | Path, domain_name: str) -> LabeledCorpus:
    """Read a ``<label>\t<text>`` file into a LabeledCorpus."""
    path = Path(path)
    documents: list[Document] = []
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            label, sep, text = line.partition("\t")
            if not sep:
                raise ParseError(f"{path}:{lineno}: expected <label><TAB><text>")
            if label == UNLABELED:
                documents.append(Document(tokens=tuple(tokenize(text))))
            elif label in LABEL_SET:
                documents.append(Document(tokens=tuple(tokenize(text)), label=label))
            else:
                raise ParseError(f"{path}:{lineno}: unknown label {label!r}")
    return LabeledCorpus(domain_name=domain_name, documents=tuple(documents))


def save_corpus(corpus: LabeledCorpus, path: str | Path) -> None:
    """Write a LabeledCorpus in the same tab-separated format load_corpus reads."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for doc in corpus.documents:
            label = doc.label if doc.label is not None else UNLABELED
            handle.write(f"{label}\t{' '.join(doc.tokens)}\n")


def extract_ngrams(tokens: list[str] | tuple[str, ...], max_n: int) -> Counter:
    """Unigram (and, for max_n=2, adjacent-bigram) counts of a token list.

    Bigrams are joined with ``_`` so they live in the same namespace as
    unigrams.
    """
    if max_n not in (1, 2):
        raise ValueError("max_n must be 1 or 2")
    counts = Counter(tokens)
    if max_n == 2:
        counts.update(f"{a}_{b}" for a, b in zip(tokens, tokens[1:]))
    return counts


def shared_top_k_vocab(corpora: list[LabeledCorpus], k: int) -> list[str]:
    """The k most frequent unigrams that every corpus contains.

    Ranked by total frequency across all corpora; ties break
    lexicographically. An empty intersection yields an empty list.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(corpora) < 2:
        raise ValueError("need at least two corpora")
    per_corpus = [c.unigram_counts() for c in corpora]
    shared = set(per_corpus[0])
    for counts in per_corpus[1:]:
        shared &= set(counts)
    totals = Counter()
    for counts in per_corpus:
        totals.update({w: counts[w] for w in shared})
    ranked = sorted(shared, key=lambda w: (-totals[w], w))
    return ranked[:k]


def build_term_distribution(
    corpus: LabeledCorpus,
    vocabulary: list[str] | tuple[str, ...],
    epsilon: float = 1e-6,
) -> TermDistribution:
    """Additively smoothed term probabilities over the given vocabulary only."""
    if not vocabulary:
        raise ValueError("vocabulary must be non-empty")
    counts = corpus.unigram_counts()
    raw = np.array([counts[w] for w in vocabulary], dtype=np.float64) + epsilon
    total = float(raw.sum())
    if total == 0.0:
        raise ValueError("all counts are zero and smoothing is disabled")
    return TermDistribution(vocabulary=tuple(vocabulary), probabilities=raw / total)
