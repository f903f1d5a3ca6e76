"""Projection lexicons: the word pairs that supervise the cross-domain map.

All builders emit identity pairs (w, w); non-identity pairs are accepted on
load, so concept-mapping lexicons produced elsewhere still work.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .corpus import LabeledCorpus, extract_ngrams
from .errors import DataError, ParseError


@dataclass(frozen=True)
class ProjectionLexicon:
    """An ordered list of (source_word, target_word) pairs."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if len(set(self.pairs)) != len(self.pairs):
            raise ValueError("duplicate lexicon pair")

    @property
    def n(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def _identity(words) -> ProjectionLexicon:
    return ProjectionLexicon(pairs=tuple((w, w) for w in words))


def frequency_lexicon(corpora: list[LabeledCorpus], k: int = 20000) -> ProjectionLexicon:
    """Identity pairs for the k most frequent unigrams in the concatenation.

    Frequency ties break lexicographically. The default k follows the common
    most-frequent-words recipe for projection dictionaries.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    totals = Counter()
    for corpus in corpora:
        totals.update(corpus.unigram_counts())
    ranked = sorted(totals, key=lambda w: (-totals[w], w))
    return _identity(ranked[:k])


def word_list_lexicon(words, corpora: list[LabeledCorpus]) -> ProjectionLexicon:
    """Identity pairs for the given words that occur in every corpus.

    Intended for external sentiment lexicons; raises DataError when nothing
    overlaps, since training on an empty lexicon would be degenerate.
    """
    if not words:
        raise ValueError("word list must be non-empty")
    counts = [c.unigram_counts() for c in corpora]
    seen = set()
    kept = []
    for word in words:
        if word in seen:
            continue
        seen.add(word)
        if all(counts_c[word] > 0 for counts_c in counts):
            kept.append(word)
    if not kept:
        raise DataError("no lexicon overlap with the given corpora")
    return _identity(kept)


def mutual_information_bits(n11: int, n10: int, n01: int, n00: int) -> float:
    """MI in bits between two binary variables from their contingency counts.

    Rows: feature present/absent. Columns: first/second class. Zero cells
    contribute zero.
    """
    total = n11 + n10 + n01 + n00
    if total == 0:
        raise ValueError("empty contingency table")
    score = 0.0
    row = (n11 + n10, n01 + n00)
    col = (n11 + n01, n10 + n00)
    for count, r, c in ((n11, 0, 0), (n10, 0, 1), (n01, 1, 0), (n00, 1, 1)):
        if count == 0:
            continue
        score += (count / total) * math.log2(count * total / (row[r] * col[c]))
    return score


def _presence_sets(corpus: LabeledCorpus, max_n: int = 2) -> list[set[str]]:
    return [set(extract_ngrams(list(doc.tokens), max_n)) for doc in corpus.documents]


def mutual_information_lexicon(
    source_labeled: LabeledCorpus,
    source_unlabeled: LabeledCorpus,
    target_unlabeled: LabeledCorpus,
    min_count: int = 10,
    top_m: int = 500,
    mi_target: str = "label",
) -> ProjectionLexicon:
    """Identity pairs for pivot features selected by mutual information.

    Candidates are unigrams and bigrams occurring at least ``min_count``
    times in both domains' unlabeled data. Each candidate is scored by MI
    between binary feature presence and either the source sentiment label
    (``mi_target="label"``, over labeled source documents) or the domain a
    document came from (``mi_target="domain"``, over the two unlabeled
    corpora). The top_m by score survive; ties break lexicographically.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    if top_m < 1:
        raise ValueError("top_m must be >= 1")
    if mi_target not in ("label", "domain"):
        raise ValueError("mi_target must be 'label' or 'domain'")

    def corpus_feature_counts(corpus: LabeledCorpus) -> Counter:
        counts: Counter = Counter()
        for doc in corpus.documents:
            counts.update(extract_ngrams(list(doc.tokens), max_n=2))
        return counts

    source_counts = corpus_feature_counts(source_unlabeled)
    target_counts = corpus_feature_counts(target_unlabeled)
    candidates = sorted(
        f
        for f, c in source_counts.items()
        if c >= min_count and target_counts[f] >= min_count
    )
    if not candidates:
        raise DataError("no pivot candidates survive the frequency filter")

    if mi_target == "label":
        labeled = source_labeled.labeled()
        classes = {doc.label for doc in labeled}
        if len(classes) != 2:
            raise DataError("source corpus must contain both classes")
        positive = source_labeled.label_set[0]
        flags = [doc.label == positive for doc in labeled]
        presence = _presence_sets(
            LabeledCorpus(source_labeled.domain_name, tuple(labeled))
        )
    else:
        flags = [True] * len(source_unlabeled.documents) + [False] * len(
            target_unlabeled.documents
        )
        presence = _presence_sets(source_unlabeled) + _presence_sets(target_unlabeled)

    n_first = sum(flags)
    n_second = len(flags) - n_first
    scored = []
    for feature in candidates:
        n11 = sum(1 for present, flag in zip(presence, flags) if flag and feature in present)
        n10 = sum(1 for present, flag in zip(presence, flags) if not flag and feature in present)
        n01 = n_first - n11
        n00 = n_second - n10
        scored.append((feature, mutual_information_bits(n11, n10, n01, n00)))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return _identity(feature for feature, _ in scored[:top_m])


def save_lexicon(lexicon: ProjectionLexicon, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for source, target in lexicon.pairs:
            handle.write(f"{source}\t{target}\n")


def load_lexicon(path: str | Path) -> ProjectionLexicon:
    """Read one ``source\ttarget`` pair per line; round-trips save_lexicon."""
    path = Path(path)
    pairs: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ParseError(
                    f"{path}:{lineno}: expected 2 tab-separated columns, got {len(fields)}"
                )
            pair = (fields[0], fields[1])
            if pair in seen:
                raise ParseError(f"{path}:{lineno}: duplicate pair {pair!r}")
            seen.add(pair)
            pairs.append(pair)
    return ProjectionLexicon(pairs=tuple(pairs))
