"""Non-adaptive bag-of-words baseline.

A linear max-margin classifier over unigram+bigram features, fit on source
training data only and applied as-is to any other corpus. Its cross-domain
accuracy drop is the gap the projection model is meant to close.

Documents are kept as (indices, values) pairs rather than dense rows; the
classifier is trained by seeded per-document subgradient descent on the
hinge loss with an L2 penalty of 1/C, averaging the weights over the second
half of the updates.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import LABEL_SET, LabeledCorpus, extract_ngrams
from .errors import DataError
from .seeding import rng_for

logger = logging.getLogger(__name__)

BASELINE_FORMAT_VERSION = 1
DEFAULT_C_GRID = (0.001, 0.01, 0.1, 1.0, 10.0, 100.0)

FEATURES_BINARY = "binary"
FEATURES_COUNT = "count"
FEATURES_TFIDF = "tfidf"
_FEATURE_MODES = (FEATURES_BINARY, FEATURES_COUNT, FEATURES_TFIDF)

# one document, sparsely: (sorted feature indices, matching feature values)
SparseDoc = tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class BowVectorizer:
    """Fixed unigram+bigram feature map fitted on one training corpus."""

    vocabulary: dict[str, int]  # feature -> dense column index
    mode: str = FEATURES_BINARY
    idf: np.ndarray | None = None  # only for tfidf
    max_n: int = 2
    min_df: int = 2

    def __post_init__(self):
        if self.mode not in _FEATURE_MODES:
            raise ValueError(f"unknown feature mode {self.mode!r}")
        if self.mode == FEATURES_TFIDF and self.idf is None:
            raise ValueError("tfidf mode requires idf weights")

    @property
    def n_features(self) -> int:
        return len(self.vocabulary)

    def transform_tokens(self, tokens) -> SparseDoc:
        """Sparse features for one document; unseen features are ignored."""
        counts = extract_ngrams(list(tokens), self.max_n)
        indexed = sorted(
            (self.vocabulary[f], c) for f, c in counts.items() if f in self.vocabulary
        )
        indices = np.array([i for i, _ in indexed], dtype=np.int64)
        if self.mode == FEATURES_BINARY:
            values = np.ones(len(indexed), dtype=np.float64)
        else:
            values = np.array([c for _, c in indexed], dtype=np.float64)
            if self.mode == FEATURES_TFIDF:
                values *= self.idf[indices]
        return indices, values

    def transform(self, corpus: LabeledCorpus) -> list[SparseDoc]:
        return [self.transform_tokens(doc.tokens) for doc in corpus.documents]


def fit_vectorizer(
    corpus: LabeledCorpus,
    max_n: int = 2,
    min_df: int = 2,
    mode: str = FEATURES_BINARY,
) -> BowVectorizer:
    """Collect features with document frequency >= min_df, lexicographically indexed."""
    if mode not in _FEATURE_MODES:
        raise ValueError(f"unknown feature mode {mode!r}")
    df: dict[str, int] = {}
    for doc in corpus.documents:
        for feature in set(extract_ngrams(list(doc.tokens), max_n)):
            df[feature] = df.get(feature, 0) + 1
    kept = sorted(f for f, n in df.items() if n >= min_df)
    if not kept:
        raise DataError(
            f"no features reach document frequency {min_df} in {corpus.domain_name}"
        )
    vocabulary = {f: i for i, f in enumerate(kept)}
    idf = None
    if mode == FEATURES_TFIDF:
        n_docs = len(corpus.documents)
        # smoothed log((1+N)/(1+df)) + 1, so features seen everywhere keep weight 1
        idf = np.array(
            [np.log((1.0 + n_docs) / (1.0 + df[f])) + 1.0 for f in kept]
        )
    return BowVectorizer(vocabulary=vocabulary, mode=mode, idf=idf, max_n=max_n, min_df=min_df)


@dataclass
class LinearModel:
    """Hinge-loss linear classifier: predict positive iff w.x + b >= 0."""

    weights: np.ndarray
    bias: float
    C: float
    label_order: tuple[str, str] = LABEL_SET

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if not (np.all(np.isfinite(self.weights)) and np.isfinite(self.bias)):
            raise ValueError("non-finite model parameters")

    def decision(self, doc: SparseDoc) -> float:
        indices, values = doc
        return float(self.weights[indices] @ values + self.bias)

    def predict(self, docs: list[SparseDoc]) -> list[str]:
        positive, negative = self.label_order
        return [positive if self.decision(d) >= 0.0 else negative for d in docs]


def _signed_labels(corpus: LabeledCorpus) -> np.ndarray:
    """+1 for the positive class, -1 for the negative; unlabeled docs rejected."""
    positive = corpus.label_set[0]
    signs = []
    for doc in corpus.documents:
        if doc.label is None:
            raise DataError(f"unlabeled document in {corpus.domain_name}; labels required")
        signs.append(1.0 if doc.label == positive else -1.0)
    return np.array(signs)


def train_linear_svm(
    docs: list[SparseDoc],
    signs: np.ndarray,
    n_features: int,
    C: float,
    seed: int,
    epochs: int = 30,
    eta0: float = 1.0,
) -> tuple[np.ndarray, float]:
    """Subgradient descent on (1/2C)||w||^2 + mean hinge loss.

    Learning rate decays as eta0 / (1 + eta0 * lam * t); the bias is left
    unregularized. The returned parameters are averaged over the second half
    of the updates, which stabilizes the late oscillation of plain SGD.
    """
    if C <= 0:
        raise ValueError("C must be positive")
    n = len(docs)
    if n == 0:
        raise DataError("empty training set")
    lam = 1.0 / C
    rng = rng_for(seed)
    w = np.zeros(n_features)
    b = 0.0
    total_steps = epochs * n
    tail_start = total_steps // 2 + 1
    w_sum = np.zeros(n_features)
    b_sum = 0.0
    tail = 0
    t = 0
    for _ in range(epochs):
        for i in rng.permutation(n):
            t += 1
            eta = eta0 / (1.0 + eta0 * lam * t)
            indices, values = docs[i]
            margin = signs[i] * (w[indices] @ values + b)
            w *= 1.0 - eta * lam
            if margin < 1.0:
                w[indices] += eta * signs[i] * values
                b += eta * signs[i]
            if t >= tail_start:
                w_sum += w
                b_sum += b
                tail += 1
    return w_sum / tail, b_sum / tail


def fit_baseline(
    train: LabeledCorpus,
    dev: LabeledCorpus,
    C_grid=DEFAULT_C_GRID,
    mode: str = FEATURES_BINARY,
    max_n: int = 2,
    min_df: int = 2,
    seed: int = 42,
    epochs: int = 30,
    eta0: float = 1.0,
) -> tuple[BowVectorizer, LinearModel, list[dict]]:
    """Fit the vectorizer on train, pick C by dev accuracy (ties -> smaller C)."""
    signs = _signed_labels(train)
    if len(set(signs)) < 2:
        raise DataError("training corpus must contain both classes")
    vectorizer = fit_vectorizer(train, max_n=max_n, min_df=min_df, mode=mode)
    train_docs = vectorizer.transform(train)
    dev_docs = vectorizer.transform(dev)
    dev_gold = [doc.label for doc in dev.documents]
    if any(label is None for label in dev_gold):
        raise DataError(f"unlabeled document in {dev.domain_name}; labels required")

    grid: list[dict] = []
    best: tuple[float, LinearModel] | None = None
    for C in sorted(C_grid):
        w, b = train_linear_svm(
            train_docs, signs, vectorizer.n_features, C, seed, epochs, eta0
        )
        candidate = LinearModel(weights=w, bias=b, C=C, label_order=train.label_set)
        predictions = candidate.predict(dev_docs)
        accuracy = sum(p == g for p, g in zip(predictions, dev_gold)) / len(dev_gold)
        grid.append({"C": C, "dev_accuracy": accuracy})
        if best is None or accuracy > best[0]:
            best = (accuracy, candidate)
    assert best is not None
    logger.info("selected C=%g (dev accuracy %.4f)", best[1].C, best[0])
    return vectorizer, best[1], grid


def predict_labels(
    vectorizer: BowVectorizer, model: LinearModel, corpus: LabeledCorpus
) -> list[str]:
    return model.predict(vectorizer.transform(corpus))


def save_baseline(vectorizer: BowVectorizer, model: LinearModel, path: str | Path) -> None:
    features = sorted(vectorizer.vocabulary, key=vectorizer.vocabulary.get)
    document = {
        "version": BASELINE_FORMAT_VERSION,
        "mode": vectorizer.mode,
        "max_n": vectorizer.max_n,
        "min_df": vectorizer.min_df,
        "features": features,
        "idf": None if vectorizer.idf is None else vectorizer.idf.tolist(),
        "weights": model.weights.tolist(),
        "bias": model.bias,
        "C": model.C,
        "label_order": list(model.label_order),
    }
    Path(path).write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", "utf-8")


def load_baseline(path: str | Path) -> tuple[BowVectorizer, LinearModel]:
    path = Path(path)
    try:
        document = json.loads(path.read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not valid JSON ({exc})") from None
    if document.get("version") != BASELINE_FORMAT_VERSION:
        raise DataError(f"{path}: unsupported model version {document.get('version')!r}")
    try:
        features = document["features"]
        idf = document["idf"]
        vectorizer = BowVectorizer(
            vocabulary={f: i for i, f in enumerate(features)},
            mode=document["mode"],
            idf=None if idf is None else np.array(idf, dtype=np.float64),
            max_n=document["max_n"],
            min_df=document["min_df"],
        )
        weights = np.array(document["weights"], dtype=np.float64)
        if weights.shape != (len(features),):
            raise DataError(f"{path}: weight count does not match feature count")
        model = LinearModel(
            weights=weights,
            bias=float(document["bias"]),
            C=float(document["C"]),
            label_order=tuple(document["label_order"]),  # type: ignore[arg-type]
        )
    except KeyError as exc:
        raise DataError(f"{path}: missing field {exc.args[0]!r}") from None
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None
    return vectorizer, model
