"""The joint cross-domain projection and sentiment model.

Three trainable blocks: a source projection (d x k), a target projection
(d' x k), and a softmax layer (k x 2) over the shared space. Training mixes
two objectives with a weight ``alpha``:

* sentiment: averaged source sentences are projected through the source map
  and classified; the loss is mean binary cross-entropy;
* alignment: for each lexicon pair, the squared distance between the two
  projected word vectors, summed over the k components and averaged over
  pairs.

Target-side inference runs averaged target sentences through the target
map (or the source map, in the ablated variant) and the shared softmax
layer. Gradients are analytic; no autodiff framework is involved.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import LABEL_SET, CorpusSplit, LabeledCorpus
from .embeddings import EmbeddingSpace
from .errors import DataError, TrainingDiverged
from .evaluation import evaluate
from .lexicon import ProjectionLexicon
from .seeding import rng_for

logger = logging.getLogger(__name__)

MODEL_FORMAT_VERSION = 1
_PROB_CLAMP = 1e-12


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max-subtraction so huge logits cannot overflow."""
    logits = np.asarray(logits, dtype=np.float64)
    shifted = logits - logits.max(axis=-1, keepdims=True)
    exped = np.exp(shifted)
    return exped / exped.sum(axis=-1, keepdims=True)


@dataclass
class ProjectionClassifier:
    """Learned parameters plus the label convention they were trained with."""

    source_map: np.ndarray  # (d, k)
    target_map: np.ndarray  # (d', k)
    softmax_weights: np.ndarray  # (k, 2)
    label_order: tuple[str, str] = LABEL_SET
    ablated: bool = False  # reuse source_map on the target side
    alpha: float | None = None  # training mix, recorded for provenance

    def __post_init__(self):
        self.source_map = np.asarray(self.source_map, dtype=np.float64)
        self.target_map = np.asarray(self.target_map, dtype=np.float64)
        self.softmax_weights = np.asarray(self.softmax_weights, dtype=np.float64)
        for name, matrix in (
            ("source_map", self.source_map),
            ("target_map", self.target_map),
            ("softmax_weights", self.softmax_weights),
        ):
            if matrix.ndim != 2:
                raise ValueError(f"{name} must be a matrix")
            if not np.all(np.isfinite(matrix)):
                raise ValueError(f"{name} contains non-finite entries")
        k = self.source_map.shape[1]
        if self.target_map.shape[1] != k:
            raise ValueError("source_map and target_map disagree on joint dimension")
        if self.softmax_weights.shape != (k, 2):
            raise ValueError("softmax_weights must have shape (joint_dim, 2)")

    @property
    def source_dim(self) -> int:
        return int(self.source_map.shape[0])

    @property
    def target_dim(self) -> int:
        return int(self.target_map.shape[0])

    @property
    def joint_dim(self) -> int:
        return int(self.source_map.shape[1])

    def project_source(self, vectors: np.ndarray) -> np.ndarray:
        """Map source-space vectors (last axis length d) into the joint space."""
        vectors = np.asarray(vectors, dtype=np.float64)
        if vectors.shape[-1] != self.source_dim:
            raise ValueError(
                f"expected source dimension {self.source_dim}, got {vectors.shape[-1]}"
            )
        return vectors @ self.source_map

    def project_target(self, vectors: np.ndarray) -> np.ndarray:
        """Map target-space vectors into the joint space.

        The ablated variant reuses the source map, which requires the two
        embedding dimensions to agree.
        """
        vectors = np.asarray(vectors, dtype=np.float64)
        matrix = self.source_map if self.ablated else self.target_map
        if vectors.shape[-1] != matrix.shape[0]:
            raise ValueError(
                f"expected target dimension {matrix.shape[0]}, got {vectors.shape[-1]}"
            )
        return vectors @ matrix

    def predict_proba(self, joint_vectors: np.ndarray) -> np.ndarray:
        """Class probabilities (in label_order) for joint-space vectors."""
        joint_vectors = np.asarray(joint_vectors, dtype=np.float64)
        if joint_vectors.shape[-1] != self.joint_dim:
            raise ValueError(
                f"expected joint dimension {self.joint_dim}, got {joint_vectors.shape[-1]}"
            )
        return softmax(joint_vectors @ self.softmax_weights)

    def predict_labels(self, joint_vectors: np.ndarray) -> list[str]:
        """Argmax labels; an exact tie resolves to the positive class."""
        probs = np.atleast_2d(self.predict_proba(joint_vectors))
        positive, negative = self.label_order
        return [positive if p[0] >= p[1] else negative for p in probs]


@dataclass(frozen=True)
class TrainConfig:
    alpha: float = 0.5
    epochs: int = 100
    batch_size: int = 20
    learning_rate: float = 1e-3
    seed: int = 42
    init: str = "glorot"  # or "identity"
    optimizer: str = "adam"  # or "sgd"
    joint_dim: int | None = None  # None -> source embedding dimension
    ablate_target_matrix: bool = False

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")
        if self.epochs < 1:
            raise ValueError("epochs must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.init not in ("glorot", "identity"):
            raise ValueError("init must be 'glorot' or 'identity'")
        if self.optimizer not in ("adam", "sgd"):
            raise ValueError("optimizer must be 'adam' or 'sgd'")
        if self.joint_dim is not None and self.joint_dim < 1:
            raise ValueError("joint_dim must be positive")

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "seed": self.seed,
            "init": self.init,
            "optimizer": self.optimizer,
            "joint_dim": self.joint_dim,
            "ablate_target_matrix": self.ablate_target_matrix,
        }


@dataclass
class TrainReport:
    """Per-epoch training trace; loss entries are means over optimizer steps."""

    joint_loss: list[float]
    sentiment_loss: list[float]
    projection_loss: list[float]
    dev_macro_f1: list[float]
    best_epoch: int
    config: TrainConfig
    lexicon_pairs_used: int
    lexicon_pairs_skipped: int

    def to_json_dict(self) -> dict:
        return {
            "joint_loss": self.joint_loss,
            "sentiment_loss": self.sentiment_loss,
            "projection_loss": self.projection_loss,
            "dev_macro_f1": self.dev_macro_f1,
            "best_epoch": self.best_epoch,
            "config": self.config.to_json_dict(),
            "lexicon_pairs_used": self.lexicon_pairs_used,
            "lexicon_pairs_skipped": self.lexicon_pairs_skipped,
        }


@dataclass(frozen=True)
class Gradients:
    source_map: np.ndarray
    target_map: np.ndarray
    softmax_weights: np.ndarray


@dataclass
class ClassificationResult:
    """Per-document predictions, aligned with the input corpus.

    Documents that tokenized to nothing are skipped: their label is None and
    their probability row is NaN.
    """

    labels: list[str | None]
    probabilities: np.ndarray  # (n_documents, 2) in label_order
    n_skipped: int

    def labeled_pairs(self, corpus: LabeledCorpus) -> tuple[list[str], list[str]]:
        """(predictions, gold) over documents that were classified and have gold labels."""
        predictions, gold = [], []
        for label, doc in zip(self.labels, corpus.documents):
            if label is not None and doc.label is not None:
                predictions.append(label)
                gold.append(doc.label)
        return predictions, gold


def projection_loss(
    model: ProjectionClassifier, source_rows: np.ndarray, target_rows: np.ndarray
) -> float:
    """Mean over lexicon pairs of the squared joint-space distance.

    The squared difference is summed over the k components of each pair, so
    reported magnitudes are comparable across joint dimensions only up to a
    factor of k.
    """
    source_rows = np.atleast_2d(np.asarray(source_rows, dtype=np.float64))
    target_rows = np.atleast_2d(np.asarray(target_rows, dtype=np.float64))
    if source_rows.shape[0] == 0:
        raise ValueError("empty lexicon batch")
    if source_rows.shape[0] != target_rows.shape[0]:
        raise ValueError("source and target batches differ in length")
    diff = model.project_source(source_rows) - model.project_target(target_rows)
    return float(np.mean(np.sum(diff * diff, axis=1)))


def sentiment_loss(
    model: ProjectionClassifier, sentence_rows: np.ndarray, class_indices: np.ndarray
) -> float:
    """Mean binary cross-entropy on the positive-class probability.

    Probabilities are clamped to [1e-12, 1 - 1e-12] before the logs.
    """
    sentence_rows = np.atleast_2d(np.asarray(sentence_rows, dtype=np.float64))
    class_indices = np.asarray(class_indices)
    if sentence_rows.shape[0] == 0:
        raise ValueError("empty sentiment batch")
    if sentence_rows.shape[0] != class_indices.shape[0]:
        raise ValueError("batch and labels differ in length")
    probs = model.predict_proba(model.project_source(sentence_rows))
    p_positive = np.clip(probs[:, 0], _PROB_CLAMP, 1.0 - _PROB_CLAMP)
    is_positive = class_indices == 0
    losses = np.where(is_positive, -np.log(p_positive), -np.log1p(-p_positive))
    return float(np.mean(losses))


def joint_loss(
    model: ProjectionClassifier,
    sentence_rows: np.ndarray,
    class_indices: np.ndarray,
    source_rows: np.ndarray,
    target_rows: np.ndarray,
    alpha: float,
) -> float:
    """alpha * sentiment + (1 - alpha) * projection, both as batch means."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    return alpha * sentiment_loss(model, sentence_rows, class_indices) + (
        1.0 - alpha
    ) * projection_loss(model, source_rows, target_rows)


def gradients(
    model: ProjectionClassifier,
    sentence_rows: np.ndarray,
    class_indices: np.ndarray,
    source_rows: np.ndarray,
    target_rows: np.ndarray,
    alpha: float,
) -> Gradients:
    """Analytic gradients of the joint loss for all three parameter blocks.

    Cross-entropy backpropagates through softmax as (probs - onehot) / batch;
    the alignment term contributes 2/n times the projected difference, pushed
    back through each side's projection. In the ablated variant both sides of
    the alignment term flow into the source map and the target map gradient
    is exactly zero.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    sentence_rows = np.atleast_2d(np.asarray(sentence_rows, dtype=np.float64))
    class_indices = np.asarray(class_indices)
    source_rows = np.atleast_2d(np.asarray(source_rows, dtype=np.float64))
    target_rows = np.atleast_2d(np.asarray(target_rows, dtype=np.float64))

    batch = sentence_rows.shape[0]
    joint = sentence_rows @ model.source_map
    probs = softmax(joint @ model.softmax_weights)
    onehot = np.zeros_like(probs)
    onehot[np.arange(batch), class_indices] = 1.0
    d_logits = alpha * (probs - onehot) / batch
    d_softmax = joint.T @ d_logits
    d_source = sentence_rows.T @ (d_logits @ model.softmax_weights.T)

    pairs = source_rows.shape[0]
    projected_source = source_rows @ model.source_map
    side = model.source_map if model.ablated else model.target_map
    projected_target = target_rows @ side
    d_diff = (1.0 - alpha) * (2.0 / pairs) * (projected_source - projected_target)
    d_source += source_rows.T @ d_diff
    if model.ablated:
        d_source -= target_rows.T @ d_diff
        d_target = np.zeros_like(model.target_map)
    else:
        d_target = -(target_rows.T @ d_diff)
    return Gradients(source_map=d_source, target_map=d_target, softmax_weights=d_softmax)


class _Adam:
    def __init__(self, shapes, learning_rate, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = learning_rate
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.m = [np.zeros(s) for s in shapes]
        self.v = [np.zeros(s) for s in shapes]
        self.t = 0

    def step(self, params, grads):
        self.t += 1
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1 - self.beta1) * g
            v *= self.beta2
            v += (1 - self.beta2) * (g * g)
            m_hat = m / (1 - self.beta1**self.t)
            v_hat = v / (1 - self.beta2**self.t)
            p -= self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


class _Sgd:
    def __init__(self, shapes, learning_rate):
        self.lr = learning_rate

    def step(self, params, grads):
        for p, g in zip(params, grads):
            p -= self.lr * g


def _glorot(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-limit, limit, (rows, cols))


def labels_to_indices(labels, label_order: tuple[str, str] = LABEL_SET) -> np.ndarray:
    index = {label: i for i, label in enumerate(label_order)}
    try:
        return np.array([index[label] for label in labels], dtype=np.int64)
    except KeyError as exc:
        raise ValueError(f"unknown label {exc.args[0]!r}") from None


def _corpus_matrix(
    space: EmbeddingSpace, corpus: LabeledCorpus, seed: int, require_labels: bool
):
    """Averaged sentence vectors for the corpus's non-empty documents.

    Returns (matrix, class_indices, kept_indices, n_skipped); class_indices
    is None when labels were not requested.
    """
    vectors, labels, kept = [], [], []
    skipped = 0
    for i, doc in enumerate(corpus.documents):
        if not doc.tokens:
            skipped += 1
            continue
        if require_labels and doc.label is None:
            continue
        vectors.append(space.average_sentence(doc.tokens, seed))
        kept.append(i)
        if require_labels:
            labels.append(doc.label)
    if skipped:
        logger.warning("skipped %d empty document(s) in %s", skipped, corpus.domain_name)
    matrix = np.stack(vectors) if vectors else np.empty((0, space.dimension))
    indices = labels_to_indices(labels, corpus.label_set) if require_labels else None
    return matrix, indices, kept, skipped


def _resolve_lexicon(
    source_space: EmbeddingSpace, target_space: EmbeddingSpace, lexicon: ProjectionLexicon
):
    """Row matrices for lexicon pairs; pairs OOV on either side are skipped."""
    source_rows, target_rows = [], []
    skipped = 0
    for source_word, target_word in lexicon.pairs:
        si = source_space.vocabulary.get(source_word)
        ti = target_space.vocabulary.get(target_word)
        if si is None or ti is None:
            skipped += 1
            continue
        source_rows.append(source_space.matrix[si])
        target_rows.append(target_space.matrix[ti])
    if skipped:
        logger.warning("skipped %d lexicon pair(s) missing from an embedding space", skipped)
    if not source_rows:
        raise DataError("no lexicon pairs survive out-of-vocabulary filtering")
    return np.stack(source_rows), np.stack(target_rows), skipped


def train(
    source_space: EmbeddingSpace,
    target_space: EmbeddingSpace,
    lexicon: ProjectionLexicon,
    splits: CorpusSplit,
    config: TrainConfig,
) -> tuple[ProjectionClassifier, TrainReport]:
    """Jointly fit the two projections and the classifier.

    Each epoch shuffles the sentiment examples; every sentiment batch is
    paired with an equal-size batch drawn by cycling through a seed-shuffled
    lexicon, and one optimizer step is applied to the joint gradients. The
    returned parameters come from the epoch with the best dev macro F1
    (ties resolve to the later epoch, which lets the alignment term keep
    converging after dev F1 saturates).
    """
    rng = rng_for(config.seed)
    d = source_space.dimension
    d_prime = target_space.dimension
    k = config.joint_dim if config.joint_dim is not None else d
    if config.ablate_target_matrix and d != d_prime:
        raise DataError("ablated training requires equal embedding dimensions")

    if config.init == "glorot":
        source_map = _glorot(rng, d, k)
        target_map = _glorot(rng, d_prime, k)
    else:
        source_map = np.eye(d, k)
        target_map = np.eye(d_prime, k)
    softmax_weights = _glorot(rng, k, 2)

    label_order = splits.train.label_set
    train_matrix, train_classes, _, _ = _corpus_matrix(
        source_space, splits.train, config.seed, require_labels=True
    )
    if train_matrix.shape[0] == 0:
        raise DataError("train split has no labeled, non-empty documents")
    dev_matrix, dev_classes, _, _ = _corpus_matrix(
        source_space, splits.dev, config.seed, require_labels=True
    )
    if dev_matrix.shape[0] == 0:
        raise DataError("dev split has no labeled documents for epoch selection")
    dev_gold = [label_order[i] for i in dev_classes]

    lex_source, lex_target, lex_skipped = _resolve_lexicon(
        source_space, target_space, lexicon
    )
    n_pairs = lex_source.shape[0]
    lex_order = rng.permutation(n_pairs)
    lex_position = 0

    params = [source_map, target_map, softmax_weights]
    optimizer_cls = _Adam if config.optimizer == "adam" else _Sgd
    optimizer = optimizer_cls([p.shape for p in params], config.learning_rate)

    model = ProjectionClassifier(
        source_map=source_map,
        target_map=target_map,
        softmax_weights=softmax_weights,
        label_order=label_order,
        ablated=config.ablate_target_matrix,
        alpha=config.alpha,
    )

    n_train = train_matrix.shape[0]
    history_joint, history_sentiment, history_projection, history_dev = [], [], [], []
    best_f1 = -1.0
    best_epoch = 0
    best_params = [p.copy() for p in params]

    for epoch in range(config.epochs):
        order = rng.permutation(n_train)
        step_joint, step_sentiment, step_projection = [], [], []
        for start in range(0, n_train, config.batch_size):
            batch_idx = order[start : start + config.batch_size]
            batch_rows = train_matrix[batch_idx]
            batch_classes = train_classes[batch_idx]
            take = (lex_position + np.arange(len(batch_idx))) % n_pairs
            lex_position = (lex_position + len(batch_idx)) % n_pairs
            pair_idx = lex_order[take]
            pair_source = lex_source[pair_idx]
            pair_target = lex_target[pair_idx]

            h = sentiment_loss(model, batch_rows, batch_classes)
            mse = projection_loss(model, pair_source, pair_target)
            j = config.alpha * h + (1.0 - config.alpha) * mse
            if not np.isfinite(j):
                raise TrainingDiverged(
                    f"joint loss became non-finite at epoch {epoch}; "
                    "the learning rate is probably too high"
                )
            grads = gradients(
                model, batch_rows, batch_classes, pair_source, pair_target, config.alpha
            )
            optimizer.step(
                params, [grads.source_map, grads.target_map, grads.softmax_weights]
            )
            step_joint.append(j)
            step_sentiment.append(h)
            step_projection.append(mse)

        history_joint.append(float(np.mean(step_joint)))
        history_sentiment.append(float(np.mean(step_sentiment)))
        history_projection.append(float(np.mean(step_projection)))

        dev_pred = model.predict_labels(model.project_source(dev_matrix))
        dev_f1 = evaluate(dev_pred, dev_gold, label_order).macro_f1
        history_dev.append(dev_f1)
        if dev_f1 >= best_f1:
            best_f1 = dev_f1
            best_epoch = epoch
            best_params = [p.copy() for p in params]
        logger.info(
            "epoch %d: joint=%.6f sentiment=%.6f projection=%.6f dev_f1=%.4f",
            epoch,
            history_joint[-1],
            history_sentiment[-1],
            history_projection[-1],
            dev_f1,
        )

    final = ProjectionClassifier(
        source_map=best_params[0],
        target_map=best_params[1],
        softmax_weights=best_params[2],
        label_order=label_order,
        ablated=config.ablate_target_matrix,
        alpha=config.alpha,
    )
    report = TrainReport(
        joint_loss=history_joint,
        sentiment_loss=history_sentiment,
        projection_loss=history_projection,
        dev_macro_f1=history_dev,
        best_epoch=best_epoch,
        config=config,
        lexicon_pairs_used=n_pairs,
        lexicon_pairs_skipped=lex_skipped,
    )
    return final, report


def _classify(
    model: ProjectionClassifier,
    space: EmbeddingSpace,
    corpus: LabeledCorpus,
    seed: int,
    side: str,
) -> ClassificationResult:
    n = len(corpus.documents)
    labels: list[str | None] = [None] * n
    probabilities = np.full((n, 2), np.nan)
    matrix, _, kept, skipped = _corpus_matrix(space, corpus, seed, require_labels=False)
    if kept:
        project = model.project_source if side == "source" else model.project_target
        probs = model.predict_proba(project(matrix))
        predicted = model.predict_labels(project(matrix))
        for row, (i, label) in enumerate(zip(kept, predicted)):
            labels[i] = label
            probabilities[i] = probs[row]
    return ClassificationResult(labels=labels, probabilities=probabilities, n_skipped=skipped)


def classify_target(
    model: ProjectionClassifier, target_space: EmbeddingSpace, corpus: LabeledCorpus, seed: int
) -> ClassificationResult:
    """Classify target-domain documents through the target projection."""
    return _classify(model, target_space, corpus, seed, side="target")


def classify_source(
    model: ProjectionClassifier, source_space: EmbeddingSpace, corpus: LabeledCorpus, seed: int
) -> ClassificationResult:
    """Classify source-domain documents through the source projection."""
    return _classify(model, source_space, corpus, seed, side="source")


def save_model(model: ProjectionClassifier, path: str | Path) -> None:
    """Serialize as one JSON document; floats survive round-trip exactly."""
    document = {
        "version": MODEL_FORMAT_VERSION,
        "d": model.source_dim,
        "d_prime": model.target_dim,
        "k": model.joint_dim,
        "label_order": list(model.label_order),
        "alpha": model.alpha,
        "ablated": model.ablated,
        "source_map": model.source_map.tolist(),
        "target_map": model.target_map.tolist(),
        "softmax_weights": model.softmax_weights.tolist(),
    }
    Path(path).write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", "utf-8")


def _require_shape(name: str, rows: list, n_rows: int, n_cols: int) -> np.ndarray:
    if len(rows) != n_rows or any(len(r) != n_cols for r in rows):
        raise DataError(f"model file field {name!r} does not match declared shape")
    return np.array(rows, dtype=np.float64)


def load_model(path: str | Path) -> ProjectionClassifier:
    path = Path(path)
    try:
        document = json.loads(path.read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(document, dict):
        raise DataError(f"{path}: expected a JSON object")
    version = document.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise DataError(f"{path}: unsupported model version {version!r}")
    try:
        d = int(document["d"])
        d_prime = int(document["d_prime"])
        k = int(document["k"])
        label_order = tuple(document["label_order"])
        source_map = _require_shape("source_map", document["source_map"], d, k)
        target_map = _require_shape("target_map", document["target_map"], d_prime, k)
        softmax_weights = _require_shape(
            "softmax_weights", document["softmax_weights"], k, 2
        )
    except KeyError as exc:
        raise DataError(f"{path}: missing field {exc.args[0]!r}") from None
    if len(label_order) != 2:
        raise DataError(f"{path}: label_order must have exactly two entries")
    try:
        return ProjectionClassifier(
            source_map=source_map,
            target_map=target_map,
            softmax_weights=softmax_weights,
            label_order=label_order,  # type: ignore[arg-type]
            ablated=bool(document.get("ablated", False)),
            alpha=document.get("alpha"),
        )
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def tune_grid(
    source_space: EmbeddingSpace,
    target_space: EmbeddingSpace,
    lexicon: ProjectionLexicon,
    splits: CorpusSplit,
    base_config: TrainConfig,
    alphas,
    batch_sizes,
) -> tuple[ProjectionClassifier, TrainReport, list[dict]]:
    """Grid-search alpha and batch size on dev macro F1.

    Returns the winning model and report plus one record per grid cell; on
    ties the earliest cell in (alpha, batch_size) iteration order wins.
    """
    from dataclasses import replace

    results: list[dict] = []
    best = None
    for alpha in alphas:
        for batch_size in batch_sizes:
            config = replace(base_config, alpha=alpha, batch_size=batch_size)
            candidate, report = train(source_space, target_space, lexicon, splits, config)
            dev_f1 = report.dev_macro_f1[report.best_epoch]
            results.append(
                {
                    "alpha": alpha,
                    "batch_size": batch_size,
                    "best_epoch": report.best_epoch,
                    "dev_macro_f1": dev_f1,
                }
            )
            if best is None or dev_f1 > best[0]:
                best = (dev_f1, candidate, report)
    assert best is not None, "empty grid"
    return best[1], best[2], results
