"""Classification metrics and corpus-divergence analysis.

All divergences use base-2 logarithms, so the standard Jensen-Shannon
variant is bounded by 1 and ``1 - value`` works as a similarity score with
a diagonal of exactly 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .corpus import (
    LABEL_SET,
    LabeledCorpus,
    TermDistribution,
    build_term_distribution,
    shared_top_k_vocab,
)
from .errors import DataError

logger = logging.getLogger(__name__)

VARIANT_SYMMETRIZED_KL = "symmetrized_kl"
VARIANT_JENSEN_SHANNON = "jensen_shannon"
MODE_DIVERGENCE = "divergence"
MODE_SIMILARITY = "similarity"


@dataclass(frozen=True)
class EvalReport:
    """Confusion-derived metrics for one prediction run."""

    label_order: tuple[str, str]
    confusion: dict[str, dict[str, int]]  # gold label -> predicted label -> count
    accuracy: float
    precision: dict[str, float]
    recall: dict[str, float]
    f1: dict[str, float]
    macro_f1: float
    error_rate: dict[str, float]  # per gold class: errors / class size
    support: dict[str, int]
    n_documents: int

    def to_json_dict(self) -> dict:
        return {
            "label_order": list(self.label_order),
            "confusion": self.confusion,
            "n_documents": self.n_documents,
            "support": self.support,
            "metrics": {
                "accuracy": self.accuracy,
                "macro_f1": self.macro_f1,
                **{f"precision_{c}": self.precision[c] for c in self.label_order},
                **{f"recall_{c}": self.recall[c] for c in self.label_order},
                **{f"f1_{c}": self.f1[c] for c in self.label_order},
                **{f"error_rate_{c}": self.error_rate[c] for c in self.label_order},
            },
        }

    def to_text(self) -> str:
        header = f"{'class':<10}{'precision':>10}{'recall':>10}{'f1':>10}{'error_rate':>12}{'support':>9}"
        lines = [header]
        for c in self.label_order:
            lines.append(
                f"{c:<10}{self.precision[c]:>10.4f}{self.recall[c]:>10.4f}"
                f"{self.f1[c]:>10.4f}{self.error_rate[c]:>12.4f}{self.support[c]:>9d}"
            )
        lines.append("")
        lines.append(f"{'accuracy':<10}{self.accuracy:>10.4f}")
        lines.append(f"{'macro_f1':<10}{self.macro_f1:>10.4f}")
        lines.append(f"{'documents':<10}{self.n_documents:>10d}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DivergenceMatrix:
    """Pairwise term-distribution divergences (or similarities) across domains."""

    domain_names: tuple[str, ...]
    values: np.ndarray
    variant: str
    mode: str

    def to_csv(self) -> str:
        lines = ["domain," + ",".join(self.domain_names)]
        for name, row in zip(self.domain_names, self.values):
            lines.append(name + "," + ",".join(repr(float(x)) for x in row))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "domain_names": list(self.domain_names),
            "variant": self.variant,
            "mode": self.mode,
            "values": [[float(x) for x in row] for row in self.values],
        }


def evaluate(predictions, gold, label_order: tuple[str, str] = LABEL_SET) -> EvalReport:
    """Standard confusion-matrix metrics plus per-class error rates.

    The per-class error rate is the number of misclassified documents of a
    gold class divided by that class's size.
    """
    predictions = list(predictions)
    gold = list(gold)
    if len(predictions) != len(gold):
        raise ValueError(
            f"length mismatch: {len(predictions)} predictions vs {len(gold)} gold labels"
        )
    if not predictions:
        raise ValueError("nothing to evaluate")
    valid = set(label_order)
    for label in predictions + gold:
        if label not in valid:
            raise ValueError(f"unknown label {label!r}")

    confusion = {g: {p: 0 for p in label_order} for g in label_order}
    for p, g in zip(predictions, gold):
        confusion[g][p] += 1

    precision, recall, f1, error_rate, support = {}, {}, {}, {}, {}
    correct = 0
    for c in label_order:
        tp = confusion[c][c]
        predicted_c = sum(confusion[g][c] for g in label_order)
        gold_c = sum(confusion[c][p] for p in label_order)
        correct += tp
        precision[c] = tp / predicted_c if predicted_c else 0.0
        recall[c] = tp / gold_c if gold_c else 0.0
        if predicted_c == 0 and gold_c == 0:
            logger.warning("class %r absent from predictions and gold; F1 set to 0", c)
            f1[c] = 0.0
        elif precision[c] + recall[c] == 0.0:
            f1[c] = 0.0
        else:
            f1[c] = 2 * precision[c] * recall[c] / (precision[c] + recall[c])
        error_rate[c] = (gold_c - tp) / gold_c if gold_c else 0.0
        support[c] = gold_c

    return EvalReport(
        label_order=label_order,
        confusion=confusion,
        accuracy=correct / len(gold),
        precision=precision,
        recall=recall,
        f1=f1,
        macro_f1=(f1[label_order[0]] + f1[label_order[1]]) / 2,
        error_rate=error_rate,
        support=support,
        n_documents=len(gold),
    )


def _check_comparable(a: TermDistribution, b: TermDistribution) -> None:
    if a.vocabulary != b.vocabulary:
        raise ValueError("distributions are over different vocabularies")


def kl_divergence(a: TermDistribution, b: TermDistribution) -> float:
    """Kullback-Leibler divergence in bits; zero-probability a-terms contribute 0."""
    _check_comparable(a, b)
    pa, pb = a.probabilities, b.probabilities
    mask = pa > 0
    if np.any(pb[mask] == 0):
        raise ValueError("reference distribution has zero probability on a's support")
    return float(np.sum(pa[mask] * np.log2(pa[mask] / pb[mask])))


def js_divergence(
    a: TermDistribution, b: TermDistribution, variant: str = VARIANT_JENSEN_SHANNON
) -> float:
    """Symmetric divergence between two term distributions.

    ``symmetrized_kl`` averages the two KL directions. ``jensen_shannon``
    measures each distribution against the mixture and is bounded in [0, 1].
    """
    _check_comparable(a, b)
    if variant == VARIANT_SYMMETRIZED_KL:
        return 0.5 * (kl_divergence(a, b) + kl_divergence(b, a))
    if variant == VARIANT_JENSEN_SHANNON:
        mixture = TermDistribution(
            vocabulary=a.vocabulary,
            probabilities=(a.probabilities + b.probabilities) / 2,
        )
        return 0.5 * (kl_divergence(a, mixture) + kl_divergence(b, mixture))
    raise ValueError(f"unknown variant {variant!r}")


def divergence_matrix(
    corpora: list[LabeledCorpus],
    k: int = 10000,
    variant: str = VARIANT_JENSEN_SHANNON,
    mode: str = MODE_DIVERGENCE,
    epsilon: float = 1e-6,
) -> DivergenceMatrix:
    """Pairwise divergences over the shared top-k unigram vocabulary.

    Similarity mode reports ``1 - value`` and is only defined for the
    bounded jensen_shannon variant; its diagonal is exactly 1.
    """
    if len(corpora) < 2:
        raise ValueError("need at least two corpora")
    if mode not in (MODE_DIVERGENCE, MODE_SIMILARITY):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == MODE_SIMILARITY and variant != VARIANT_JENSEN_SHANNON:
        raise ValueError("similarity mode requires the jensen_shannon variant")

    vocabulary = shared_top_k_vocab(corpora, k)
    if not vocabulary:
        raise DataError("corpora share no vocabulary")
    distributions = [build_term_distribution(c, vocabulary, epsilon) for c in corpora]

    n = len(corpora)
    values = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            value = js_divergence(distributions[i], distributions[j], variant)
            if mode == MODE_SIMILARITY:
                value = 1.0 - value
            values[i, j] = values[j, i] = value
    if mode == MODE_SIMILARITY:
        np.fill_diagonal(values, 1.0)
    return DivergenceMatrix(
        domain_names=tuple(c.domain_name for c in corpora),
        values=values,
        variant=variant,
        mode=mode,
    )
