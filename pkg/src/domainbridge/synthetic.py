"""Synthetic two-domain benchmark with a known ground-truth geometry.

Source word vectors are standard Gaussian; a designated fraction become
"sentiment words" whose means are shifted by +/- separation along one random
unit direction, so sentence averages are linearly separable. The target
space is the source space pushed through a rotation (random orthogonal by
default) plus Gaussian noise: the same semantics in incompatible
coordinates. A model that only ever learns one projection cannot classify
the rotated domain, which is exactly the contrast the benchmark exists to
demonstrate.

The projection lexicon pairs only the neutral filler words. Sentiment words
carry the class geometry, and aligning on them leaks that geometry into the
alignment objective — enough for even a single shared projection to find a
direction that classifies both domains, which would erase the contrast the
benchmark is meant to show. Filler-only supervision pins down the linear map
just as well (any d independent word vectors do) and generalizes to the
sentiment words exactly because the map is linear.

The optional disjoint mode gives the two domains non-overlapping sentiment
vocabularies, which starves any purely lexical classifier of cross-domain
evidence while leaving the embedding geometry intact.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import (
    NEGATIVE,
    POSITIVE,
    CorpusSplit,
    Document,
    LabeledCorpus,
    save_corpus,
)
from .embeddings import EmbeddingSpace, save_text_embeddings
from .lexicon import ProjectionLexicon, save_lexicon
from .seeding import rng_for

ROTATION_IDENTITY = "identity"
ROTATION_RANDOM_ORTHOGONAL = "random_orthogonal"


@dataclass(frozen=True)
class SyntheticSpec:
    dimension: int = 20
    vocab_size: int = 300
    sentiment_fraction: float = 0.3
    separation: float = 2.0
    rotation: str = ROTATION_RANDOM_ORTHOGONAL
    noise: float = 0.05
    sentence_length: int = 8
    n_train: int = 500
    n_dev: int = 100
    n_test: int = 200
    seed: int = 42
    disjoint_sentiment_vocab: bool = False

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        if self.vocab_size < 4:
            raise ValueError("vocab_size must be >= 4")
        if not 0.0 < self.sentiment_fraction < 1.0:
            raise ValueError("sentiment_fraction must be in (0, 1)")
        if self.separation < 0:
            raise ValueError("separation must be >= 0")
        if self.rotation not in (ROTATION_IDENTITY, ROTATION_RANDOM_ORTHOGONAL):
            raise ValueError(f"unknown rotation {self.rotation!r}")
        if self.noise < 0:
            raise ValueError("noise must be >= 0")
        if self.sentence_length < 1:
            raise ValueError("sentence_length must be >= 1")
        if min(self.n_train, self.n_dev, self.n_test) < 1:
            raise ValueError("corpus sizes must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "vocab_size": self.vocab_size,
            "sentiment_fraction": self.sentiment_fraction,
            "separation": self.separation,
            "rotation": self.rotation,
            "noise": self.noise,
            "sentence_length": self.sentence_length,
            "n_train": self.n_train,
            "n_dev": self.n_dev,
            "n_test": self.n_test,
            "seed": self.seed,
            "disjoint_sentiment_vocab": self.disjoint_sentiment_vocab,
        }


@dataclass(frozen=True)
class SyntheticBenchmark:
    source_space: EmbeddingSpace
    target_space: EmbeddingSpace
    splits: CorpusSplit  # labeled source train/dev/test
    target_test: LabeledCorpus
    lexicon: ProjectionLexicon  # identity pairs over the filler words
    rotation: np.ndarray  # the matrix that took source to target


def _random_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    """Random rotation whose plane angles all lie in [60, 120] degrees.

    A uniformly random orthogonal matrix routinely has planes that barely
    rotate; on such near-invariant directions the target space agrees with
    the source space, and a single shared projection can absorb the domain
    shift by collapsing onto them. Bounding every angle away from 0 and 180
    keeps the benchmark honest: only a second, separately learned projection
    can align the two domains.
    """
    basis, r = np.linalg.qr(rng.normal(size=(d, d)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    basis = basis * signs
    angles = rng.uniform(np.pi / 3, 2 * np.pi / 3, d // 2)
    blocks = np.zeros((d, d))
    for i, theta in enumerate(angles):
        c, s = np.cos(theta), np.sin(theta)
        blocks[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = [[c, -s], [s, c]]
    if d % 2:
        blocks[-1, -1] = -1.0  # +1 here would leave an invariant axis
    return basis @ blocks @ basis.T


def _make_corpus(
    rng: np.random.Generator,
    domain_name: str,
    n_docs: int,
    length: int,
    pos_pool: np.ndarray,
    neg_pool: np.ndarray,
    filler_pool: np.ndarray,
) -> LabeledCorpus:
    labels = [POSITIVE] * (n_docs // 2) + [NEGATIVE] * (n_docs - n_docs // 2)
    labels = [labels[i] for i in rng.permutation(n_docs)]
    documents = []
    for label in labels:
        pool = pos_pool if label == POSITIVE else neg_pool
        n_sentiment = 1 + int(rng.binomial(length - 1, 0.5)) if length > 1 else 1
        tokens = list(rng.choice(pool, size=n_sentiment))
        if length > n_sentiment:
            tokens += list(rng.choice(filler_pool, size=length - n_sentiment))
        tokens = [str(t) for t in tokens]
        rng.shuffle(tokens)
        documents.append(Document(tokens=tuple(tokens), label=label))
    return LabeledCorpus(domain_name=domain_name, documents=tuple(documents))


def generate_benchmark(spec: SyntheticSpec) -> SyntheticBenchmark:
    """Deterministically build embeddings, corpora, and lexicon from the settings."""
    n_sentiment = int(round(spec.sentiment_fraction * spec.vocab_size))
    needed = 4 if spec.disjoint_sentiment_vocab else 2
    if n_sentiment < needed:
        raise ValueError(
            f"sentiment_fraction * vocab_size must give at least {needed} words"
        )
    if n_sentiment >= spec.vocab_size:
        raise ValueError("no filler words left; lower sentiment_fraction")

    words = [f"w{i:04d}" for i in range(spec.vocab_size)]
    pos_words = np.array(words[: n_sentiment // 2])
    neg_words = np.array(words[n_sentiment // 2 : n_sentiment])
    fillers = np.array(words[n_sentiment:])

    rng = rng_for(spec.seed)
    source = rng.normal(size=(spec.vocab_size, spec.dimension))
    direction = rng.normal(size=spec.dimension)
    direction /= np.linalg.norm(direction)
    source[: n_sentiment // 2] += spec.separation * direction
    source[n_sentiment // 2 : n_sentiment] -= spec.separation * direction

    if spec.rotation == ROTATION_IDENTITY:
        rotation = np.eye(spec.dimension)
    else:
        rotation = _random_orthogonal(rng, spec.dimension)
    target = source @ rotation
    if spec.noise > 0:
        target = target + rng.normal(scale=spec.noise, size=target.shape)

    if spec.disjoint_sentiment_vocab:
        source_pos, target_pos = np.array_split(pos_words, 2)
        source_neg, target_neg = np.array_split(neg_words, 2)
    else:
        source_pos = target_pos = pos_words
        source_neg = target_neg = neg_words

    splits = CorpusSplit(
        train=_make_corpus(
            rng, "synthetic-source", spec.n_train, spec.sentence_length,
            source_pos, source_neg, fillers,
        ),
        dev=_make_corpus(
            rng, "synthetic-source", spec.n_dev, spec.sentence_length,
            source_pos, source_neg, fillers,
        ),
        test=_make_corpus(
            rng, "synthetic-source", spec.n_test, spec.sentence_length,
            source_pos, source_neg, fillers,
        ),
    )
    target_test = _make_corpus(
        rng, "synthetic-target", spec.n_test, spec.sentence_length,
        target_pos, target_neg, fillers,
    )

    vocabulary = {w: i for i, w in enumerate(words)}
    return SyntheticBenchmark(
        source_space=EmbeddingSpace(vocabulary=dict(vocabulary), matrix=source),
        target_space=EmbeddingSpace(vocabulary=dict(vocabulary), matrix=target),
        splits=splits,
        target_test=target_test,
        lexicon=ProjectionLexicon(pairs=tuple((str(w), str(w)) for w in fillers)),
        rotation=rotation,
    )


def save_benchmark(benchmark: SyntheticBenchmark, out_dir: str | Path) -> dict[str, Path]:
    """Write every benchmark artifact under out_dir; returns name -> path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "source_emb": out_dir / "source_emb.txt",
        "target_emb": out_dir / "target_emb.txt",
        "train": out_dir / "train.tsv",
        "dev": out_dir / "dev.tsv",
        "test": out_dir / "test.tsv",
        "target_test": out_dir / "target_test.tsv",
        "lexicon": out_dir / "lexicon.tsv",
    }
    save_text_embeddings(benchmark.source_space, paths["source_emb"])
    save_text_embeddings(benchmark.target_space, paths["target_emb"])
    save_corpus(benchmark.splits.train, paths["train"])
    save_corpus(benchmark.splits.dev, paths["dev"])
    save_corpus(benchmark.splits.test, paths["test"])
    save_corpus(benchmark.target_test, paths["target_test"])
    save_lexicon(benchmark.lexicon, paths["lexicon"])
    return paths
