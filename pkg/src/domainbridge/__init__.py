"""Cross-domain embedding projection for sentiment transfer.

Learns two linear maps from per-domain embedding spaces into one shared
space while training a softmax sentiment classifier on that space, so a
model fit on labeled source text can classify an unlabeled target domain.
Ships with corpus/embedding/lexicon IO, divergence analysis, a bag-of-words
baseline, and a synthetic rotated-domain benchmark.
"""

from .baseline import (
    BowVectorizer,
    LinearModel,
    fit_baseline,
    fit_vectorizer,
    load_baseline,
    predict_labels,
    save_baseline,
)
from .corpus import (
    CorpusSplit,
    Document,
    LabeledCorpus,
    TermDistribution,
    build_term_distribution,
    extract_ngrams,
    load_corpus,
    save_corpus,
    shared_top_k_vocab,
    tokenize,
)
from .embeddings import EmbeddingSpace, load_text_embeddings, save_text_embeddings
from .errors import DataError, DomainBridgeError, ParseError, TrainingDiverged
from .evaluation import (
    DivergenceMatrix,
    EvalReport,
    divergence_matrix,
    evaluate,
    js_divergence,
    kl_divergence,
)
from .lexicon import (
    ProjectionLexicon,
    frequency_lexicon,
    load_lexicon,
    mutual_information_lexicon,
    save_lexicon,
    word_list_lexicon,
)
from .model import (
    ClassificationResult,
    ProjectionClassifier,
    TrainConfig,
    TrainReport,
    classify_source,
    classify_target,
    gradients,
    joint_loss,
    load_model,
    projection_loss,
    save_model,
    sentiment_loss,
    train,
    tune_grid,
)
from .synthetic import SyntheticBenchmark, SyntheticSpec, generate_benchmark, save_benchmark

__version__ = "0.1.0"

__all__ = [
    "BowVectorizer",
    "ClassificationResult",
    "CorpusSplit",
    "DataError",
    "DivergenceMatrix",
    "Document",
    "DomainBridgeError",
    "EmbeddingSpace",
    "EvalReport",
    "LabeledCorpus",
    "LinearModel",
    "ParseError",
    "ProjectionClassifier",
    "ProjectionLexicon",
    "SyntheticBenchmark",
    "SyntheticSpec",
    "TermDistribution",
    "TrainConfig",
    "TrainReport",
    "TrainingDiverged",
    "build_term_distribution",
    "classify_source",
    "classify_target",
    "divergence_matrix",
    "evaluate",
    "extract_ngrams",
    "fit_baseline",
    "fit_vectorizer",
    "frequency_lexicon",
    "generate_benchmark",
    "gradients",
    "joint_loss",
    "js_divergence",
    "kl_divergence",
    "load_baseline",
    "load_corpus",
    "load_lexicon",
    "load_model",
    "load_text_embeddings",
    "mutual_information_lexicon",
    "predict_labels",
    "projection_loss",
    "save_baseline",
    "save_benchmark",
    "save_corpus",
    "save_lexicon",
    "save_model",
    "save_text_embeddings",
    "sentiment_loss",
    "shared_top_k_vocab",
    "tokenize",
    "train",
    "tune_grid",
    "word_list_lexicon",
]
