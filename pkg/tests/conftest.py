import numpy as np
import pytest

from domainbridge.corpus import Document, LabeledCorpus
from domainbridge.embeddings import EmbeddingSpace
from domainbridge.synthetic import SyntheticSpec, generate_benchmark


def corpus_from(texts_by_label, name="toy"):
    """Build a LabeledCorpus from {label-or-None: [text, ...]}."""
    docs = []
    for label, texts in texts_by_label.items():
        for text in texts:
            docs.append(Document(tokens=tuple(text.split()), label=label))
    return LabeledCorpus(domain_name=name, documents=tuple(docs))


@pytest.fixture
def tiny_space():
    vocab = {"good": 0, "bad": 1, "book": 2, "film": 3}
    matrix = np.array(
        [[1.0, 0.0, 0.5], [-1.0, 0.0, -0.5], [0.0, 1.0, 0.25], [0.0, -1.0, 0.75]]
    )
    return EmbeddingSpace(vocabulary=vocab, matrix=matrix)


@pytest.fixture(scope="session")
def default_benchmark():
    # the rotated-domain benchmark several suites share; generation is cheap
    # but deterministic, so one instance serves them all
    return generate_benchmark(SyntheticSpec())
