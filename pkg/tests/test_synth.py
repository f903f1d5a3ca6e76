import numpy as np
import pytest

from domainbridge.corpus import load_corpus
from domainbridge.embeddings import load_text_embeddings
from domainbridge.lexicon import load_lexicon
from domainbridge.seeding import rng_for
from domainbridge.synthetic import (
    ROTATION_IDENTITY,
    SyntheticSpec,
    _random_orthogonal,
    generate_benchmark,
    save_benchmark,
)


def small_spec(**overrides):
    base = dict(
        dimension=10,
        vocab_size=60,
        sentence_length=6,
        n_train=40,
        n_dev=16,
        n_test=20,
        seed=3,
    )
    base.update(overrides)
    return SyntheticSpec(**base)


class TestRandomOrthogonal:
    @pytest.mark.parametrize("d", [2, 3, 10, 21])
    def test_orthogonal(self, d):
        q = _random_orthogonal(rng_for(0), d)
        np.testing.assert_allclose(q.T @ q, np.eye(d), atol=1e-9)

    @pytest.mark.parametrize("seed", [0, 1, 42, 123])
    def test_no_near_invariant_directions(self, seed):
        # every plane rotates by at least 60 degrees, so the smallest
        # singular value of Q - I is at least 2*sin(30deg) = 1
        q = _random_orthogonal(rng_for(seed), 20)
        smallest = np.linalg.svd(q - np.eye(20), compute_uv=False).min()
        assert smallest >= 1.0 - 1e-9

    def test_odd_dimension_has_no_fixed_axis(self):
        q = _random_orthogonal(rng_for(7), 9)
        smallest = np.linalg.svd(q - np.eye(9), compute_uv=False).min()
        assert smallest >= 1.0 - 1e-9

    def test_determinant_sign(self):
        # pure rotation blocks for even d; the odd leftover flips orientation
        assert np.linalg.det(_random_orthogonal(rng_for(1), 8)) == pytest.approx(1.0)
        assert np.linalg.det(_random_orthogonal(rng_for(1), 9)) == pytest.approx(-1.0)


class TestGenerateBenchmark:
    def test_identity_rotation_without_noise_copies_the_space(self):
        b = generate_benchmark(small_spec(rotation=ROTATION_IDENTITY, noise=0.0))
        np.testing.assert_array_equal(b.source_space.matrix, b.target_space.matrix)
        np.testing.assert_array_equal(b.rotation, np.eye(10))

    def test_target_is_exactly_rotated_source_without_noise(self):
        b = generate_benchmark(small_spec(noise=0.0))
        np.testing.assert_array_equal(b.source_space.matrix @ b.rotation, b.target_space.matrix)

    def test_deterministic(self):
        a = generate_benchmark(small_spec())
        b = generate_benchmark(small_spec())
        np.testing.assert_array_equal(a.source_space.matrix, b.source_space.matrix)
        np.testing.assert_array_equal(a.target_space.matrix, b.target_space.matrix)
        assert a.splits.train == b.splits.train
        assert a.target_test == b.target_test
        assert a.lexicon == b.lexicon

    def test_sizes_and_balance(self):
        b = generate_benchmark(small_spec())
        assert len(b.splits.train.documents) == 40
        assert len(b.splits.dev.documents) == 16
        assert len(b.splits.test.documents) == 20
        assert len(b.target_test.documents) == 20
        labels = [d.label for d in b.splits.train.documents]
        assert labels.count("pos") == 20 and labels.count("neg") == 20
        assert all(len(d.tokens) == 6 for d in b.splits.train.documents)
        assert len(b.source_space) == 60
        assert b.source_space.dimension == 10

    def test_lexicon_contains_no_sentiment_words(self):
        b = generate_benchmark(small_spec())
        # 30% of 60 words carry sentiment: w0000..w0017
        sentiment = {f"w{i:04d}" for i in range(18)}
        lexicon_words = {s for s, _ in b.lexicon.pairs}
        assert lexicon_words.isdisjoint(sentiment)
        assert len(b.lexicon) == 60 - 18
        assert all(s == t for s, t in b.lexicon.pairs)

    def test_sentiment_words_separate_along_a_direction(self):
        b = generate_benchmark(small_spec(separation=3.0, noise=0.0))
        pos = b.source_space.matrix[:9].mean(axis=0)
        neg = b.source_space.matrix[9:18].mean(axis=0)
        fillers = b.source_space.matrix[18:].mean(axis=0)
        # class means sit on opposite sides of the filler cloud
        gap = np.linalg.norm(pos - neg)
        assert gap > np.linalg.norm(pos - fillers)
        assert gap > 3.0  # at least the configured separation

    def test_disjoint_sentiment_vocabulary(self):
        b = generate_benchmark(small_spec(disjoint_sentiment_vocab=True))
        sentiment = {f"w{i:04d}" for i in range(18)}
        source_used = set()
        for corpus in (b.splits.train, b.splits.dev, b.splits.test):
            for doc in corpus.documents:
                source_used.update(set(doc.tokens) & sentiment)
        target_used = set()
        for doc in b.target_test.documents:
            target_used.update(set(doc.tokens) & sentiment)
        assert source_used and target_used
        assert source_used.isdisjoint(target_used)

    def test_documents_mix_sentiment_and_filler(self):
        b = generate_benchmark(small_spec())
        sentiment = {f"w{i:04d}" for i in range(18)}
        n_sentiment_tokens = [
            sum(1 for t in d.tokens if t in sentiment) for d in b.splits.train.documents
        ]
        assert all(n >= 1 for n in n_sentiment_tokens)
        assert any(n < 6 for n in n_sentiment_tokens)

    def test_rejects_fraction_without_enough_sentiment_words(self):
        with pytest.raises(ValueError, match="at least"):
            generate_benchmark(small_spec(vocab_size=20, sentiment_fraction=0.05))

    def test_rejects_fraction_without_fillers(self):
        # 0.999 * 60 rounds to the whole vocabulary
        with pytest.raises(ValueError, match="filler"):
            generate_benchmark(small_spec(sentiment_fraction=0.999))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            small_spec(dimension=0)
        with pytest.raises(ValueError):
            small_spec(sentiment_fraction=1.5)
        with pytest.raises(ValueError):
            small_spec(rotation="shear")
        with pytest.raises(ValueError):
            small_spec(noise=-0.1)


class TestSaveBenchmark:
    def test_round_trip(self, tmp_path):
        b = generate_benchmark(small_spec())
        paths = save_benchmark(b, tmp_path / "bench")
        assert sorted(paths) == [
            "dev",
            "lexicon",
            "source_emb",
            "target_emb",
            "target_test",
            "test",
            "train",
        ]
        for path in paths.values():
            assert path.exists()

        source = load_text_embeddings(paths["source_emb"])
        np.testing.assert_array_equal(source.matrix, b.source_space.matrix)
        assert source.vocabulary == b.source_space.vocabulary

        train = load_corpus(paths["train"], domain_name="synthetic-source")
        assert train == b.splits.train
        target_test = load_corpus(paths["target_test"], domain_name="synthetic-target")
        assert target_test == b.target_test

        assert load_lexicon(paths["lexicon"]) == b.lexicon
