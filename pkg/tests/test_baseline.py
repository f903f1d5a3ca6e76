import numpy as np
import pytest

from conftest import corpus_from
from domainbridge.baseline import (
    DEFAULT_C_GRID,
    FEATURES_COUNT,
    FEATURES_TFIDF,
    LinearModel,
    fit_baseline,
    fit_vectorizer,
    load_baseline,
    predict_labels,
    save_baseline,
    train_linear_svm,
)
from domainbridge.errors import DataError


def separable_corpus(n_per_class=12, name="books"):
    pos = [f"excellent story number {i}" for i in range(n_per_class)]
    neg = [f"terrible story number {i}" for i in range(n_per_class)]
    return corpus_from({"pos": pos, "neg": neg}, name=name)


class TestFitVectorizer:
    def test_min_df_drops_rare_features(self):
        corpus = corpus_from({None: ["common rare", "common other"]})
        vec = fit_vectorizer(corpus, min_df=2)
        assert list(vec.vocabulary) == ["common"]

    def test_vocabulary_is_lexicographic(self):
        corpus = corpus_from({None: ["zebra apple", "zebra apple"]})
        vec = fit_vectorizer(corpus, min_df=2)
        assert list(vec.vocabulary) == ["apple", "zebra", "zebra_apple"]
        assert vec.vocabulary["apple"] == 0

    def test_df_counts_documents_not_occurrences(self):
        # "twice twice" is one document, so df("twice") == 1 < 2
        corpus = corpus_from({None: ["twice twice", "unique words"]})
        with pytest.raises(DataError, match="document frequency"):
            fit_vectorizer(corpus, min_df=2)

    def test_unigram_only(self):
        corpus = corpus_from({None: ["a b", "a b"]})
        vec = fit_vectorizer(corpus, max_n=1, min_df=2)
        assert list(vec.vocabulary) == ["a", "b"]

    def test_tfidf_weights_shape_and_floor(self):
        corpus = corpus_from({None: ["a b", "a c"]})
        vec = fit_vectorizer(corpus, min_df=1, mode=FEATURES_TFIDF)
        assert vec.idf.shape == (vec.n_features,)
        # a feature present in every document keeps weight exactly 1
        assert vec.idf[vec.vocabulary["a"]] == pytest.approx(1.0)
        assert vec.idf[vec.vocabulary["b"]] > 1.0

    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="unknown feature mode"):
            fit_vectorizer(corpus_from({None: ["a", "a"]}), mode="hashing")


class TestTransform:
    def test_binary_values_are_ones(self):
        corpus = corpus_from({None: ["a a b", "a b"]})
        vec = fit_vectorizer(corpus, min_df=2, max_n=1)
        indices, values = vec.transform_tokens(["a", "a", "b"])
        np.testing.assert_array_equal(indices, [0, 1])
        np.testing.assert_array_equal(values, [1.0, 1.0])

    def test_count_values(self):
        corpus = corpus_from({None: ["a a b", "a b"]})
        vec = fit_vectorizer(corpus, min_df=2, max_n=1, mode=FEATURES_COUNT)
        _, values = vec.transform_tokens(["a", "a", "a", "b"])
        np.testing.assert_array_equal(values, [3.0, 1.0])

    def test_tfidf_values_are_count_times_idf(self):
        corpus = corpus_from({None: ["a b", "a c"]})
        vec = fit_vectorizer(corpus, min_df=1, max_n=1, mode=FEATURES_TFIDF)
        indices, values = vec.transform_tokens(["b", "b"])
        np.testing.assert_allclose(values, [2.0 * vec.idf[vec.vocabulary["b"]]])

    def test_unseen_features_yield_empty_doc(self):
        corpus = corpus_from({None: ["a b", "a b"]})
        vec = fit_vectorizer(corpus, min_df=2)
        indices, values = vec.transform_tokens(["never", "seen"])
        assert indices.size == 0 and values.size == 0

    def test_indices_sorted(self):
        corpus = corpus_from({None: ["c b a", "a b c"]})
        vec = fit_vectorizer(corpus, min_df=2, max_n=1)
        indices, _ = vec.transform_tokens(["c", "a", "b"])
        assert list(indices) == sorted(indices)


class TestTrainLinearSvm:
    def test_separates_separable_data(self):
        corpus = separable_corpus()
        vec = fit_vectorizer(corpus, min_df=2)
        docs = vec.transform(corpus)
        signs = np.array([1.0] * 12 + [-1.0] * 12)
        w, b = train_linear_svm(docs, signs, vec.n_features, C=10.0, seed=0)
        model = LinearModel(weights=w, bias=b, C=10.0)
        assert model.predict(docs) == ["pos"] * 12 + ["neg"] * 12

    def test_seed_determinism(self):
        corpus = separable_corpus()
        vec = fit_vectorizer(corpus, min_df=2)
        docs = vec.transform(corpus)
        signs = np.array([1.0] * 12 + [-1.0] * 12)
        w1, b1 = train_linear_svm(docs, signs, vec.n_features, C=1.0, seed=5)
        w2, b2 = train_linear_svm(docs, signs, vec.n_features, C=1.0, seed=5)
        np.testing.assert_array_equal(w1, w2)
        assert b1 == b2

    def test_different_seeds_differ(self):
        corpus = separable_corpus()
        vec = fit_vectorizer(corpus, min_df=2)
        docs = vec.transform(corpus)
        signs = np.array([1.0] * 12 + [-1.0] * 12)
        w1, _ = train_linear_svm(docs, signs, vec.n_features, C=1.0, seed=5)
        w2, _ = train_linear_svm(docs, signs, vec.n_features, C=1.0, seed=6)
        assert not np.array_equal(w1, w2)

    def test_rejects_bad_C(self):
        with pytest.raises(ValueError, match="C must be positive"):
            train_linear_svm([], np.array([]), 3, C=0.0, seed=0)

    def test_rejects_empty_training_set(self):
        with pytest.raises(DataError, match="empty training set"):
            train_linear_svm([], np.array([]), 3, C=1.0, seed=0)


class TestLinearModel:
    def test_decision_is_sparse_dot_plus_bias(self):
        model = LinearModel(weights=np.array([1.0, -2.0, 0.5]), bias=0.25, C=1.0)
        doc = (np.array([0, 2]), np.array([2.0, 4.0]))
        assert model.decision(doc) == pytest.approx(2.0 + 2.0 + 0.25)

    def test_boundary_goes_positive(self):
        model = LinearModel(weights=np.zeros(2), bias=0.0, C=1.0)
        assert model.predict([(np.array([0]), np.array([1.0]))]) == ["pos"]

    def test_positive_scaling_preserves_predictions(self):
        rng = np.random.default_rng(4)
        w = rng.normal(size=6)
        b = float(rng.normal())
        docs = [
            (np.sort(rng.choice(6, size=3, replace=False)), rng.normal(size=3))
            for _ in range(40)
        ]
        base = LinearModel(weights=w, bias=b, C=1.0)
        scaled = LinearModel(weights=7.5 * w, bias=7.5 * b, C=1.0)
        assert base.predict(docs) == scaled.predict(docs)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError, match="non-finite"):
            LinearModel(weights=np.array([np.inf]), bias=0.0, C=1.0)


class TestFitBaseline:
    def test_in_domain_accuracy_on_separable_data(self):
        train = separable_corpus(n_per_class=15)
        dev = separable_corpus(n_per_class=5)
        vec, model, grid = fit_baseline(train, dev)
        predictions = predict_labels(vec, model, dev)
        gold = [d.label for d in dev.documents]
        assert sum(p == g for p, g in zip(predictions, gold)) == len(gold)

    def test_grid_covers_all_C_values_sorted(self):
        train = separable_corpus()
        dev = separable_corpus(n_per_class=4)
        _, _, grid = fit_baseline(train, dev)
        assert [cell["C"] for cell in grid] == sorted(DEFAULT_C_GRID)
        assert all(0.0 <= cell["dev_accuracy"] <= 1.0 for cell in grid)

    def test_ties_prefer_smaller_C(self):
        train = separable_corpus()
        dev = separable_corpus(n_per_class=4)
        _, model, grid = fit_baseline(train, dev)
        best = max(cell["dev_accuracy"] for cell in grid)
        smallest_best_C = min(cell["C"] for cell in grid if cell["dev_accuracy"] == best)
        assert model.C == smallest_best_C

    def test_single_class_train_rejected(self):
        train = corpus_from({"pos": ["fine words here", "more fine words"]})
        dev = separable_corpus(n_per_class=2)
        with pytest.raises(DataError, match="both classes"):
            fit_baseline(train, dev)

    def test_unlabeled_dev_rejected(self):
        train = separable_corpus()
        dev = corpus_from({None: ["missing label text"]})
        with pytest.raises(DataError, match="labels required"):
            fit_baseline(train, dev)

    def test_unlabeled_train_rejected(self):
        train = corpus_from({None: ["missing label text"]})
        dev = separable_corpus(n_per_class=2)
        with pytest.raises(DataError, match="labels required"):
            fit_baseline(train, dev)


class TestSaveLoad:
    def test_round_trip_predictions_identical(self, tmp_path):
        train = separable_corpus()
        dev = separable_corpus(n_per_class=4)
        vec, model, _ = fit_baseline(train, dev, mode=FEATURES_TFIDF)
        path = tmp_path / "baseline.json"
        save_baseline(vec, model, path)
        vec2, model2 = load_baseline(path)
        assert vec2.vocabulary == vec.vocabulary
        np.testing.assert_array_equal(vec2.idf, vec.idf)
        np.testing.assert_array_equal(model2.weights, model.weights)
        assert model2.bias == model.bias and model2.C == model.C
        probe = separable_corpus(n_per_class=3, name="probe")
        assert predict_labels(vec, model, probe) == predict_labels(vec2, model2, probe)

    def test_weight_count_mismatch(self, tmp_path):
        import json

        train = separable_corpus()
        dev = separable_corpus(n_per_class=4)
        vec, model, _ = fit_baseline(train, dev)
        path = tmp_path / "baseline.json"
        save_baseline(vec, model, path)
        doc = json.loads(path.read_text("utf-8"))
        doc["weights"] = doc["weights"][:-1]
        path.write_text(json.dumps(doc), "utf-8")
        with pytest.raises(DataError, match="weight count"):
            load_baseline(path)

    def test_unsupported_version(self, tmp_path):
        path = tmp_path / "baseline.json"
        path.write_text('{"version": 0}', "utf-8")
        with pytest.raises(DataError, match="unsupported model version"):
            load_baseline(path)
