import math

import numpy as np
import pytest

from conftest import corpus_from
from domainbridge.corpus import TermDistribution
from domainbridge.errors import DataError
from domainbridge.evaluation import (
    MODE_DIVERGENCE,
    MODE_SIMILARITY,
    VARIANT_JENSEN_SHANNON,
    VARIANT_SYMMETRIZED_KL,
    DivergenceMatrix,
    divergence_matrix,
    evaluate,
    js_divergence,
    kl_divergence,
)


def dist(*probs):
    probs = np.asarray(probs, dtype=np.float64)
    return TermDistribution(
        vocabulary=tuple(f"w{i}" for i in range(len(probs))), probabilities=probs
    )


class TestEvaluate:
    def test_balanced_confusion_hand_check(self):
        # 40 TP-pos, 10 pos->neg, 10 neg->pos, 40 TN
        preds = ["pos"] * 40 + ["neg"] * 10 + ["pos"] * 10 + ["neg"] * 40
        gold = ["pos"] * 50 + ["neg"] * 50
        report = evaluate(preds, gold)
        assert report.accuracy == pytest.approx(0.8)
        assert report.precision["pos"] == pytest.approx(40 / 50)
        assert report.recall["pos"] == pytest.approx(40 / 50)
        assert report.f1["pos"] == pytest.approx(0.8)
        assert report.macro_f1 == pytest.approx(0.8)
        assert report.error_rate["pos"] == pytest.approx(0.2)
        assert report.confusion == {
            "pos": {"pos": 40, "neg": 10},
            "neg": {"pos": 10, "neg": 40},
        }
        assert report.support == {"pos": 50, "neg": 50}
        assert report.n_documents == 100

    def test_twenty_correct_out_of_hundred(self):
        preds = ["pos"] * 100
        gold = ["pos"] * 20 + ["neg"] * 80
        report = evaluate(preds, gold)
        assert report.accuracy == pytest.approx(0.200)

    def test_all_correct(self):
        report = evaluate(["pos", "neg"], ["pos", "neg"])
        assert report.accuracy == 1.0
        assert report.macro_f1 == 1.0
        assert report.error_rate == {"pos": 0.0, "neg": 0.0}

    def test_pair_order_does_not_matter(self):
        rng = np.random.default_rng(0)
        preds = list(rng.choice(["pos", "neg"], size=60))
        gold = list(rng.choice(["pos", "neg"], size=60))
        base = evaluate(preds, gold)
        order = rng.permutation(60)
        shuffled = evaluate([preds[i] for i in order], [gold[i] for i in order])
        assert shuffled == base

    def test_balanced_symmetric_macro_equals_accuracy(self):
        # equal supports and symmetric confusion: macro F1 collapses to accuracy
        preds = ["pos"] * 30 + ["neg"] * 20 + ["pos"] * 20 + ["neg"] * 30
        gold = ["pos"] * 50 + ["neg"] * 50
        report = evaluate(preds, gold)
        assert report.macro_f1 == pytest.approx(report.accuracy)

    def test_absent_class_warns_and_zeroes_f1(self, caplog):
        with caplog.at_level("WARNING"):
            report = evaluate(["pos", "pos"], ["pos", "pos"])
        assert report.f1["neg"] == 0.0
        assert report.macro_f1 == pytest.approx(0.5)
        assert any("absent" in r.message for r in caplog.records)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            evaluate(["pos"], ["pos", "neg"])

    def test_empty_input(self):
        with pytest.raises(ValueError, match="nothing to evaluate"):
            evaluate([], [])

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="unknown label"):
            evaluate(["meh"], ["pos"])

    def test_json_dict_shape(self):
        report = evaluate(["pos", "neg"], ["pos", "pos"])
        payload = report.to_json_dict()
        assert payload["label_order"] == ["pos", "neg"]
        assert set(payload["metrics"]) == {
            "accuracy",
            "macro_f1",
            "precision_pos",
            "precision_neg",
            "recall_pos",
            "recall_neg",
            "f1_pos",
            "f1_neg",
            "error_rate_pos",
            "error_rate_neg",
        }

    def test_text_rendering_mentions_both_classes(self):
        text = evaluate(["pos", "neg"], ["pos", "neg"]).to_text()
        assert "pos" in text and "neg" in text and "macro_f1" in text


class TestKlDivergence:
    def test_identical_distributions_are_zero(self):
        a = dist(0.3, 0.7)
        assert kl_divergence(a, a) == 0.0

    def test_closed_form_one_bit(self):
        assert kl_divergence(dist(1.0, 0.0), dist(0.5, 0.5)) == pytest.approx(1.0)

    def test_closed_form_asymmetric(self):
        a, b = dist(0.5, 0.5), dist(0.25, 0.75)
        expected = 0.5 * math.log2(0.5 / 0.25) + 0.5 * math.log2(0.5 / 0.75)
        assert kl_divergence(a, b) == pytest.approx(expected)
        assert kl_divergence(a, b) != pytest.approx(kl_divergence(b, a))

    def test_zero_a_terms_contribute_nothing(self):
        assert kl_divergence(dist(0.0, 1.0), dist(0.5, 0.5)) == pytest.approx(1.0)

    def test_zero_reference_on_support_rejected(self):
        with pytest.raises(ValueError, match="zero probability"):
            kl_divergence(dist(0.5, 0.5), dist(1.0, 0.0))

    def test_mismatched_vocabularies_rejected(self):
        a = dist(0.5, 0.5)
        b = TermDistribution(vocabulary=("x", "y"), probabilities=np.array([0.5, 0.5]))
        with pytest.raises(ValueError, match="different vocabularies"):
            kl_divergence(a, b)


class TestJsDivergence:
    def test_symmetrized_kl_is_mean_of_directions(self):
        a, b = dist(0.4, 0.6), dist(0.7, 0.3)
        expected = 0.5 * (kl_divergence(a, b) + kl_divergence(b, a))
        assert js_divergence(a, b, VARIANT_SYMMETRIZED_KL) == pytest.approx(expected)

    def test_jensen_shannon_closed_form(self):
        a, b = dist(1.0, 0.0), dist(0.0, 1.0)
        assert js_divergence(a, b, VARIANT_JENSEN_SHANNON) == 1.0

    def test_identical_distributions_are_zero(self):
        a = dist(0.2, 0.8)
        assert js_divergence(a, a, VARIANT_JENSEN_SHANNON) == 0.0
        assert js_divergence(a, a, VARIANT_SYMMETRIZED_KL) == 0.0

    def test_random_pairs_bounded_symmetric_non_negative(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            size = int(rng.integers(2, 12))
            raw_a = rng.random(size) + 1e-6
            raw_b = rng.random(size) + 1e-6
            a, b = dist(*(raw_a / raw_a.sum())), dist(*(raw_b / raw_b.sum()))
            js = js_divergence(a, b, VARIANT_JENSEN_SHANNON)
            assert 0.0 <= js <= 1.0 + 1e-12
            assert js == pytest.approx(js_divergence(b, a, VARIANT_JENSEN_SHANNON))
            skl = js_divergence(a, b, VARIANT_SYMMETRIZED_KL)
            assert skl >= -1e-12
            # the mixture-based form never exceeds the symmetrized form
            assert js <= skl + 1e-12

    def test_unknown_variant(self):
        a = dist(0.5, 0.5)
        with pytest.raises(ValueError, match="unknown variant"):
            js_divergence(a, a, "hellinger")


class TestDivergenceMatrix:
    def corpora(self):
        books = corpus_from(
            {None: ["the plot was good", "the characters felt real the plot moved"]},
            name="books",
        )
        kitchen = corpus_from(
            {None: ["the blender was good", "the blade felt sharp the motor died"]},
            name="kitchen",
        )
        electronics = corpus_from(
            {None: ["the battery was good", "the screen felt bright the battery died"]},
            name="electronics",
        )
        return [books, kitchen, electronics]

    def test_symmetric_with_zero_diagonal(self):
        matrix = divergence_matrix(self.corpora(), k=50)
        np.testing.assert_array_equal(matrix.values, matrix.values.T)
        np.testing.assert_array_equal(np.diag(matrix.values), np.zeros(3))
        assert matrix.domain_names == ("books", "kitchen", "electronics")

    def test_similarity_diagonal_exactly_one(self):
        matrix = divergence_matrix(self.corpora(), k=50, mode=MODE_SIMILARITY)
        assert list(np.diag(matrix.values)) == [1.0, 1.0, 1.0]
        assert np.all(matrix.values <= 1.0)

    def test_similarity_requires_jensen_shannon(self):
        with pytest.raises(ValueError, match="similarity mode"):
            divergence_matrix(
                self.corpora(), k=50, variant=VARIANT_SYMMETRIZED_KL, mode=MODE_SIMILARITY
            )

    def test_needs_two_corpora(self):
        with pytest.raises(ValueError, match="two corpora"):
            divergence_matrix(self.corpora()[:1])

    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="unknown mode"):
            divergence_matrix(self.corpora(), mode="distance")

    def test_disjoint_vocabulary_raises(self):
        a = corpus_from({None: ["alpha beta"]}, name="a")
        b = corpus_from({None: ["gamma delta"]}, name="b")
        with pytest.raises(DataError, match="share no vocabulary"):
            divergence_matrix([a, b])

    def test_more_similar_pair_scores_lower(self):
        books = corpus_from({None: ["good story good plot fine telling"]}, name="books")
        books2 = corpus_from({None: ["good plot good story fine style"]}, name="books2")
        kitchen = corpus_from({None: ["good blender fine blade sharp motor"]}, name="kitchen")
        matrix = divergence_matrix([books, books2, kitchen], k=50)
        assert matrix.values[0, 1] < matrix.values[0, 2]

    def test_csv_round_trips_through_repr(self):
        matrix = divergence_matrix(self.corpora(), k=50)
        lines = matrix.to_csv().strip().split("\n")
        assert lines[0] == "domain,books,kitchen,electronics"
        parsed = np.array(
            [[float(x) for x in line.split(",")[1:]] for line in lines[1:]]
        )
        np.testing.assert_array_equal(parsed, matrix.values)

    def test_json_dict_shape(self):
        matrix = divergence_matrix(self.corpora(), k=50, mode=MODE_SIMILARITY)
        payload = matrix.to_json_dict()
        assert payload["mode"] == "similarity"
        assert payload["variant"] == VARIANT_JENSEN_SHANNON
        assert len(payload["values"]) == 3
