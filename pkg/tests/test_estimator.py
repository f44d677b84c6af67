import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from circlayout import CirculantModel, SpectralCircularOrdering, adjacency, sample


@pytest.fixture
def reference_adjacency():
    return adjacency(CirculantModel(n=10, offsets=(1, 2, 3)))


class TestSklearnProtocol:
    def test_get_set_params_and_clone(self):
        est = SpectralCircularOrdering(residual_tol=1e-10, validate=False)
        assert est.get_params() == {"residual_tol": 1e-10, "validate": False}
        est.set_params(residual_tol=1e-8)
        assert est.residual_tol == 1e-8
        copy = clone(est)
        assert copy.get_params() == est.get_params()

    def test_unfitted_raises(self):
        with pytest.raises(NotFittedError):
            SpectralCircularOrdering().aligned_ordering(np.arange(1, 11))

    def test_repr_round_trip(self):
        assert "SpectralCircularOrdering" in repr(SpectralCircularOrdering())


class TestFit:
    def test_fit_attributes(self, reference_adjacency):
        est = SpectralCircularOrdering().fit(reference_adjacency)
        assert est.ordering_.shape == (10,)
        assert sorted(est.ordering_) == list(range(1, 11))
        assert est.embedding_.shape == (10, 2)
        assert est.angles_.shape == (10,)
        assert est.eigenvalues_.shape == (3,)
        assert est.n_features_in_ == 10

    def test_fit_predict_and_transform(self, reference_adjacency):
        est = SpectralCircularOrdering()
        ranks = est.fit_predict(reference_adjacency)
        np.testing.assert_array_equal(ranks, est.ordering_)
        points = SpectralCircularOrdering().fit_transform(reference_adjacency)
        assert points.shape == (10, 2)

    def test_validate_false_path(self, reference_adjacency):
        a = SpectralCircularOrdering(validate=False).fit_predict(reference_adjacency)
        b = SpectralCircularOrdering().fit_predict(reference_adjacency)
        np.testing.assert_array_equal(a, b)

    def test_rejects_rectangular(self):
        with pytest.raises(ValueError):
            SpectralCircularOrdering().fit(np.zeros((4, 6)))

    def test_rejects_asymmetric(self):
        a = np.zeros((8, 8))
        a[0, 1] = 1.0
        with pytest.raises(ValueError, match="symmetric"):
            SpectralCircularOrdering().fit(a)


class TestScore:
    def test_perfect_recovery_scores_one(self, reference_adjacency):
        truth = np.arange(1, 11)
        score = SpectralCircularOrdering().score(reference_adjacency, truth)
        assert score == pytest.approx(1.0)

    def test_noisy_recovery_scores_below_one_above_zero(self):
        model = CirculantModel(n=80, offsets=tuple(range(1, 9)), p=0.7)
        inst = sample(model, seed=0)
        score = SpectralCircularOrdering().score(inst.adjacency, inst.hidden_truth)
        assert 0.0 < score < 1.0

    def test_aligned_ordering_matches_function(self, reference_adjacency):
        from circlayout import CircularOrder, align_to_truth

        truth = np.arange(1, 11)
        est = SpectralCircularOrdering().fit(reference_adjacency)
        via_method = est.aligned_ordering(truth)
        via_function = align_to_truth(CircularOrder(sigma=est.ordering_), truth)
        np.testing.assert_array_equal(via_method.sigma, via_function.sigma)
