import math

import numpy as np
import pytest

from circlayout import (
    CirculantModel,
    adjacency,
    closed_form_spectrum,
    exact_pair_gap,
    first_row,
    fit_loglog_slope,
    model_matrix,
)

# 10-vertex reference adjacency for offsets {1, 2, 3}
REFERENCE_10 = np.array(
    [
        [0, 1, 1, 1, 0, 0, 0, 1, 1, 1],
        [1, 0, 1, 1, 1, 0, 0, 0, 1, 1],
        [1, 1, 0, 1, 1, 1, 0, 0, 0, 1],
        [1, 1, 1, 0, 1, 1, 1, 0, 0, 0],
        [0, 1, 1, 1, 0, 1, 1, 1, 0, 0],
        [0, 0, 1, 1, 1, 0, 1, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, 0, 1, 1, 1],
        [1, 0, 0, 0, 1, 1, 1, 0, 1, 1],
        [1, 1, 0, 0, 0, 1, 1, 1, 0, 1],
        [1, 1, 1, 0, 0, 0, 1, 1, 1, 0],
    ],
    dtype=float,
)


def brute_force_adjacency(n, offsets):
    """Oracle: edge iff the index difference is an offset in either circular direction."""
    a = np.zeros((n, n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and any((i - j) % n == s or (j - i) % n == s for s in offsets):
                a[i - 1, j - 1] = 1.0
    return a


def random_valid_model(rng, n_low=8, n_high=64, p=1.0):
    n = int(rng.integers(n_low, n_high + 1))
    top = math.ceil((n - 1) / 2)
    candidates = [s for s in range(1, top + 1) if 2 * s != n]
    size = int(rng.integers(1, len(candidates) + 1))
    offsets = tuple(sorted(rng.choice(candidates, size=size, replace=False).tolist()))
    return CirculantModel(n=n, offsets=offsets, p=p)


class TestCirculantModel:
    def test_rejects_small_n(self):
        with pytest.raises(ValueError, match="at least 5"):
            CirculantModel(n=4, offsets=(1,))

    def test_rejects_half_offset_for_even_n(self):
        with pytest.raises(ValueError, match="n/2"):
            CirculantModel(n=10, offsets=(1, 5))
        # odd n admits the ceiling offset
        CirculantModel(n=11, offsets=(5,))

    def test_rejects_out_of_range_offsets(self):
        with pytest.raises(ValueError):
            CirculantModel(n=10, offsets=(0,))
        with pytest.raises(ValueError):
            CirculantModel(n=10, offsets=(6,))

    def test_rejects_duplicates_and_empty(self):
        with pytest.raises(ValueError, match="duplicate"):
            CirculantModel(n=10, offsets=(1, 1))
        with pytest.raises(ValueError, match="nonempty"):
            CirculantModel(n=10, offsets=())

    def test_rejects_bad_p(self):
        for p in (0.0, -0.1, 1.5):
            with pytest.raises(ValueError):
                CirculantModel(n=10, offsets=(1,), p=p)

    def test_density_metadata_consistency(self):
        CirculantModel(n=10, offsets=(1, 2, 3), gamma=1.0, c=0.3)
        with pytest.raises(ValueError, match="density"):
            CirculantModel(n=10, offsets=(1, 2), gamma=1.0, c=0.3)
        with pytest.raises(ValueError, match="together"):
            CirculantModel(n=10, offsets=(1,), gamma=1.0)

    def test_from_density(self):
        model = CirculantModel.from_density(10, gamma=1.0, c=0.3)
        assert model.offsets == (1, 2, 3)
        assert model.degree == 6
        assert model.edge_count == 30

    def test_offsets_sorted(self):
        assert CirculantModel(n=11, offsets=(3, 1)).offsets == (1, 3)


class TestFirstRow:
    def test_reference_model(self):
        model = CirculantModel(n=10, offsets=(1, 2, 3))
        np.testing.assert_array_equal(first_row(model), REFERENCE_10[0])

    def test_cycle(self):
        model = CirculantModel(n=5, offsets=(1,))
        np.testing.assert_array_equal(first_row(model), [0, 1, 0, 0, 1])

    def test_against_brute_force(self):
        model = CirculantModel(n=12, offsets=(2, 5))
        expected = brute_force_adjacency(12, (2, 5))[0]
        np.testing.assert_array_equal(first_row(model), expected)
        np.testing.assert_array_equal(
            first_row(model), [0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0]
        )


class TestAdjacency:
    def test_reference_matrix(self):
        model = CirculantModel(n=10, offsets=(1, 2, 3))
        np.testing.assert_array_equal(adjacency(model), REFERENCE_10)

    def test_five_cycle(self):
        a = adjacency(CirculantModel(n=5, offsets=(1,)))
        expected = brute_force_adjacency(5, (1,))
        np.testing.assert_array_equal(a, expected)

    def test_rows_are_cyclic_shifts(self):
        model = CirculantModel(n=9, offsets=(2, 4))
        a = adjacency(model)
        row = first_row(model)
        for i in range(9):
            np.testing.assert_array_equal(a[i], np.roll(row, i))

    def test_symmetry_and_regularity(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            model = random_valid_model(rng)
            a = adjacency(model)
            np.testing.assert_array_equal(a, a.T)
            np.testing.assert_array_equal(np.diagonal(a), 0.0)
            np.testing.assert_array_equal(a.sum(axis=1), model.degree)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            model = random_valid_model(rng, n_high=24)
            np.testing.assert_array_equal(
                adjacency(model), brute_force_adjacency(model.n, model.offsets)
            )


class TestModelMatrix:
    def test_p_one_is_adjacency(self):
        model = CirculantModel(n=10, offsets=(1, 2, 3), p=1.0)
        np.testing.assert_array_equal(model_matrix(model), adjacency(model))

    def test_entries_scaled(self):
        model = CirculantModel(n=10, offsets=(1, 2, 3), p=0.5)
        m = model_matrix(model)
        assert set(np.unique(m)) == {0.0, 0.5}

    def test_frobenius_norm(self):
        model = CirculantModel(n=10, offsets=(1, 2, 3), p=0.3)
        # 2 n |S| nonzero entries of magnitude p
        expected = 0.3 * math.sqrt(2 * 10 * 3)
        assert np.linalg.norm(model_matrix(model), "fro") == pytest.approx(expected, abs=1e-12)


class TestClosedFormSpectrum:
    def test_lambda1_is_twice_offset_count(self):
        spec = closed_form_spectrum(CirculantModel(n=10, offsets=(1, 2, 3)))
        assert spec.lambda1 == 6.0

    def test_lambda2_matches_numeric_oracle(self):
        model = CirculantModel(n=10, offsets=(1, 2, 3))
        spec = closed_form_spectrum(model)
        numeric = np.linalg.eigvalsh(adjacency(model))[::-1]
        assert spec.lambda2 == pytest.approx(numeric[1], abs=1e-8)
        assert spec.lambda2 == pytest.approx(1.6180339887, abs=1e-9)

    def test_v2_entries(self):
        model = CirculantModel(n=17, offsets=(1, 4))
        spec = closed_form_spectrum(model)
        i = np.arange(1, 18)
        expected = 2.0 / math.sqrt(2 * 17) * np.cos((i - 1) * 2 * np.pi / 17)
        np.testing.assert_allclose(spec.v2, expected, atol=1e-14)

    def test_eigenvectors_orthonormal(self):
        spec = closed_form_spectrum(CirculantModel(n=40, offsets=(1, 2, 7)))
        basis = np.column_stack([spec.v1, spec.v2, spec.v3, spec.v4])
        np.testing.assert_allclose(basis.T @ basis, np.eye(4), atol=1e-12)

    def test_degenerate_pair_exact(self):
        spec = closed_form_spectrum(CirculantModel(n=23, offsets=(2, 5, 9)))
        assert spec.lambda2 == spec.lambda3

    def test_values_appear_in_numeric_spectrum(self):
        # holds for arbitrary valid offset sets, including high-frequency ones
        rng = np.random.default_rng(3)
        for _ in range(20):
            model = random_valid_model(rng)
            spec = closed_form_spectrum(model)
            numeric = np.linalg.eigvalsh(adjacency(model))
            for lam in (spec.lambda1, spec.lambda2, spec.lambda3, spec.lambda4):
                assert np.min(np.abs(numeric - lam)) < 1e-8
            assert numeric[-1] == pytest.approx(spec.lambda1, abs=1e-8)

    def test_eigenpairs_satisfy_eigen_equation(self):
        model = CirculantModel(n=12, offsets=(2, 5))
        a = adjacency(model)
        spec = closed_form_spectrum(model)
        for lam, vec in [
            (spec.lambda1, spec.v1),
            (spec.lambda2, spec.v2),
            (spec.lambda3, spec.v3),
            (spec.lambda4, spec.v4),
        ]:
            np.testing.assert_allclose(a @ vec, lam * vec, atol=1e-10)

    def test_gaps_positive_for_prefix_families(self):
        for n in (10, 50, 200, 801):
            for size in (1, 3, n // 4):
                model = CirculantModel(n=n, offsets=tuple(range(1, size + 1)))
                spec = closed_form_spectrum(model)
                assert spec.gap12 > 0
                assert spec.gap34 > 0

    def test_gap34_can_be_negative_for_high_offsets(self):
        # frequency-two value exceeds the frequency-one pair here
        spec = closed_form_spectrum(CirculantModel(n=10, offsets=(4,)))
        assert spec.gap34 < 0

    def test_eigengap_scaling_law(self):
        # log-log slope of both gaps vs n stays above 3*gamma - 2 - 0.2
        for gamma in (0.8, 1.0):
            sizes = [200, 400, 800, 1600]
            gap12s, gap34s = [], []
            for n in sizes:
                model = CirculantModel.from_density(n, gamma=gamma, c=0.25)
                spec = closed_form_spectrum(model)
                gap12s.append((n, spec.gap12))
                gap34s.append((n, spec.gap34))
            floor = 3 * gamma - 2 - 0.2
            assert fit_loglog_slope(gap12s)[0] >= floor
            assert fit_loglog_slope(gap34s)[0] >= floor


class TestExactPairGap:
    def test_zero_step(self):
        assert exact_pair_gap(100, 0) == 0.0

    def test_antipodal(self):
        assert exact_pair_gap(4, 2) == pytest.approx(2.0, abs=1e-15)

    def test_matches_direct_evaluation(self):
        spec = closed_form_spectrum(CirculantModel(n=1000, offsets=(1,)))
        k = 10
        for i in (0, 137, 990):
            j = (i + k) % 1000
            direct = (spec.v2[i] - spec.v2[j]) ** 2 + (spec.v3[i] - spec.v3[j]) ** 2
            assert exact_pair_gap(1000, k) == pytest.approx(direct, abs=1e-12)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            exact_pair_gap(10, 10)
        with pytest.raises(ValueError):
            exact_pair_gap(10, -1)

    def test_scaled_lower_bound_over_sweep(self):
        # exact_pair_gap * n**5 / k**4 is bounded below; minimum 128 at k = n/2
        worst = math.inf
        for n in (100, 200, 400, 800, 1600):
            for k in range(1, n // 2 + 1):
                worst = min(worst, exact_pair_gap(n, k) * n**5 / k**4)
        assert worst >= 128 - 1e-9
