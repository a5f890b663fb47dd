import math

import numpy as np
import pytest

from hazemap.matrices import (
    DissimilarityMatrix,
    diameter,
    dual,
    load_csv,
    merge_pointwise,
    metric_completion,
    save_csv,
    symmetrize,
    validate,
)
from hazemap.schemes import HyperbolicScheme, MinScheme, TruncatedScheme

from oracles import floyd_warshall, random_symmetric_dyadic

INF = math.inf


def three_point_counterexample():
    """Two individually metric triangles whose min-merge is not metric.

    d1: xy=1, xz=yz=3 and d2: xz=1, xy=yz=3, with x, y, z at indices 0, 1, 2.
    """
    d1 = DissimilarityMatrix([[0, 1, 3], [1, 0, 3], [3, 3, 0]])
    d2 = DissimilarityMatrix([[0, 3, 1], [3, 0, 3], [1, 3, 0]])
    return d1, d2


class TestConstruction:
    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError):
            DissimilarityMatrix([[1.0]])

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            DissimilarityMatrix([[0, math.nan], [1, 0]])

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            DissimilarityMatrix([[0, -1], [1, 0]])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            DissimilarityMatrix([[0, 1, 2], [1, 0, 2]])

    def test_immutable(self):
        d = DissimilarityMatrix([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            d.values[0, 1] = 5.0

    def test_flags(self):
        d = DissimilarityMatrix([[0, 1], [2, 0]])
        assert not d.is_symmetric
        assert not d.is_uber_metric
        m = DissimilarityMatrix([[0, 1], [1, 0]])
        assert m.is_symmetric
        assert m.is_uber_metric


class TestDual:
    def test_symmetric_fixed_point(self):
        d = DissimilarityMatrix([[0, 2], [2, 0]])
        assert dual(d) == d

    def test_swaps_orientations(self):
        d = DissimilarityMatrix([[0, 1], [3, 0]])
        dd = dual(d)
        assert dd[0, 1] == 3 and dd[1, 0] == 1

    def test_involution(self):
        rng = np.random.default_rng(3)
        m = rng.random((6, 6)) * 9
        np.fill_diagonal(m, 0)
        d = DissimilarityMatrix(m)
        assert dual(dual(d)) == d


class TestMergePointwise:
    def test_paper_triple_min_merge(self):
        d1, d2 = three_point_counterexample()
        merged = merge_pointwise(d1, d2, MinScheme())
        assert merged[0, 1] == 1 and merged[0, 2] == 1 and merged[1, 2] == 3

    def test_all_infinite_is_identity(self):
        rng = np.random.default_rng(4)
        m = rng.random((5, 5)) * 2
        np.fill_diagonal(m, 0)
        d = DissimilarityMatrix(m)
        blank = np.full((5, 5), INF)
        np.fill_diagonal(blank, 0)
        for scheme in (MinScheme(), TruncatedScheme(0.5), HyperbolicScheme()):
            assert merge_pointwise(d, DissimilarityMatrix(blank), scheme) == d

    def test_min_self_merge_is_identity(self):
        rng = np.random.default_rng(5)
        m = rng.random((4, 4))
        np.fill_diagonal(m, 0)
        d = DissimilarityMatrix(m)
        assert merge_pointwise(d, d, MinScheme()) == d

    def test_dimension_mismatch(self):
        d1 = DissimilarityMatrix([[0, 1], [1, 0]])
        d2 = DissimilarityMatrix([[0]])
        with pytest.raises(ValueError):
            merge_pointwise(d1, d2, MinScheme())

    def test_preserves_symmetry_and_diagonal(self):
        rng = np.random.default_rng(6)
        m = rng.random((7, 7)) * 5
        m = (m + m.T) / 2
        np.fill_diagonal(m, 0)
        a = DissimilarityMatrix(m)
        b = DissimilarityMatrix(m * 0.3)
        merged = merge_pointwise(a, b, HyperbolicScheme())
        assert merged.is_symmetric
        assert not np.diagonal(merged.values).any()


class TestSymmetrize:
    def test_min_takes_smaller_orientation(self):
        d = DissimilarityMatrix([[0, 1], [3, 0]])
        s = symmetrize(d, MinScheme())
        assert s[0, 1] == 1 and s[1, 0] == 1

    def test_symmetric_unchanged_under_min(self):
        d = DissimilarityMatrix([[0, 2, 5], [2, 0, 1], [5, 1, 0]])
        assert symmetrize(d, MinScheme()) == d

    def test_infinite_orientation_ignored(self):
        d = DissimilarityMatrix([[0, 2], [INF, 0]])
        for scheme in (MinScheme(), HyperbolicScheme(), TruncatedScheme(9)):
            s = symmetrize(d, scheme)
            assert s[0, 1] == 2 and s[1, 0] == 2


class TestMetricCompletion:
    def test_counterexample_restores_triangle(self):
        d1, d2 = three_point_counterexample()
        merged = merge_pointwise(d1, d2, MinScheme())
        completed = metric_completion(merged)
        assert completed[1, 2] == 2.0  # y-z through x
        assert not validate(completed).violations

    def test_identity_on_uber_metric(self):
        d = DissimilarityMatrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
        assert metric_completion(d) == d

    def test_matches_oracle_on_random_instances(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            m = random_symmetric_dyadic(rng, 20)
            completed = metric_completion(DissimilarityMatrix(m))
            expected = floyd_warshall(m)
            assert np.array_equal(completed.values, expected)

    def test_never_exceeds_input(self):
        rng = np.random.default_rng(8)
        m = random_symmetric_dyadic(rng, 15)
        completed = metric_completion(DissimilarityMatrix(m))
        assert (completed.values <= m).all()

    def test_idempotent(self):
        rng = np.random.default_rng(9)
        m = random_symmetric_dyadic(rng, 12)
        once = metric_completion(DissimilarityMatrix(m))
        twice = metric_completion(once)
        assert once == twice

    def test_disconnected_stays_infinite(self):
        d = DissimilarityMatrix([[0, 1, INF], [1, 0, INF], [INF, INF, 0]])
        completed = metric_completion(d)
        assert completed[0, 2] == INF

    def test_asymmetric_rejected(self):
        d = DissimilarityMatrix([[0, 1], [2, 0]])
        with pytest.raises(ValueError):
            metric_completion(d)


class TestValidate:
    def test_completed_matrix_clean(self):
        d1, d2 = three_point_counterexample()
        completed = metric_completion(merge_pointwise(d1, d2, MinScheme()))
        report = validate(completed)
        assert report.is_uber_metric
        assert not report.violations

    def test_counterexample_flags_mid_vertex(self):
        d1, d2 = three_point_counterexample()
        merged = merge_pointwise(d1, d2, MinScheme())
        report = validate(merged)
        assert report.violations
        # every violation routes through x (index 0) between y and z
        for v in report.violations:
            assert v.j == 0
            assert {v.i, v.k} == {1, 2}
            assert v.lhs == 3.0 and v.rhs == 2.0

    def test_infinite_entry_with_finite_detour(self):
        d = DissimilarityMatrix([[0, 1, INF], [1, 0, 1], [INF, 1, 0]])
        report = validate(d)
        assert any(v.lhs == INF for v in report.violations)

    def test_cap_truncates(self):
        rng = np.random.default_rng(10)
        m = random_symmetric_dyadic(rng, 25, inf_frac=0.5)
        report = validate(DissimilarityMatrix(m), cap=5)
        assert report.truncated
        assert len(report.violations) == 5

    def test_asymmetry_reported(self):
        d = DissimilarityMatrix([[0, 1], [3, 0]])
        report = validate(d)
        assert not report.is_symmetric
        assert report.max_asymmetry == 2.0


class TestDiameter:
    def test_zero_matrix(self):
        assert diameter(DissimilarityMatrix(np.zeros((3, 3)))) == 0.0

    def test_infinite_entry(self):
        d = DissimilarityMatrix([[0, INF], [INF, 0]])
        assert diameter(d) == INF

    def test_counterexample_diameter(self):
        d1, d2 = three_point_counterexample()
        merged = merge_pointwise(d1, d2, MinScheme())
        assert diameter(merged) == 3.0


class TestCsvRoundTrip:
    def test_exact_round_trip(self, tmp_path):
        rng = np.random.default_rng(12)
        m = rng.random((6, 6)) * 100
        m = (m + m.T) / 2
        np.fill_diagonal(m, 0)
        m[0, 3] = m[3, 0] = INF
        d = DissimilarityMatrix(m)
        path = tmp_path / "matrix.csv"
        save_csv(d, path)
        assert load_csv(path) == d

    def test_inf_literal(self, tmp_path):
        d = DissimilarityMatrix([[0, INF], [INF, 0]])
        path = tmp_path / "matrix.csv"
        save_csv(d, path)
        assert "inf" in path.read_text()
