import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefpcp import Dataset, EvaluationRecord, dominates, metric_extrema, pareto_front
from prefpcp.errors import EmptySet, LengthMismatch

finite_floats = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


def brute_force_front(points):
    """Direct transcription of the dominance definition, O(N^2) in pure Python."""
    kept = []
    for i, fi in enumerate(points):
        dominated = False
        for j, fj in enumerate(points):
            if i == j:
                continue
            if all(x <= y for x, y in zip(fj, fi)) and any(x < y for x, y in zip(fj, fi)):
                dominated = True
                break
        if not dominated:
            kept.append(i)
    return kept


def dataset_from_metrics(points):
    records = tuple(EvaluationRecord((0.0,), tuple(p)) for p in points)
    return Dataset(("x",), tuple(f"f{j}" for j in range(len(points[0]))), records, ((0.0, 0.0),))


class TestDominates:
    def test_strict_on_all_coordinates(self):
        assert dominates((1, 1), (2, 2)) is True

    def test_equal_vectors_do_not_dominate(self):
        assert dominates((1, 1), (1, 1)) is False

    def test_incomparable_pair(self):
        assert dominates((1, 2), (2, 1)) is False
        assert dominates((2, 1), (1, 2)) is False

    def test_weak_improvement_suffices(self):
        assert dominates((1, 1), (1, 2)) is True

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            dominates((1, 2), (1, 2, 3))

    @given(st.lists(finite_floats, min_size=2, max_size=5), st.data())
    def test_antisymmetry(self, a, data):
        b = data.draw(st.lists(finite_floats, min_size=len(a), max_size=len(a)))
        if dominates(a, b):
            assert not dominates(b, a)

    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=10_000))
    def test_transitivity_on_random_triples(self, m, seed):
        rng = np.random.default_rng(seed)
        # quantized coordinates make dominance relations common enough to exercise
        a, b, c = rng.integers(0, 3, size=(3, m)).astype(float)
        if dominates(a, b) and dominates(b, c):
            assert dominates(a, c)


class TestParetoFront:
    def test_dominated_point_removed(self):
        ps = pareto_front(dataset_from_metrics([(1, 2), (2, 1), (2, 2)]))
        assert ps.indices == (0, 1)

    def test_interior_tradeoff_kept(self):
        points = [(1, 2), (2, 1), (1.5, 1.5)]
        ps = pareto_front(dataset_from_metrics(points))
        assert list(ps.indices) == brute_force_front(points)
        assert ps.indices == (0, 1, 2)

    def test_single_record(self):
        ps = pareto_front(dataset_from_metrics([(3, 4)]))
        assert ps.indices == (0,)
        assert ps.points == ((3.0, 4.0),)

    def test_duplicates_all_retained(self):
        ps = pareto_front(dataset_from_metrics([(1, 1), (1, 1), (2, 2)]))
        assert ps.indices == (0, 1)

    @given(
        st.integers(min_value=1, max_value=60),
        st.integers(min_value=2, max_value=5),
        st.integers(min_value=0, max_value=10_000),
    )
    def test_matches_brute_force(self, n, m, seed):
        rng = np.random.default_rng(seed)
        points = rng.uniform(0, 1, size=(n, m)).round(2).tolist()
        ps = pareto_front(dataset_from_metrics(points))
        assert list(ps.indices) == brute_force_front(points)

    def test_idempotence(self):
        rng = np.random.default_rng(5)
        points = rng.uniform(0, 1, size=(120, 3)).tolist()
        first = pareto_front(dataset_from_metrics(points))
        again = pareto_front(dataset_from_metrics(list(first.points)))
        assert again.points == first.points


class TestMetricExtrema:
    def test_coordinate_wise(self):
        ex = metric_extrema([(1, 2), (2, 1)])
        assert ex.f_min == (1.0, 1.0)
        assert ex.f_max == (2.0, 2.0)

    def test_single_point(self):
        ex = metric_extrema([(3.5, -1.0)])
        assert ex.f_min == ex.f_max == (3.5, -1.0)

    def test_mixed(self):
        ex = metric_extrema([(0, 5), (3, 0), (1, 1)])
        assert ex.f_min == (0.0, 0.0)
        assert ex.f_max == (3.0, 5.0)

    def test_empty_set(self):
        with pytest.raises(EmptySet):
            metric_extrema([])
