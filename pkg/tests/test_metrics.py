"""Dominance, Pareto filtering, hypervolume, inter-map distances."""

import logging
from types import SimpleNamespace

import numpy as np
import pytest

import moesearch as me
from moesearch.metrics import dominates, hypervolume, map_distance, pareto_filter

from helpers import brute_force_pareto, mc_hypervolume, oracle_basis_tables


def test_dominates_componentwise_with_strictness():
    assert dominates((0.1, 0.2), (0.1, 0.3))
    assert not dominates((0.1, 0.2), (0.1, 0.2))
    assert not dominates((0.1, 0.4), (0.2, 0.3))
    assert not dominates((0.2, 0.3), (0.1, 0.4))


def test_dominates_rejects_length_mismatch():
    with pytest.raises(ValueError):
        dominates((0.1, 0.2), (0.1, 0.2, 0.3))


def test_dominance_is_a_strict_partial_order():
    rng = np.random.default_rng(0)
    vs = rng.uniform(0, 1, (40, 3))
    for a in vs:
        assert not dominates(a, a)
    for a in vs[:20]:
        for b in vs[:20]:
            assert not (dominates(a, b) and dominates(b, a))
    # transitivity over discretized vectors, where chains actually occur
    grid = rng.integers(0, 3, (30, 3)).astype(float)
    hits = 0
    for a in grid:
        for b in grid:
            if not dominates(a, b):
                continue
            for c in grid:
                if dominates(b, c):
                    hits += 1
                    assert dominates(a, c)
    assert hits > 0


def test_pareto_filter_collapses_a_chain():
    pts = [(0.1, 0.1), (0.2, 0.2), (0.3, 0.3)]
    assert pareto_filter(pts).tolist() == [0]


def test_pareto_filter_keeps_duplicates():
    pts = [(0.4, 0.4)] * 5
    assert pareto_filter(pts).tolist() == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("m", [2, 3])
def test_pareto_filter_matches_all_pairs_scan(m):
    rng = np.random.default_rng(m)
    pts = rng.uniform(0, 1, (200, m))
    assert pareto_filter(pts).tolist() == brute_force_pareto(pts)


def test_pareto_filter_rejects_flat_input():
    with pytest.raises(ValueError):
        pareto_filter(np.ones(4))


def test_hypervolume_single_rectangle():
    assert hypervolume([(0.5, 0.5)], (1.0, 1.0)) == 0.25


def test_hypervolume_three_point_staircase():
    front = [(0.2, 0.8), (0.5, 0.5), (0.8, 0.2)]
    assert hypervolume(front, (1.0, 1.0)) == pytest.approx(0.37, abs=1e-15)


def test_hypervolume_ignores_dominated_points():
    front = [(0.2, 0.8), (0.5, 0.5), (0.8, 0.2)]
    base = hypervolume(front, (1.0, 1.0))
    assert hypervolume(front + [(0.6, 0.6)], (1.0, 1.0)) == base


@pytest.mark.parametrize("m", [2, 3])
def test_hypervolume_grows_with_a_nondominated_point(m):
    rng = np.random.default_rng(10 + m)
    front = rng.uniform(0.3, 0.9, (6, m))
    base = hypervolume(front, np.ones(m))
    better = front.min(axis=0) - 0.05
    grown = hypervolume(np.vstack([front, better]), np.ones(m))
    assert grown > base


@pytest.mark.parametrize("m", [2, 3])
def test_hypervolume_matches_monte_carlo(m):
    rng = np.random.default_rng(77 + m)
    for trial in range(5):
        pts = rng.uniform(0.1, 0.9, (8, m))
        front = pts[pareto_filter(pts)]
        hv = hypervolume(front, np.ones(m))
        est, sigma = mc_hypervolume(front, np.ones(m), 200_000, rng)
        assert abs(hv - est) <= 3.0 * sigma


def test_hypervolume_clips_points_beyond_reference(caplog):
    front = [(0.5, 0.5), (1.5, 0.1)]
    with caplog.at_level(logging.WARNING, logger="moesearch.metrics"):
        hv = hypervolume(front, (1.0, 1.0))
    assert hv == 0.25
    assert any("clipped" in r.message for r in caplog.records)


def test_hypervolume_empty_front_is_zero(caplog):
    with caplog.at_level(logging.WARNING, logger="moesearch.metrics"):
        assert hypervolume(np.empty((0, 2)), (1.0, 1.0)) == 0.0
    assert len(caplog.records) == 1


def test_hypervolume_rejects_many_objectives():
    with pytest.raises(ValueError):
        hypervolume([(0.5, 0.5, 0.5, 0.5)], (1.0, 1.0, 1.0, 1.0))


@pytest.fixture(scope="module")
def gauss_pair(basis10):
    a = me.infomap_from_mixture([{"mean": [0.3, 0.3], "sigma": 0.1, "weight": 1.0}],
                                basis10, resolution=200)
    b = me.infomap_from_mixture([{"mean": [0.7, 0.7], "sigma": 0.1, "weight": 1.0}],
                                basis10, resolution=200)
    return a, b


def test_map_distance_zero_on_identical_and_symmetric(basis10, gauss_pair):
    a, b = gauss_pair
    assert map_distance(a, a, basis10) == 0.0
    assert map_distance(a, b, basis10) == map_distance(b, a, basis10)
    assert map_distance(a, b, basis10) > 0.0


def test_map_distance_matches_explicit_summation(basis10, gauss_pair):
    a, b = gauss_pair
    _, lam = oracle_basis_tables((1.0, 1.0), 10)
    total = 0.0
    for k1 in range(11):
        for k2 in range(11):
            gap = a.coeffs[k1, k2] - b.coeffs[k1, k2]
            total += lam[k1, k2] * gap * gap
    assert map_distance(a, b, basis10) == pytest.approx(total, abs=1e-12)


def test_sqrt_map_distance_satisfies_triangle_inequality(basis10):
    rng = np.random.default_rng(4)
    maps = []
    for _ in range(6):
        spec = [{"mean": rng.uniform(0.2, 0.8, 2).tolist(),
                 "sigma": float(rng.uniform(0.08, 0.25)),
                 "weight": 1.0}]
        maps.append(me.infomap_from_mixture(spec, basis10, resolution=120))
    for a in maps:
        for b in maps:
            for c in maps:
                dab = np.sqrt(map_distance(a, b, basis10))
                dbc = np.sqrt(map_distance(b, c, basis10))
                dac = np.sqrt(map_distance(a, c, basis10))
                assert dac <= dab + dbc + 1e-12


def test_archive_front_and_hypervolume():
    vecs = [(0.3, 0.7), (0.7, 0.3), (0.5, 0.5), (0.6, 0.6), (0.3, 0.7)]
    archive = me.ParetoArchive([SimpleNamespace(ergodic_vector=v) for v in vecs])
    assert archive.nondominated.tolist() == pareto_filter(vecs).tolist()
    front = archive.front()
    for i, a in enumerate(front):
        for j, b in enumerate(front):
            assert not dominates(a, b) or i == j
    dominated = set(range(len(vecs))) - set(archive.nondominated.tolist())
    for i in dominated:
        assert any(dominates(front[j], vecs[i]) for j in range(len(front)))
    assert archive.hypervolume() == hypervolume(front, (1.0, 1.0))


def test_archive_empty_is_zero(caplog):
    archive = me.ParetoArchive([])
    with caplog.at_level(logging.WARNING, logger="moesearch.metrics"):
        assert archive.hypervolume() == 0.0
    assert caplog.records
