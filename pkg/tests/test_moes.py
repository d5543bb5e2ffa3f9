"""Weight simplex, lattice sampling, affine remapping, planner structure."""

import logging

import numpy as np
import pytest

import moesearch as me
from moesearch.fourier import mixture_grid

from helpers import oracle_basis_tables

MIX_A = [
    {"mean": [0.30, 0.65], "sigma": 0.16, "weight": 0.55},
    {"mean": [0.60, 0.30], "sigma": 0.20, "weight": 0.45},
]
MIX_B = [
    {"mean": [0.70, 0.70], "sigma": 0.18, "weight": 0.5},
    {"mean": [0.40, 0.45], "sigma": 0.19, "weight": 0.5},
]
MIX_C = [
    {"mean": [0.50, 0.40], "sigma": 0.21, "weight": 0.6},
    {"mean": [0.25, 0.30], "sigma": 0.17, "weight": 0.4},
]


class _StubFamily:
    """Distance table plus a length; enough for lattice geometry."""

    def __init__(self, distances):
        self.distances = np.asarray(distances, dtype=float)

    def __len__(self):
        return self.distances.shape[0]


def _edges_to_distances(edge):
    # build_affine_space takes sqrt by default; hand it squared lengths
    return np.asarray(edge, dtype=float) ** 2


@pytest.fixture(scope="module")
def basis4():
    return me.build_basis(2, (1.0, 1.0), 4)


@pytest.fixture(scope="module")
def family2(basis4):
    return me.MapFamily((me.infomap_from_mixture(MIX_A, basis4, resolution=80),
                         me.infomap_from_mixture(MIX_B, basis4, resolution=80)))


@pytest.fixture(scope="module")
def family3(basis4):
    return me.MapFamily(tuple(me.infomap_from_mixture(mx, basis4, resolution=80)
                              for mx in (MIX_A, MIX_B, MIX_C)))


@pytest.fixture(scope="module")
def model30():
    return me.differential_drive(n_steps=30)


@pytest.fixture(scope="module")
def tiny_opt():
    return me.ErgOptConfig(max_iters=10, epsilon=1e-3, bootstrap=False)


def test_validate_weight():
    w = me.validate_weight((0.3, 0.7))
    assert w.tolist() == [0.3, 0.7]
    with pytest.raises(ValueError):
        me.validate_weight((0.5, 0.5), m=3)
    with pytest.raises(ValueError):
        me.validate_weight((1.2, -0.2))
    with pytest.raises(ValueError):
        me.validate_weight((0.4, 0.4))


def test_family_requires_shared_basis(basis4):
    other = me.build_basis(2, (1.0, 1.0), 5)
    a = me.infomap_from_mixture(MIX_A, basis4, resolution=80)
    b = me.infomap_from_mixture(MIX_B, other, resolution=80)
    with pytest.raises(ValueError):
        me.MapFamily((a, b))
    with pytest.raises(ValueError):
        me.MapFamily(())


def test_family_distance_table(family3, basis4):
    d = family3.distances
    assert d.shape == (3, 3)
    assert np.array_equal(d, d.T)
    assert np.all(np.diag(d) == 0.0)
    assert d[0, 1] == me.map_distance(family3.maps[0], family3.maps[1], basis4)
    assert (d[np.triu_indices(3, 1)] > 0).all()


def test_scalarize_is_the_per_index_dot_product(family2):
    w = np.array([0.3, 0.7])
    phi = me.scalarize(family2, w)
    manual = 0.3 * family2.maps[0].coeffs + 0.7 * family2.maps[1].coeffs
    np.testing.assert_allclose(phi, manual, rtol=0, atol=1e-15)
    with pytest.raises(ValueError):
        me.scalarize(family2, (0.2, 0.3, 0.5))


def test_scalarize_at_a_clipped_corner_selects_that_map(family2):
    w = np.maximum(np.eye(2)[0], 1e-6)
    w /= w.sum()
    phi = me.scalarize(family2, w)
    np.testing.assert_allclose(phi, family2.maps[0].coeffs, atol=1e-5)


def test_scalarize_commutes_with_rasterization(basis4):
    res = 80
    ga = mixture_grid(MIX_A, basis4, res)
    gb = mixture_grid(MIX_B, basis4, res)
    cell = 1.0 / res ** 2
    ga /= ga.sum() * cell
    gb /= gb.sum() * cell
    family = me.MapFamily((me.infomap_from_mixture(MIX_A, basis4, resolution=res),
                           me.infomap_from_mixture(MIX_B, basis4, resolution=res)))
    blended = me.map_coefficients(0.4 * ga + 0.6 * gb, basis4)
    np.testing.assert_allclose(me.scalarize(family, (0.4, 0.6)), blended, atol=1e-8)


def test_ergodic_vector_componentwise(family2, family3, basis4, model30):
    u = np.tile([0.4, 1.0], (model30.n_steps, 1))
    traj = me.rollout(model30, u)
    vec = me.ergodic_vector(traj, family3)
    assert vec.shape == (3,)
    assert (vec >= 0).all()
    c = me.trajectory_coefficients(traj.positions, basis4)
    for i in range(3):
        direct = me.ergodic_metric(c, family3.maps[i], basis4)
        assert vec[i] == pytest.approx(direct, abs=1e-12)


def test_ergodic_vector_on_identical_maps_has_equal_components(basis4, model30):
    a = me.infomap_from_mixture(MIX_A, basis4, resolution=80)
    fam = me.MapFamily((a, a))
    u = np.tile([0.3, -1.0], (model30.n_steps, 1))
    vec = me.ergodic_vector(me.rollout(model30, u), fam)
    assert vec[0] == vec[1]


def test_ergodic_vector_single_map_reduces_to_the_metric(basis4, model30):
    a = me.infomap_from_mixture(MIX_A, basis4, resolution=80)
    fam = me.MapFamily((a,))
    u = np.tile([0.3, -1.0], (model30.n_steps, 1))
    traj = me.rollout(model30, u)
    vec = me.ergodic_vector(traj, fam)
    c = me.trajectory_coefficients(traj.positions, basis4)
    assert vec.shape == (1,)
    assert vec[0] == pytest.approx(me.ergodic_metric(c, a, basis4), abs=1e-14)


def test_basic_neighbors_two_maps_interior():
    out = me.basic_neighbors((0.5, 0.5), 0.2)
    assert len(out) == 2
    np.testing.assert_allclose(out[0], [0.7, 0.3], atol=1e-15)
    np.testing.assert_allclose(out[1], [0.3, 0.7], atol=1e-15)


def test_basic_neighbors_drops_candidates_leaving_the_simplex():
    out = me.basic_neighbors((0.9, 0.1), 0.2)
    assert len(out) == 1
    np.testing.assert_allclose(out[0], [0.7, 0.3], atol=1e-15)


def test_basic_neighbors_three_maps_barycenter():
    t = 1.0 / 3.0
    out = me.basic_neighbors((t, t, t), 0.1)
    assert len(out) == 4
    expected = [
        [t, t + 0.1, t - 0.1],
        [t, t - 0.1, t + 0.1],
        [t + 0.1, t, t - 0.1],
        [t - 0.1, t, t + 0.1],
    ]
    for got, want in zip(out, expected):
        np.testing.assert_allclose(got, want, atol=1e-15)
        assert got.sum() == pytest.approx(1.0, abs=1e-15)


def test_basic_neighbors_validates_arguments():
    with pytest.raises(ValueError):
        me.basic_neighbors((0.5, 0.5), 1.5)
    with pytest.raises(ValueError):
        me.basic_neighbors((0.25, 0.25, 0.25, 0.25), 0.1)


def test_space_from_equilateral_edges():
    edge = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    space = me.space_from_edges(edge)
    assert not space.degenerate
    np.testing.assert_allclose(space.corners[0], [0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(space.corners[1], [1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(space.corners[2], [0.5, np.sqrt(3.0) / 2.0], atol=1e-15)


def test_space_degenerate_when_two_maps_coincide(basis4):
    a = me.infomap_from_mixture(MIX_A, basis4, resolution=80)
    fam = me.MapFamily((a, a))
    space = me.build_affine_space(fam)
    assert space.degenerate
    with pytest.raises(ValueError):
        space.from_weight((0.5, 0.5))
    with pytest.raises(ValueError):
        me.adaptive_neighbors((0.5, 0.5), space, 0.1)


def test_space_rejects_impossible_edge_lengths():
    edge = np.zeros((3, 3))
    edge[0, 1] = edge[1, 0] = 1.0
    edge[0, 2] = edge[2, 0] = 0.2
    edge[1, 2] = edge[2, 1] = 3.0
    with pytest.raises(ValueError):
        me.space_from_edges(edge)


def test_affine_round_trip_on_interior_points(family3):
    space = me.build_affine_space(family3)
    assert not space.degenerate
    rng = np.random.default_rng(8)
    count = 0
    while count < 100:
        w = rng.dirichlet(np.ones(3))
        if w.min() < 1e-3:
            continue
        count += 1
        p = space.from_weight(w)
        assert space.contains(p)
        np.testing.assert_allclose(space.to_weight(p), w, atol=1e-9)
        np.testing.assert_allclose(space.from_weight(space.to_weight(p)), p, atol=1e-9)


def test_adaptive_neighbors_midpoint_reaches_both_endpoints():
    space = me.space_from_edges(np.array([[0.0, 0.8], [0.8, 0.0]]))
    out = me.adaptive_neighbors((0.5, 0.5), space, 0.4)
    assert len(out) == 2
    np.testing.assert_allclose(out[0], space.corner_weights[1], atol=1e-12)
    np.testing.assert_allclose(out[1], space.corner_weights[0], atol=1e-12)


def test_adaptive_neighbors_thin_out_near_the_boundary(family3):
    space = me.build_affine_space(family3)
    interior = space.to_weight(space.corners.mean(axis=0))
    d_prime = 0.05 * np.linalg.norm(space.corners[1] - space.corners[0])
    assert len(me.adaptive_neighbors(interior, space, d_prime)) == 4
    near_corner = space.to_weight(0.98 * space.corners[1])
    assert len(me.adaptive_neighbors(near_corner, space, d_prime)) < 4


def test_adaptive_neighbors_rejects_nonpositive_step(family3):
    space = me.build_affine_space(family3)
    with pytest.raises(ValueError):
        me.adaptive_neighbors((1 / 3, 1 / 3, 1 / 3), space, 0.0)


def test_lattice_size_tracks_the_map_distance():
    long_axis = _StubFamily(_edges_to_distances([[0.0, 0.8], [0.8, 0.0]]))
    short_axis = _StubFamily(_edges_to_distances([[0.0, 0.08], [0.08, 0.0]]))
    cfg = me.PlannerConfig(mode="adaptive", d_prime=0.01)
    n_long = len(me.lattice_weights(long_axis, cfg))
    n_short = len(me.lattice_weights(short_axis, cfg))
    assert n_long / n_short == pytest.approx(10.0, rel=0.3)


def test_lattice_size_monotone_in_each_pairwise_distance():
    sizes = []
    for d01 in (0.2, 0.4, 0.6, 0.8):
        edge = np.array([[0.0, d01, 0.5], [d01, 0.0, 0.5], [0.5, 0.5, 0.0]])
        fam = _StubFamily(_edges_to_distances(edge))
        cfg = me.PlannerConfig(mode="adaptive", d_prime=0.1)
        sizes.append(len(me.lattice_weights(fam, cfg)))
    assert sizes == sorted(sizes)
    assert sizes[0] < sizes[-1]


def test_lattice_keys_are_unique_and_weights_valid(family3):
    cfg = me.PlannerConfig(mode="basic", d=0.15)
    pairs = me.lattice_weights(family3, cfg)
    keys = [k for k, _ in pairs]
    assert len(keys) == len(set(keys))
    for _, w in pairs:
        me.validate_weight(w, 3)


def test_planner_config_validation():
    with pytest.raises(ValueError):
        me.PlannerConfig(mode="dfs")
    with pytest.raises(ValueError):
        me.PlannerConfig(d=0.0)
    with pytest.raises(ValueError):
        me.PlannerConfig(d_prime=-0.1)
    with pytest.raises(ValueError):
        me.PlannerConfig(rho=-1)


def test_planner_rejects_model_box_mismatch(family2, tiny_opt):
    wide = me.differential_drive(n_steps=20, lengths=(2.0, 1.0))
    cfg = me.PlannerConfig(mode="basic", d=0.25, opt=tiny_opt)
    with pytest.raises(ValueError):
        me.sles(family2, wide, cfg)


def test_coarse_two_map_run_expands_the_expected_chart(family2, model30, tiny_opt):
    cfg = me.PlannerConfig(mode="basic", d=0.25, opt=tiny_opt)
    records = me.sles(family2, model30, cfg)
    assert [r.key for r in records] == [(0,), (1,), (-1,)]
    chart = [r.weight[0] for r in records]
    np.testing.assert_allclose(chart, [0.5, 0.75, 0.25], atol=1e-15)
    assert len({r.key for r in records}) == len(records)


def test_corner_expansion_requests_pure_single_map_weights(family2, model30, tiny_opt):
    cfg = me.PlannerConfig(mode="basic", d=0.25, include_corners=True, opt=tiny_opt)
    records = me.sles(family2, model30, cfg)
    assert [r.key for r in records] == [(0,), (1,), (-1,), (2,), (-2,)]
    clipped = np.maximum(np.eye(2)[0], 1e-6)
    clipped /= clipped.sum()
    np.testing.assert_allclose(records[3].weight, clipped, atol=1e-15)
    np.testing.assert_allclose(records[4].weight, clipped[::-1], atol=1e-15)
    for r in records:
        me.validate_weight(r.weight, 2)


def test_coarse_three_map_run_and_radius_cutoff(family3, model30, tiny_opt):
    cfg = me.PlannerConfig(mode="basic", d=0.3, opt=tiny_opt)
    records = me.sles(family3, model30, cfg)
    # chart points (1/3 + 0.3a, 1/3 + 0.3b) with all three components
    # positive: a, b range over {-1, 0, 1, 2} subject to a + b <= 1
    assert len(records) == 10
    cfg_rho = me.PlannerConfig(mode="basic", d=0.3, rho=1, opt=tiny_opt)
    records_rho = me.sles(family3, model30, cfg_rho)
    assert len(records_rho) == 5
    assert {r.key for r in records_rho} <= {r.key for r in records}


def test_episodes_never_finish_above_their_start(family2, model30, tiny_opt):
    cfg = me.PlannerConfig(mode="basic", d=0.25, opt=tiny_opt)
    for r in me.sles(family2, model30, cfg):
        assert r.trace.values[-1] <= r.trace.values[0]
        assert np.all(np.diff(r.trace.values) <= 0.0)
        assert r.iterations >= len(r.trace.values) - 1
        assert r.reason in ("converged", "iter_cap", "stalled")


def test_identical_maps_fall_back_to_basic_and_collapse_the_front(
        basis4, model30, caplog):
    a = me.infomap_from_mixture(MIX_A, basis4, resolution=80)
    fam = me.MapFamily((a, a))
    cfg = me.PlannerConfig(mode="adaptive", d=0.25, d_prime=0.1,
                           opt=me.ErgOptConfig(max_iters=10, epsilon=1e-3,
                                               bootstrap=False))
    with caplog.at_level(logging.WARNING, logger="moesearch.moes"):
        records = me.sles(fam, model30, cfg)
    assert any("degenerate" in r.message for r in caplog.records)
    assert [r.key for r in records] == [(0,), (1,), (-1,)]
    for r in records:
        assert r.ergodic_vector[0] == r.ergodic_vector[1]
    archive = me.ParetoArchive(records)
    front = archive.front()
    np.testing.assert_allclose(front, np.broadcast_to(front[0], front.shape),
                               atol=1e-12)


def test_baseline_reduces_to_single_searches(family2, model30, tiny_opt):
    assert me.naive_scalarization(family2, model30, []) == []
    w = np.array([0.5, 0.5])
    records = me.naive_scalarization(family2, model30, [w], opt=tiny_opt)
    assert len(records) == 1
    phi = me.scalarize(family2, w)
    u0 = np.zeros((model30.n_steps, 2))
    u_direct, trace = me.ergodic_search(phi, u0, model30, family2.basis, tiny_opt)
    assert np.array_equal(records[0].controls, u_direct)
    assert records[0].iterations == trace.iterations
    assert records[0].key is None


def test_baseline_and_planner_share_one_lattice(family2, model30, tiny_opt):
    cfg = me.PlannerConfig(mode="basic", d=0.25, opt=tiny_opt)
    planned = me.sles(family2, model30, cfg)
    weights = [w for _, w in me.lattice_weights(family2, cfg)]
    base = me.naive_scalarization(family2, model30, weights, opt=tiny_opt)
    assert len(base) == len(planned)
    for r_b, r_p in zip(base, planned):
        assert np.array_equal(r_b.weight, r_p.weight)


def test_scalarized_metric_expands_over_raw_coefficients(family2, basis4, model30):
    u = np.tile([0.35, 0.8], (model30.n_steps, 1))
    traj = me.rollout(model30, u)
    c = me.trajectory_coefficients(traj.positions, basis4).c
    w = np.array([0.45, 0.55])
    via_scalarize = me.ergodic_metric(c, me.scalarize(family2, w), basis4)
    _, lam = oracle_basis_tables((1.0, 1.0), 4)
    stack = family2.coeff_stack
    total = 0.0
    for k1 in range(5):
        for k2 in range(5):
            blended = w[0] * stack[0, k1, k2] + w[1] * stack[1, k1, k2]
            gap = c[k1, k2] - blended
            total += lam[k1, k2] * gap * gap
    assert via_scalarize == pytest.approx(total, abs=1e-12)
