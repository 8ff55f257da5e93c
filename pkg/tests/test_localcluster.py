import numpy as np
import pytest

from ddcluster import (
    PointSet,
    assign_points,
    compute_profile,
    cutoff_from_ratio,
    select_local_centers,
)

from randsets import make_random_dataset
from reference import ref_assign, ref_select_centers


def profile_for(points, d_c):
    ps = PointSet(np.asarray(points, dtype=np.float64))
    return ps, compute_profile(ps, d_c)


class TestCenterSelection:
    def test_collinear_picks_middle(self):
        # only the middle point clears both bars: delta 3 > 1 and its rho
        # tops the mean; the left point fails strict delta > d_c at 1.0
        _, prof = profile_for([(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)], 1.0)
        assert select_local_centers(prof, 1.0).tolist() == [1]

    def test_plus_fixture_two_centers(self, plus_blobs):
        d_c = cutoff_from_ratio(plus_blobs, 0.1).d_c
        prof = compute_profile(plus_blobs, d_c)
        assert select_local_centers(prof, d_c).tolist() == [0, 5]

    def test_fallback_warns_and_returns_densest(self):
        # with d_c at the full span no delta can strictly exceed it
        ps, prof = profile_for([(0.0, 0.0), (5.0, 0.0)], 5.0)
        with pytest.warns(RuntimeWarning):
            centers = select_local_centers(prof, 5.0)
        assert centers.tolist() == [prof.order[0]]

    def test_ascending_order(self):
        rng = np.random.default_rng(0)
        ps = make_random_dataset(rng, n=120, kind="blobs")
        d_c = cutoff_from_ratio(ps, 0.1).d_c
        centers = select_local_centers(compute_profile(ps, d_c), d_c)
        assert np.all(np.diff(centers) > 0)

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_oracle(self, seed):
        rng = np.random.default_rng(300 + seed)
        ps = make_random_dataset(rng, n=int(rng.integers(10, 90)))
        d_c = cutoff_from_ratio(ps, 0.1).d_c
        prof = compute_profile(ps, d_c)
        want = ref_select_centers(prof.rho.tolist(), prof.delta.tolist(), d_c)
        if not want:
            with pytest.warns(RuntimeWarning):
                got = select_local_centers(prof, d_c)
            assert got.tolist() == [prof.order[0]]
        else:
            assert select_local_centers(prof, d_c).tolist() == want


class TestAssignment:
    def test_plus_fixture_labels(self, plus_blobs):
        d_c = cutoff_from_ratio(plus_blobs, 0.1).d_c
        prof = compute_profile(plus_blobs, d_c)
        local = assign_points(plus_blobs, prof, select_local_centers(prof, d_c))
        assert local.labels.tolist() == [0, 0, 0, 0, 0, 1, 1, 1, 1, 1]
        assert local.n_clusters == 2
        assert local.rho_bar == pytest.approx(2.412197137158485, rel=1e-12)

    def test_center_label_is_position(self):
        ps, prof = profile_for([(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)], 1.0)
        local = assign_points(ps, prof, np.array([1, 2]))
        assert local.labels[1] == 0 and local.labels[2] == 1

    def test_densest_non_center_joins_nearest(self):
        ps, prof = profile_for([(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)], 1.0)
        # densest point (index 1) is not a center; nearest center is 0
        local = assign_points(ps, prof, np.array([0, 2]))
        assert local.labels[1] == 0

    def test_densest_non_center_tie_prefers_first(self):
        ps, prof = profile_for([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], 1.0)
        assert prof.order[0] == 1
        local = assign_points(ps, prof, np.array([0, 2]))
        # equidistant to both centers: the earlier center wins
        assert local.labels[1] == 0

    def test_descent_follows_neighbor_chain(self):
        # a density staircase: each point inherits from its denser neighbor,
        # so one center at the dense end labels the whole chain
        pts = [(0.0, 0.0), (0.4, 0.0), (0.9, 0.0), (1.5, 0.0), (2.2, 0.0)]
        ps, prof = profile_for(pts, 0.8)
        centers = select_local_centers(prof, 0.8)
        local = assign_points(ps, prof, centers)
        assert local.n_clusters == centers.size
        assert np.all(local.labels >= 0)
        for i in range(ps.n):
            j = prof.nhd[i]
            if j >= 0 and i not in centers:
                assert local.labels[i] == local.labels[j]

    def test_rejects_empty_centers(self):
        ps, prof = profile_for([(0.0, 0.0), (1.0, 0.0)], 0.5)
        with pytest.raises(ValueError):
            assign_points(ps, prof, np.array([], dtype=np.int64))

    def test_rejects_duplicate_centers(self):
        ps, prof = profile_for([(0.0, 0.0), (1.0, 0.0)], 0.5)
        with pytest.raises(ValueError):
            assign_points(ps, prof, np.array([0, 0]))

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_oracle(self, seed):
        rng = np.random.default_rng(400 + seed)
        ps = make_random_dataset(rng, n=int(rng.integers(8, 100)))
        d_c = cutoff_from_ratio(ps, 0.12).d_c
        prof = compute_profile(ps, d_c)
        centers = ref_select_centers(prof.rho.tolist(), prof.delta.tolist(), d_c)
        if not centers:
            centers = [int(prof.order[0])]
        local = assign_points(ps, prof, np.asarray(centers))
        want = ref_assign(
            [tuple(p) for p in ps.points],
            prof.rho.tolist(),
            prof.nhd.tolist(),
            prof.order.tolist(),
            centers,
        )
        assert local.labels.tolist() == want

    def test_every_point_labeled(self):
        rng = np.random.default_rng(77)
        ps = make_random_dataset(rng, n=150, kind="mixed")
        d_c = cutoff_from_ratio(ps, 0.1).d_c
        prof = compute_profile(ps, d_c)
        local = assign_points(ps, prof, select_local_centers(prof, d_c))
        assert np.all(local.labels >= 0)
        assert np.all(local.labels < local.n_clusters)
        # every cluster id is used at least once (its center carries it)
        assert set(np.unique(local.labels)) == set(range(local.n_clusters))
