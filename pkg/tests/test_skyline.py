import itertools

import numpy as np
import pytest

import rankregret as rr

from conftest import random_dataset


def pairwise_dominance_skyline(values: np.ndarray) -> set[int]:
    """All-pairs dominance filter, the O(n^2) reference."""
    n = len(values)
    out = set()
    for i in range(n):
        dominated = False
        for j in range(n):
            if j == i:
                continue
            ge = (values[j] >= values[i]).all()
            gt = (values[j] > values[i]).any()
            dup = (values[j] == values[i]).all() and j < i
            if ge and (gt or dup):
                dominated = True
                break
        if not dominated:
            out.add(i + 1)
    return out


def sampled_dominance_skyline(D, space, extra_rays, samples=10_000, seed=0) -> set[int]:
    """Brute-force restricted-dominance filter on sampled cone vectors."""
    rng = np.random.default_rng(seed)
    raw = rng.random((samples, D.d))
    inside = raw[space.membership_mask(raw)]
    V = np.vstack([inside, np.asarray(extra_rays, dtype=float)])
    S = D.values @ V.T  # (n, vectors)
    out = set()
    for i in range(D.n):
        dominated = False
        for j in range(D.n):
            if j == i:
                continue
            ge = (S[j] >= S[i]).all()
            gt = (S[j] > S[i]).any()
            dup = (S[j] == S[i]).all() and j < i
            if ge and (gt or dup):
                dominated = True
                break
        if not dominated:
            out.add(i + 1)
    return out


class TestSkyline:
    def test_demo_skyline(self, demo7):
        assert rr.skyline(demo7).indices == (1, 2, 3, 4, 7)

    def test_singleton(self):
        D = rr.Dataset([[1.0, 1.0]])
        assert rr.skyline(D).indices == (1,)

    def test_matches_pairwise_oracle_2d(self):
        D = random_dataset(30, 2, seed=3)
        assert set(rr.skyline(D).indices) == pairwise_dominance_skyline(D.values)

    @pytest.mark.parametrize("d", [3, 4])
    def test_matches_pairwise_oracle_hd(self, d):
        D = random_dataset(25, d, seed=d)
        assert set(rr.skyline(D).indices) == pairwise_dominance_skyline(D.values)

    def test_duplicates_keep_lowest_index(self):
        D = rr.Dataset([[0.5, 0.5], [0.5, 0.5], [0.2, 0.1]], normalized=False)
        assert rr.skyline(D).indices == (1,)

    def test_idempotent(self):
        D = random_dataset(40, 2, seed=9)
        first = rr.skyline(D)
        restricted = rr.Dataset(D.values[np.asarray(first.indices) - 1],
                                normalized=False)
        again = rr.skyline(restricted)
        assert len(again) == len(first)
        assert np.array_equal(
            restricted.values[np.asarray(again.indices) - 1],
            D.values[np.asarray(first.indices) - 1],
        )


class TestRestrictedSkyline:
    def test_full_space_equals_skyline(self, demo7):
        full = rr.restricted_skyline(demo7, rr.RestrictedSpace.full())
        assert full.indices == rr.skyline(demo7).indices
        assert full.kind == "restricted-skyline"
        none = rr.restricted_skyline(demo7, None)
        assert none.indices == full.indices

    def test_demo_halfplane_matches_sampled_oracle(self, demo7):
        space = rr.RestrictedSpace(((1.0, -1.0),))
        got = set(rr.restricted_skyline(demo7, space).indices)
        want = sampled_dominance_skyline(demo7, space, [(1.0, 0.0), (1.0, 1.0)])
        assert got == want

    def test_weak_ranking_3d_matches_sampled_oracle(self):
        D = random_dataset(20, 3, seed=17)
        space = rr.RestrictedSpace.weak_ranking(3)
        got = set(rr.restricted_skyline(D, space).indices)
        want = sampled_dominance_skyline(D, space, space.extreme_rays())
        assert got == want

    def test_subset_of_skyline(self):
        space = rr.RestrictedSpace(((1.0, -2.0),))
        for seed in range(5):
            D = random_dataset(25, 2, seed=seed)
            assert set(rr.restricted_skyline(D, space).indices) <= set(
                rr.skyline(D).indices)


class TestBasis:
    def test_demo_basis(self, demo7):
        assert rr.basis(demo7).indices == (1, 7)
        assert rr.basis(demo7).kind == "basis"

    def test_all_ones_tuple_listed_once(self):
        D = rr.Dataset([[1.0, 1.0, 1.0]])
        assert rr.basis(D).indices == (1,)

    def test_every_attribute_attains_one(self):
        vals = np.random.default_rng(5).random((40, 3))
        from rankregret.datagen import normalize_columns
        D = rr.Dataset(normalize_columns(vals))
        b = rr.basis(D)
        col_max_rows = {int(np.argmax(D.values[:, j])) + 1 for j in range(3)}
        assert set(b.indices) == col_max_rows
        for j in range(3):
            assert any(D.values[i - 1, j] >= 1 - 1e-9 for i in b.indices)

    def test_unnormalized_rejected(self):
        D = rr.Dataset([[2.0, 3.0], [4.0, 5.0]], normalized=False)
        with pytest.raises(ValueError):
            rr.basis(D)


class TestCandidateReduction:
    """Replacing any subset by skyline members never hurts the optimum."""

    @pytest.mark.parametrize("seed", range(4))
    def test_skyline_restriction_preserves_optimum(self, seed):
        D = random_dataset(16, 2, seed=100 + seed)
        for r in (1, 2):
            sky = rr.exhaustive_rrm(D, r, mode="skyline")
            all_ = rr.exhaustive_rrm(D, r, mode="all")
            assert sky.optimal_value == all_.optimal_value

    def test_restricted_candidates_preserve_optimum(self):
        space = rr.RestrictedSpace(((1.0, -1.0),))
        for seed in range(3):
            D = random_dataset(14, 2, seed=200 + seed)
            sky = rr.exhaustive_rrm(D, 2, space, mode="skyline")
            all_ = rr.exhaustive_rrm(D, 2, space, mode="all")
            assert sky.optimal_value == all_.optimal_value

    def test_sky_subset_replacement_exists(self):
        # for every small set there is a no-worse skyline subset
        D = random_dataset(12, 2, seed=300)
        sky = set(rr.skyline(D).indices)
        best_by_size = {}
        for r in (1, 2):
            rep = rr.exhaustive_rrm(D, r, mode="skyline")
            best_by_size[r] = rep.optimal_value
        for S in itertools.combinations(range(1, 13), 2):
            v = rr.exact_chain_rank(S, D)
            assert best_by_size[2] <= v
