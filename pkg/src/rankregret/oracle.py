"""Independent brute-force references for the solvers.

Everything here trades time for simplicity: subsets are enumerated
outright and evaluated either exactly (d = 2, critical-point ranks) or
by a high-density vector sample (d > 2, a lower bound on the true
worst case).  A combinatorial guard keeps runs at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .core import Dataset, RestrictedSpace, min_ranks_for_vectors
from .skyline import restricted_skyline
from .solver2d import critical_xs, ranks_at, render_scene
from .solverhd import sample_sphere

ENUMERATION_GUARD = 10_000_000


class GuardExceededError(RuntimeError):
    """Requested enumeration is larger than the safety guard."""


@dataclass(frozen=True, eq=False)
class OracleReport:
    optimal_value: int
    optimal_sets: tuple[tuple[int, ...], ...]
    method: str  # "exhaustive-2d-exact" | "exhaustive-sampled" | "singleton-scan"
    work_bound: int
    candidate_mode: str = "skyline"
    samples: int | None = None
    seed: int | None = None

    def to_json_dict(self) -> dict:
        out = {
            "optimal_value": self.optimal_value,
            "optimal_sets": [list(s) for s in self.optimal_sets],
            "method": self.method,
            "work_bound": self.work_bound,
            "candidate_mode": self.candidate_mode,
        }
        if self.samples is not None:
            out["samples"] = self.samples
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def arc_dataset(n: int) -> Dataset:
    """n 2-D tuples evenly spaced on the unit quarter circle.

    Every tuple is a skyline tuple and is top-1 for the utility direction
    pointing at it, which forces the optimal rank-regret of any small
    subset to grow linearly with n.
    """
    if n < 2:
        raise ValueError("arc dataset needs n >= 2")
    theta = np.linspace(0.0, np.pi / 2, n)
    values = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    return Dataset(values, ("A1", "A2"))


def dense_grid_chain_rank(S, D: Dataset, interval: tuple[float, float] = (0.0, 1.0),
                          points: int = 100_000) -> int:
    """Worst rank of S over a dense uniform x-grid (can only under-count)."""
    rows = np.unique(np.asarray(list(S), dtype=int)) - 1
    xs = np.linspace(interval[0], interval[1], points)
    R = ranks_at(D.values, xs)
    return int(R[rows].min(axis=0).max())


def exact_rat_k_2d(S, D: Dataset, k: int, space: RestrictedSpace | None = None) -> float:
    """Exact fraction of utility directions (by arc measure) whose top-k
    intersects S, for d = 2.

    Ranks are piecewise constant between crossings; each piece is weighted
    by the angle swept by the normalized direction (c, 1-c).
    """
    if D.d != 2:
        raise ValueError("exact_rat_k_2d requires d = 2")
    rows = np.unique(np.asarray(list(S), dtype=int)) - 1
    lo, hi = render_scene(space)
    pts = critical_xs(D.values, rows, (lo, hi))
    if len(pts) < 2:
        # degenerate zero-width interval: a single direction
        mr = ranks_at(D.values, pts)[rows].min(axis=0)
        return float(mr[0] <= k)
    mids = (pts[:-1] + pts[1:]) / 2.0
    min_rank = ranks_at(D.values, mids)[rows].min(axis=0)
    angles = np.arctan2(pts, 1.0 - pts)
    weights = np.diff(angles)
    hit = weights[min_rank <= k].sum()
    return float(hit / weights.sum())


def _candidate_rows(D: Dataset, space, mode: str) -> np.ndarray:
    if mode == "all":
        return np.arange(D.n)
    if mode == "skyline":
        return np.asarray(restricted_skyline(D, space).indices) - 1
    raise ValueError(f"unknown candidate mode {mode!r}")


def _rank_profiles_2d(D: Dataset, cand: np.ndarray, interval) -> np.ndarray:
    """Rank of every candidate line at every critical evaluation point."""
    pts = critical_xs(D.values, cand, interval)
    evals = np.concatenate([pts, (pts[:-1] + pts[1:]) / 2.0]) if len(pts) > 1 else pts
    return ranks_at(D.values, evals)[cand].astype(np.int32)


def _rank_profiles_sampled(D: Dataset, cand: np.ndarray, space,
                           samples: int, seed: int) -> np.ndarray:
    """Rank of every candidate tuple at every sampled utility vector."""
    V = sample_sphere(D.d, samples, seed, space)
    out = np.empty((len(cand), samples), dtype=np.int32)
    chunk = max(1, 20_000_000 // max(D.n * len(cand), 1))
    cols = np.arange(D.n)
    for lo in range(0, samples, chunk):
        sc = V[lo:lo + chunk] @ D.values.T
        sub = sc[:, cand]
        gt = (sc[:, None, :] > sub[:, :, None]).sum(axis=2)
        eq_lower = ((sc[:, None, :] == sub[:, :, None])
                    & (cols[None, None, :] < cand[None, :, None])).sum(axis=2)
        out[:, lo:lo + chunk] = (gt + eq_lower + 1).T
    return out


def _min_over_subsets(R: np.ndarray, cand: np.ndarray, r: int,
                      sets_cap: int) -> tuple[int, list[tuple[int, ...]], int]:
    """Exact minimum over all subsets of size <= r of max-over-columns of
    the subset's best rank, with every subset either fully evaluated or
    discarded by a certain lower bound.

    The lower bound evaluates a small column subset first; a subset whose
    lower bound already reaches the incumbent cannot improve it.
    """
    n_cand, n_cols = R.shape
    coarse_cols = np.unique(np.linspace(0, n_cols - 1, min(64, n_cols)).astype(int))
    Rc = np.ascontiguousarray(R[:, coarse_cols])
    work = 0
    best = np.inf
    sizes = range(1, min(r, n_cand) + 1)
    for size in sizes:
        for block in _combo_blocks(n_cand, size, 4096):
            work += len(block)
            lb = Rc[block].min(axis=1).max(axis=1)
            for rows in block[lb < best]:
                v = int(R[rows].min(axis=0).max())
                if v < best:
                    best = v
    best = int(best)
    optimal: list[tuple[int, ...]] = []
    for size in sizes:
        for block in _combo_blocks(n_cand, size, 4096):
            lb = Rc[block].min(axis=1).max(axis=1)
            for rows in block[lb <= best]:
                if int(R[rows].min(axis=0).max()) == best:
                    optimal.append(tuple(sorted(int(cand[i]) + 1 for i in rows)))
                    if len(optimal) >= sets_cap:
                        return best, optimal, work
    return best, optimal, work


def _combo_blocks(n: int, size: int, block: int):
    it = itertools.combinations(range(n), size)
    while True:
        chunk = list(itertools.islice(it, block))
        if not chunk:
            return
        yield np.asarray(chunk, dtype=np.int64)


def exhaustive_rrm(D: Dataset, r: int, space: RestrictedSpace | None = None,
                   mode: str = "skyline", *, sets_cap: int = 32,
                   samples: int = 100_000, seed: int = 0) -> OracleReport:
    """Reference optimum by subset enumeration.

    mode "skyline" enumerates restricted-skyline subsets, "all" every
    subset (useful to confirm the candidate reduction loses nothing).
    For d = 2 the evaluation is exact; for d > 2 it is the worst rank
    over a sampled vector set and therefore a lower bound.
    """
    if not 1 <= r <= D.n:
        raise ValueError(f"budget r must be in 1..{D.n}, got {r}")
    cand = _candidate_rows(D, space, mode)
    total = sum(comb(len(cand), j) for j in range(1, min(r, len(cand)) + 1))
    if total > ENUMERATION_GUARD:
        raise GuardExceededError(
            f"enumerating {total} subsets exceeds the guard {ENUMERATION_GUARD}"
        )
    if D.d == 2:
        R = _rank_profiles_2d(D, cand, render_scene(space))
        method = "exhaustive-2d-exact"
        rep_samples = rep_seed = None
    else:
        R = _rank_profiles_sampled(D, cand, space, samples, seed)
        method = "exhaustive-sampled"
        rep_samples, rep_seed = samples, seed
    value, optimal, work = _min_over_subsets(R, cand, r, sets_cap)
    if r == 1:
        method = "singleton-scan"
    return OracleReport(
        optimal_value=value,
        optimal_sets=tuple(optimal),
        method=method,
        work_bound=work,
        candidate_mode=mode,
        samples=rep_samples,
        seed=rep_seed,
    )


def sampled_rank_regret(S, D: Dataset, samples: int, seed: int,
                        space: RestrictedSpace | None = None) -> int:
    """Sampled lower bound on the worst-case rank-regret of one set."""
    V = sample_sphere(D.d, samples, seed, space)
    return int(min_ranks_for_vectors(D, V, S).max())


def exhaustive_min_cover_size(universe: np.ndarray, sets: dict[int, np.ndarray]) -> int:
    """Smallest number of sets covering the universe, by direct enumeration."""
    uni = set(int(x) for x in universe)
    if not uni:
        return 0
    keys = sorted(sets)
    members = {k: uni.intersection(int(x) for x in sets[k]) for k in keys}
    if len(keys) > 30 or len(uni) > 40:
        raise GuardExceededError("min-cover enumeration limited to 30 sets / 40 items")
    for size in range(1, len(keys) + 1):
        for combo in itertools.combinations(keys, size):
            merged: set[int] = set()
            for k in combo:
                merged |= members[k]
            if merged == uni:
                return size
    raise AssertionError("the full collection must cover its own union")
