"""High-dimensional rank-regret pipeline.

For d > 2 the continuous space of unit-norm utility vectors is replaced
by a finite set: a polar-coordinate grid (every direction has a grid
vector within a provable distance) united with Monte-Carlo samples
(coverage of the finite set transfers to the sphere with high
probability).  Selecting tuples so that every finite vector sees a
top-k member is a set-cover instance solved greedily; an outer
doubling-plus-binary search finds the smallest threshold k whose cover
fits the size budget.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import Dataset, RegretResult, RestrictedSpace, min_ranks_for_vectors
from .skyline import basis

SAMPLE_CAP = 1_000_000
_ORDER_CACHE_LIMIT = 300_000_000  # max vectors*n entries for the precomputed sort


class ConeSamplingError(RuntimeError):
    """Rejection sampling on a restricted space accepted too few vectors."""


@dataclass(frozen=True)
class HdParams:
    """Parameters of the high-dimensional solver.

    epsilon_utility and the default sample size are derived quantities;
    m can be overridden explicitly.
    """

    r: int
    gamma: int = 6
    delta_fail: float = 0.03
    m: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("size budget r must be at least 1")
        if self.gamma < 1:
            raise ValueError("grid parameter gamma must be at least 1")
        if not 0 < self.delta_fail < 1:
            raise ValueError("failure probability must lie in (0, 1)")
        if self.m is not None and self.m < 1:
            raise ValueError("sample size m must be at least 1")

    def epsilon_utility(self, d: int) -> float:
        """Utility slack of the grid: scores of returned tuples are within a
        (1 - epsilon) factor of the k-th best for every direction."""
        return d * math.sqrt(d - 1) * math.pi / (2 * self.gamma)

    def sample_size(self, n: int, d: int) -> int:
        """Monte-Carlo part size; the default formula is capped at 10**6."""
        if self.m is not None:
            return self.m
        if self.delta_fail <= 1.0 / n:
            raise ValueError("failure probability must exceed 1/n to derive m")
        num = math.log(max(n - self.r + 1, 1)) + math.log(n)
        if self.r > d:
            num += (self.r - d) * math.log(n - d)
        m = math.ceil(num / (2 * (self.delta_fail - 1.0 / n) ** 2))
        m = max(m, 1)
        if m > SAMPLE_CAP:
            warnings.warn(
                f"derived sample size {m} exceeds the cap {SAMPLE_CAP}; capping",
                RuntimeWarning,
            )
            m = SAMPLE_CAP
        return m


def grid_closeness_radius(d: int, gamma: int) -> float:
    """Guaranteed distance from any direction to its nearest grid vector."""
    return math.sqrt(d - 1) * math.pi / (4 * gamma)


@dataclass(frozen=True)
class NetBoundParams:
    """Inputs of the coupon-collector sample bound for a delta-net of the
    unit cube's up-facets."""

    c: float
    d: int
    epsilon_net: float

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError("confidence multiplier c must be at least 1")
        if self.d < 2:
            raise ValueError("dimension d must be at least 2")
        if not 0 < self.epsilon_net < 1:
            raise ValueError("epsilon must lie in (0, 1)")

    @property
    def delta_net(self) -> float:
        """Hypercube diameter at the boundary of eps = 2*d*delta/(1+2*d*delta)."""
        return self.epsilon_net / (2 * self.d * (1 - self.epsilon_net))

    @property
    def facet_subdivision(self) -> float:
        return math.sqrt(self.d - 1) / self.delta_net

    @property
    def hypercube_count(self) -> float:
        return self.d * self.facet_subdivision ** (self.d - 1)


def net_bound_value(p: NetBoundParams) -> float:
    """The sample bound before rounding; linear in c."""
    base = 2 * p.d * math.sqrt(p.d - 1) / p.epsilon_net
    return p.c * p.d * base ** (p.d - 1) * (math.log(p.d) + (p.d - 1) * math.log(base))


def net_sample_bound(p: NetBoundParams) -> int:
    """Samples sufficient to hit every facet cell, floor of the bound."""
    return math.floor(net_bound_value(p))


def polar_grid(d: int, gamma: int) -> np.ndarray:
    """All (gamma+1)**(d-1) grid vectors of the polar discretization.

    Each of the d-1 angles ranges over {0, 1, ..., gamma} * pi/(2*gamma)
    and converts to Cartesian coordinates via
    u[i] = sin(theta[d-1]) * ... * sin(theta[i]) * cos(theta[i-1]) with
    theta[0] = 0.  Distinct angle vectors can collapse to the same
    Cartesian vector (any zero sine); duplicates are kept here.
    """
    if d < 2 or gamma < 1:
        raise ValueError("polar grid needs d >= 2 and gamma >= 1")
    angles = np.arange(gamma + 1) * (np.pi / 2) / gamma
    grids = np.meshgrid(*([angles] * (d - 1)), indexing="ij")
    theta = np.stack([g.ravel() for g in grids], axis=1)  # columns theta[1..d-1]
    count = theta.shape[0]
    out = np.empty((count, d))
    sines = np.sin(theta)
    cosines = np.cos(theta)
    # suffix[:, c] = product of sin over angle columns c..d-2 (empty = 1)
    suffix = np.ones((count, d))
    for c in range(d - 2, -1, -1):
        suffix[:, c] = suffix[:, c + 1] * sines[:, c]
    for i in range(1, d + 1):
        cos_term = 1.0 if i == 1 else cosines[:, i - 2]
        out[:, i - 1] = suffix[:, i - 1] * cos_term
    return out


def dedup_vectors(V: np.ndarray) -> np.ndarray:
    """Exact duplicate removal; rows come back in sorted order."""
    return np.unique(np.asarray(V, dtype=float), axis=0)


def filter_grid(grid: np.ndarray, space: RestrictedSpace | None) -> np.ndarray:
    """Grid vectors whose direction lies in the cone.

    Membership of a cone is scale invariant, so the unit-norm vectors are
    tested directly against the halfspaces, exactly and tolerance-free.
    """
    if space is None or space.is_full:
        return np.asarray(grid, dtype=float)
    return grid[space.membership_mask(grid)]


def sample_sphere(d: int, m: int, seed: int, space: RestrictedSpace | None = None,
                  direction_sampler=None) -> np.ndarray:
    """m unit-norm nonnegative vectors, uniform on the admissible sphere patch.

    The default draws |N(0,1)| coordinates and normalizes, which is uniform
    on the positive orthant of the sphere; a custom direction_sampler
    (rng, count) -> (count, d) array supports other user distributions.
    For a restricted space vectors are kept by rejection; an acceptance
    rate below 1e-4 on the probe batch raises ConeSamplingError.
    """
    if m < 1:
        raise ValueError("sample count m must be at least 1")
    rng = np.random.default_rng(seed)
    if direction_sampler is None:
        def direction_sampler(r, count):
            return np.abs(r.standard_normal((count, d)))
    restricted = space is not None and not space.is_full
    batch = 32768
    chunks: list[np.ndarray] = []
    got = 0
    probed = False
    while got < m:
        raw = np.atleast_2d(np.asarray(direction_sampler(rng, batch), dtype=float))
        if raw.shape[1] != d:
            raise ValueError("direction sampler returned wrong dimensionality")
        norms = np.linalg.norm(raw, axis=1)
        keep = norms > 0
        V = raw[keep] / norms[keep][:, None]
        if restricted:
            V = V[space.membership_mask(V)]
        if not probed:
            probed = True
            if V.shape[0] / batch < 1e-4:
                raise ConeSamplingError(
                    f"acceptance rate {V.shape[0] / batch:.2e} below 1e-4 on a "
                    f"{batch}-vector probe; the cone is too thin to sample"
                )
        chunks.append(V)
        got += V.shape[0]
    return np.vstack(chunks)[:m]


@dataclass(frozen=True, eq=False)
class Discretization:
    """Finite utility-vector set: polar grid part plus sampled part."""

    vectors: np.ndarray
    grid_part: np.ndarray
    sample_part: np.ndarray
    gamma: int
    m: int
    seed: int

    @property
    def size(self) -> int:
        return self.vectors.shape[0]


def build_discretization(d: int, gamma: int, m: int, seed: int,
                         space: RestrictedSpace | None = None,
                         direction_sampler=None) -> Discretization:
    """Grid (filtered for the space, duplicates removed) plus m samples."""
    grid = dedup_vectors(filter_grid(polar_grid(d, gamma), space))
    samples = (sample_sphere(d, m, seed, space, direction_sampler)
               if m > 0 else np.empty((0, d)))
    vectors = np.vstack([grid, samples]) if samples.size else grid
    return Discretization(vectors, grid, samples, gamma, m, seed)


@dataclass(frozen=True, eq=False)
class CoverStructure:
    """Set-cover view of one threshold k.

    uncovered_ids are the vectors whose top-k contains no basis tuple;
    cover_sets maps each useful tuple index to the vector ids it covers.
    """

    uncovered_ids: np.ndarray
    cover_sets: dict[int, np.ndarray]
    k: int


def _descending_order(D: Dataset, vectors: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Per-vector descending tuple order with the index tie rule."""
    N = vectors.shape[0]
    out = np.empty((N, D.n), dtype=np.int32)
    for lo in range(0, N, chunk):
        sc = vectors[lo:lo + chunk] @ D.values.T
        out[lo:lo + chunk] = np.argsort(-sc, axis=1, kind="stable")
    return out


def build_cover(D: Dataset, k: int, basis_indices, disc: Discretization,
                order: np.ndarray | None = None) -> CoverStructure:
    """Top-k membership of every vector, reduced by the basis tuples."""
    if not 1 <= k <= D.n:
        raise ValueError(f"threshold k must be in 1..{D.n}, got {k}")
    if order is None:
        order = _descending_order(D, disc.vectors)
    topk = order[:, :k]
    basis_rows = np.asarray(sorted(basis_indices), dtype=int) - 1
    covered = np.isin(topk, basis_rows).any(axis=1)
    uncovered_ids = np.flatnonzero(~covered)
    cover_sets: dict[int, np.ndarray] = {}
    if uncovered_ids.size:
        flat_t = topk[uncovered_ids].ravel()
        flat_u = np.repeat(uncovered_ids, k)
        by_tuple = np.argsort(flat_t, kind="stable")
        flat_t = flat_t[by_tuple]
        flat_u = flat_u[by_tuple]
        rows, starts = np.unique(flat_t, return_index=True)
        bounds = np.append(starts, flat_t.size)
        for i, row in enumerate(rows):
            cover_sets[int(row) + 1] = flat_u[bounds[i]:bounds[i + 1]]
    return CoverStructure(uncovered_ids, cover_sets, k)


def greedy_min_superset(D: Dataset, k: int, basis_indices, disc: Discretization,
                        order: np.ndarray | None = None) -> tuple[int, ...]:
    """Superset of the basis covering every vector at threshold k.

    Classic greedy set cover: repeatedly take the tuple covering the most
    still-uncovered vectors (ties to the lowest index), so the extra
    tuples are within a 1+ln|uncovered| factor of the minimum.
    """
    cover = build_cover(D, k, basis_indices, disc, order)
    chosen: list[int] = []
    uncovered = np.zeros(disc.size, dtype=bool)
    uncovered[cover.uncovered_ids] = True
    remaining = int(uncovered.sum())
    items = sorted(cover.cover_sets.items())
    while remaining > 0:
        best_t, best_c = -1, 0
        for t, ids in items:
            c = int(uncovered[ids].sum())
            if c > best_c:
                best_t, best_c = t, c
        if best_t < 0:
            raise AssertionError("uncoverable vector despite nonempty top-k sets")
        chosen.append(best_t)
        uncovered[cover.cover_sets[best_t]] = False
        remaining = int(uncovered.sum())
    return tuple(sorted(set(basis_indices) | set(chosen)))


def discrete_rank_regret(S, D: Dataset, disc: Discretization) -> int:
    """Worst rank-regret of S over the finite vector set, by direct scoring."""
    return int(min_ranks_for_vectors(D, disc.vectors, S).max())


def _prepare(D: Dataset, params: HdParams, space, direction_sampler):
    d, n = D.d, D.n
    if params.r > n:
        raise ValueError(f"budget r={params.r} exceeds the dataset size {n}")
    if params.r < d:
        raise ValueError(f"budget r={params.r} cannot fit the basis (r >= d={d} required)")
    m = params.sample_size(n, d)
    disc = build_discretization(d, params.gamma, m, params.seed, space, direction_sampler)
    order = None
    if disc.size * n <= _ORDER_CACHE_LIMIT:
        order = _descending_order(D, disc.vectors)
    return disc, order, m


def solve_rrm_hd(D: Dataset, params: HdParams, space: RestrictedSpace | None = None,
                 direction_sampler=None, *, _prepared=None) -> RegretResult:
    """Budget-r rank-regret minimization over the discretized utility set.

    Doubles the threshold k until the greedy cover fits the budget, then
    binary-searches the preceding range for the smallest threshold that
    still fits.  The reported rank_regret is that threshold; the direct
    cover check on the returned set is re-verified before returning.
    """
    B = basis(D).indices
    if _prepared is None:
        disc, order, m = _prepare(D, params, space, direction_sampler)
    else:
        disc, order, m = _prepared
        if params.r > D.n or params.r < D.d:
            raise ValueError(f"budget r={params.r} must lie in {D.d}..{D.n}")
    n = D.n
    calls: list[tuple[int, int]] = []

    def run(k: int) -> tuple[int, ...]:
        Q = greedy_min_superset(D, k, B, disc, order)
        calls.append((k, len(Q)))
        return Q

    k = 1
    prev_fail = 0
    while True:
        Q = run(k)
        if len(Q) <= params.r:
            break
        prev_fail = k
        if k >= n:
            raise AssertionError("threshold n must always fit: basis covers everything")
        k = min(2 * k, n)
    best_k, best_Q = k, Q
    lo, hi = prev_fail + 1, k
    while lo < hi:
        mid = (lo + hi) // 2
        Q = run(mid)
        if len(Q) <= params.r:
            hi = mid
            best_k, best_Q = mid, Q
        else:
            lo = mid + 1

    verified = discrete_rank_regret(best_Q, D, disc)
    if verified > best_k:
        raise AssertionError(
            f"cover check failed: discrete rank-regret {verified} exceeds {best_k}"
        )
    solver_params = {
        "algo": "hd",
        "r": params.r,
        "gamma": params.gamma,
        "delta": params.delta_fail,
        "m": m,
        "seed": params.seed,
        "epsilon_utility": params.epsilon_utility(D.d),
        "grid_size": int(disc.grid_part.shape[0]),
        "discretization_size": disc.size,
        "discrete_rank_regret": verified,
        "cover_calls": calls,
        "basis": list(B),
        "halfspaces": [list(h) for h in (space.halfspaces if space else ())],
    }
    return RegretResult(best_Q, len(best_Q), best_k, solver_params)


def solve_rrr_hd(D: Dataset, k: int, params: HdParams,
                 space: RestrictedSpace | None = None,
                 direction_sampler=None) -> RegretResult:
    """Smallest budget whose solver output reaches worst-case threshold k.

    Doubles the budget r starting from the basis size, then binary-searches;
    the discretization is built once and shared across calls.
    """
    if not 1 <= k <= D.n:
        raise ValueError(f"threshold k must be in 1..{D.n}, got {k}")
    B = basis(D).indices
    n = D.n
    prepared = _prepare(D, params, space, direction_sampler)

    def attempt(r: int) -> RegretResult:
        p = HdParams(r=r, gamma=params.gamma, delta_fail=params.delta_fail,
                     m=params.m, seed=params.seed)
        return solve_rrm_hd(D, p, space, direction_sampler, _prepared=prepared)

    r = max(len(B), D.d)
    prev_fail = r - 1
    while True:
        res = attempt(r)
        if res.rank_regret <= k:
            break
        prev_fail = r
        if r >= n:
            raise AssertionError("budget n must reach threshold 1")
        r = min(2 * r, n)
    best = res
    lo, hi = prev_fail + 1, r
    while lo < hi:
        mid = (lo + hi) // 2
        res = attempt(mid)
        if res.rank_regret <= k:
            hi = mid
            best = res
        else:
            lo = mid + 1
    params_out = dict(best.solver_params)
    params_out.update({"algo": "hd-rrr", "k": k})
    return RegretResult(best.selected_indices, best.size, best.rank_regret, params_out)


def linear_scan_cover_sizes(D: Dataset, params: HdParams,
                            space: RestrictedSpace | None = None,
                            ks=None, direction_sampler=None) -> dict:
    """Verification mode: greedy cover size for every threshold k.

    Greedy set cover gives no monotonicity guarantee in k, so the
    doubling-plus-binary search is checked against this scan; any
    non-monotone pair is reported, never raised.
    """
    B = basis(D).indices
    disc, order, m = _prepare(D, params, space, direction_sampler)
    ks = list(range(1, D.n + 1)) if ks is None else sorted(set(int(k) for k in ks))
    sizes = [(k, len(greedy_min_superset(D, k, B, disc, order))) for k in ks]
    smallest_fit = next((k for k, s in sizes if s <= params.r), None)
    non_monotone = [
        (sizes[i][0], sizes[i + 1][0])
        for i in range(len(sizes) - 1)
        if sizes[i + 1][1] > sizes[i][1]
    ]
    return {
        "sizes": sizes,
        "smallest_fit_k": smallest_fit,
        "non_monotone_pairs": non_monotone,
        "m": m,
    }
