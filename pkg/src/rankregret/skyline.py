"""Candidate-set reduction: skyline, restricted skyline, and basis.

Any subset of the dataset can be replaced by a subset of the (restricted)
skyline without increasing its worst-case rank-regret, so the solvers
only ever search skyline tuples.  Dominance with respect to a restricted
space is decided at the cone's extreme rays: the score difference of two
tuples is linear in u, so its sign over a polyhedral cone is determined
by the rays alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dataset, RestrictedSpace


@dataclass(frozen=True)
class CandidateSet:
    indices: tuple[int, ...]
    kind: str  # "skyline" | "restricted-skyline" | "basis"

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if self.kind not in ("skyline", "restricted-skyline", "basis"):
            raise ValueError(f"unknown candidate-set kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


def _frontier_mask_2(M: np.ndarray) -> np.ndarray:
    """Sort-filter frontier for two columns, O(n log n)."""
    n = M.shape[0]
    order = np.lexsort((np.arange(n), -M[:, 1], -M[:, 0]))
    keep = np.zeros(n, dtype=bool)
    best = -np.inf
    for i in order:
        if M[i, 1] > best:
            keep[i] = True
            best = M[i, 1]
    return keep


def _frontier_mask_nd(M: np.ndarray) -> np.ndarray:
    """Pairwise dominance filter for d > 2 columns."""
    n = M.shape[0]
    idx = np.arange(n)
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        ge = (M >= M[i]).all(axis=1)
        gt = (M > M[i]).any(axis=1)
        eq = (M == M[i]).all(axis=1)
        dominators = ge & (gt | (eq & (idx < i)))
        dominators[i] = False
        if dominators.any():
            keep[i] = False
    return keep


def frontier_mask(M: np.ndarray) -> np.ndarray:
    """Rows not dominated in the componentwise order.

    A row dominates another when it is >= everywhere and > somewhere;
    rows that are exactly equal keep only the lowest index.
    """
    M = np.asarray(M, dtype=float)
    if M.shape[1] == 2:
        return _frontier_mask_2(M)
    return _frontier_mask_nd(M)


def skyline(D: Dataset) -> CandidateSet:
    """Tuples of D not Pareto-dominated by any other tuple."""
    mask = frontier_mask(D.values)
    return CandidateSet(tuple(np.flatnonzero(mask) + 1), "skyline")


def restricted_skyline(D: Dataset, space: RestrictedSpace | None) -> CandidateSet:
    """Tuples not dominated with respect to every vector of the cone.

    Scores at the cone's extreme rays fully determine dominance over the
    cone, so the restricted skyline is the frontier of the n x (#rays)
    ray-score matrix.  With the full space the rays are the coordinate
    axes and this reduces to the plain skyline.
    """
    if space is None or space.is_full:
        return CandidateSet(skyline(D).indices, "restricted-skyline")
    rays = space.extreme_rays(D.d)
    mask = frontier_mask(D.values @ rays.T)
    return CandidateSet(tuple(np.flatnonzero(mask) + 1), "restricted-skyline")


def basis(D: Dataset) -> CandidateSet:
    """One boundary tuple per attribute (value 1 after normalization)."""
    return CandidateSet(D.basis_indices, "basis")
