"""Dataset and utility-vector primitives shared by every solver.

A dataset is an immutable table of n tuples with d numeric attributes.
A linear utility vector u assigns each tuple the score ``u . t``; the
rank of a tuple is its 1-based position in the descending score order,
and the rank-regret of a subset is the best (minimum) rank among its
members.  Score ties are broken deterministically: the tuple with the
lower index ranks better, which makes ranks a bijection onto 1..n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

NORMALIZATION_TOL = 1e-9

_NORMALIZATION_TAGS = ("sum-one", "unit-norm", "raw")


def _as_readonly(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable n x d tuple table.

    Tuple indices are stable 1-based identifiers; every result in this
    package refers to tuples by these indices.  A normalized dataset has
    all values in [0, 1] and, on each attribute, at least one tuple
    attaining 1 (a boundary tuple).
    """

    values: np.ndarray
    attribute_names: tuple[str, ...] = ()
    normalized: bool = True

    def __post_init__(self) -> None:
        vals = _as_readonly(np.atleast_2d(self.values))
        object.__setattr__(self, "values", vals)
        if vals.ndim != 2:
            raise ValueError("dataset values must form a 2-D table")
        n, d = vals.shape
        if n < 1 or d < 2:
            raise ValueError(f"dataset needs n >= 1 and d >= 2, got n={n}, d={d}")
        if not np.isfinite(vals).all():
            raise ValueError("dataset values must be finite")
        names = tuple(self.attribute_names) or tuple(f"A{i}" for i in range(1, d + 1))
        if len(names) != d:
            raise ValueError(f"expected {d} attribute names, got {len(names)}")
        object.__setattr__(self, "attribute_names", names)
        if self.normalized:
            if vals.min() < -NORMALIZATION_TOL or vals.max() > 1 + NORMALIZATION_TOL:
                raise ValueError("normalized dataset must have values in [0, 1]")
            col_max = vals.max(axis=0)
            if (col_max < 1 - NORMALIZATION_TOL).any():
                bad = int(np.argmax(col_max < 1 - NORMALIZATION_TOL))
                raise ValueError(
                    f"attribute {names[bad]!r} has no boundary tuple reaching 1; "
                    "dataset does not look normalized"
                )

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    @cached_property
    def basis_indices(self) -> tuple[int, ...]:
        """Indices of the boundary tuples, one per attribute (lowest index wins)."""
        if not self.normalized:
            raise ValueError("basis is only defined for a normalized dataset")
        rows: set[int] = set()
        for j in range(self.d):
            hits = np.flatnonzero(self.values[:, j] >= 1 - NORMALIZATION_TOL)
            rows.add(int(hits[0]))
        return tuple(sorted(r + 1 for r in rows))

    def record(self, index: int) -> np.ndarray:
        """Attribute values of the tuple with the given 1-based index."""
        if not 1 <= index <= self.n:
            raise IndexError(f"tuple index {index} outside 1..{self.n}")
        return self.values[index - 1]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        tag = "normalized" if self.normalized else "raw"
        return f"Dataset(n={self.n}, d={self.d}, {tag})"


@dataclass(frozen=True)
class UtilityVector:
    """Nonnegative d-vector of attribute weights.

    The normalization tag records which convention the weights follow:
    ``sum-one`` (components add to 1, used by the 2D dual transform),
    ``unit-norm`` (L2 norm 1, used on the utility sphere) or ``raw``.
    """

    weights: tuple[float, ...]
    normalization: str = "raw"

    def __post_init__(self) -> None:
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 2:
            raise ValueError("utility vector needs at least 2 components")
        if any(x < 0 for x in w):
            raise ValueError("utility weights must be nonnegative")
        if self.normalization not in _NORMALIZATION_TAGS:
            raise ValueError(f"unknown normalization tag {self.normalization!r}")
        if self.normalization == "sum-one" and abs(sum(w) - 1.0) > NORMALIZATION_TOL:
            raise ValueError("sum-one vector must have components adding to 1")
        if self.normalization == "unit-norm":
            if abs(float(np.linalg.norm(w)) - 1.0) > NORMALIZATION_TOL:
                raise ValueError("unit-norm vector must have L2 norm 1")

    @classmethod
    def sum_one(cls, weights: Sequence[float]) -> "UtilityVector":
        w = np.asarray(weights, dtype=float)
        total = w.sum()
        if total <= 0:
            raise ValueError("cannot scale a nonpositive vector to sum 1")
        return cls(tuple(w / total), "sum-one")

    @classmethod
    def unit(cls, weights: Sequence[float]) -> "UtilityVector":
        w = np.asarray(weights, dtype=float)
        norm = float(np.linalg.norm(w))
        if norm <= 0:
            raise ValueError("cannot scale the zero vector to unit norm")
        return cls(tuple(w / norm), "unit-norm")

    @property
    def d(self) -> int:
        return len(self.weights)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


def as_weight_array(u, d: int | None = None) -> np.ndarray:
    """Coerce a UtilityVector or plain sequence to a float weight array."""
    w = u.array if isinstance(u, UtilityVector) else np.asarray(u, dtype=float)
    if w.ndim != 1:
        raise ValueError("utility vector must be one-dimensional")
    if d is not None and w.shape[0] != d:
        raise ValueError(f"utility vector has {w.shape[0]} components, expected {d}")
    return w


@dataclass(frozen=True, eq=False)
class RestrictedSpace:
    """Convex cone of admissible utility vectors.

    The cone is the set of nonnegative vectors satisfying ``h . u >= 0``
    for every stored halfspace h.  An empty halfspace list denotes the
    full nonnegative orthant.  Construction validates that the cone
    contains at least one strictly positive direction.
    """

    halfspaces: tuple[tuple[float, ...], ...] = ()
    description: str = ""

    def __post_init__(self) -> None:
        hs = tuple(tuple(float(x) for x in h) for h in self.halfspaces)
        object.__setattr__(self, "halfspaces", hs)
        if hs:
            d = len(hs[0])
            if d < 2 or any(len(h) != d for h in hs):
                raise ValueError("halfspaces must share one dimension d >= 2")
            rays = self.extreme_rays(d)
            if rays.shape[0] == 0 or not (rays.sum(axis=0) > 0).all():
                raise ValueError(
                    "restricted space is degenerate: the cone has no strictly "
                    "positive direction"
                )

    @classmethod
    def full(cls, description: str = "") -> "RestrictedSpace":
        return cls((), description)

    @classmethod
    def weak_ranking(cls, d: int, levels: int | None = None) -> "RestrictedSpace":
        """Cone with u[1] >= u[2] >= ... over the first ``levels``+1 attributes."""
        levels = d - 1 if levels is None else levels
        if not 1 <= levels <= d - 1:
            raise ValueError("levels must be in 1..d-1")
        hs = []
        for i in range(levels):
            h = [0.0] * d
            h[i], h[i + 1] = 1.0, -1.0
            hs.append(tuple(h))
        return cls(tuple(hs), f"weak ranking over first {levels + 1} attributes")

    @property
    def is_full(self) -> bool:
        return not self.halfspaces

    @property
    def dim(self) -> int | None:
        return len(self.halfspaces[0]) if self.halfspaces else None

    def halfspace_matrix(self, d: int) -> np.ndarray:
        if self.halfspaces and len(self.halfspaces[0]) != d:
            raise ValueError(f"space is {len(self.halfspaces[0])}-dimensional, not {d}")
        return np.asarray(self.halfspaces, dtype=float).reshape(len(self.halfspaces), d)

    def membership_mask(self, vectors: np.ndarray) -> np.ndarray:
        """Exact cone-membership test for each row of ``vectors``."""
        V = np.atleast_2d(np.asarray(vectors, dtype=float))
        ok = (V >= 0).all(axis=1)
        if self.halfspaces:
            H = self.halfspace_matrix(V.shape[1])
            ok &= (V @ H.T >= 0).all(axis=1)
        return ok

    def contains(self, u) -> bool:
        return bool(self.membership_mask(as_weight_array(u)[None, :])[0])

    def extreme_rays(self, d: int | None = None) -> np.ndarray:
        """Extreme rays of the cone, scaled to max component 1, sorted rows.

        Membership of a vector is scale invariant, so any positive scaling
        of a ray is equivalent; the max-1 scaling keeps rays of rational
        constraint systems exact.
        """
        if self.is_full:
            if d is None:
                raise ValueError("dimension required for the full space")
            return np.eye(d)
        d = len(self.halfspaces[0]) if d is None else d
        A = np.vstack([np.eye(d), self.halfspace_matrix(d)])
        rays: list[np.ndarray] = []
        keys: set[tuple] = set()
        for rows in itertools.combinations(range(A.shape[0]), d - 1):
            sub = A[list(rows)]
            if np.linalg.matrix_rank(sub, tol=1e-10) != d - 1:
                continue
            # one-dimensional null space of the active constraints
            _, _, vh = np.linalg.svd(sub)
            v = vh[-1]
            for cand in (v, -v):
                if (A @ cand >= -1e-10).all():
                    ray = np.where(np.abs(cand) < 1e-12, 0.0, cand)
                    peak = ray.max()
                    if peak <= 0:
                        continue
                    # rounding after max-1 scaling keeps rational cones exact
                    ray = np.round(ray / peak, 12)
                    key = tuple(ray)
                    if key not in keys:
                        keys.add(key)
                        rays.append(ray)
        rays.sort(key=lambda r: tuple(r))
        return np.asarray(rays).reshape(len(rays), d)


@dataclass(frozen=True, eq=False)
class RegretResult:
    """Outcome of a rank-regret solver run."""

    selected_indices: tuple[int, ...]
    size: int
    rank_regret: int
    solver_params: dict = field(default_factory=dict)
    estimated_rank_regret: int | None = None
    samples: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.selected_indices)
        object.__setattr__(self, "selected_indices", idx)
        if self.size != len(idx):
            raise ValueError("size must equal the number of selected indices")
        if self.rank_regret < 1:
            raise ValueError("rank_regret is a 1-based rank")

    def to_json_dict(self) -> dict:
        """Result as a plain dict following the on-disk schema (optional keys omitted)."""
        out: dict = {
            "indices": list(self.selected_indices),
            "size": self.size,
            "rank_regret": self.rank_regret,
            "params": self.solver_params,
        }
        if self.estimated_rank_regret is not None:
            out["estimated_rank_regret"] = self.estimated_rank_regret
        if self.samples is not None:
            out["samples"] = self.samples
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def scores(D: Dataset, u) -> np.ndarray:
    """Scores of all tuples under u, indexed 0..n-1."""
    return D.values @ as_weight_array(u, D.d)


def score(u, record) -> float:
    """Linear utility of one tuple record: the dot product of u and t."""
    w = as_weight_array(u)
    t = np.asarray(record, dtype=float)
    if t.shape != w.shape:
        raise ValueError(f"record has shape {t.shape}, utility vector {w.shape}")
    return float(w @ t)


def rank(u, t_index: int, D: Dataset) -> int:
    """Rank of the tuple in the descending score order of D (ties by index)."""
    if not 1 <= t_index <= D.n:
        raise IndexError(f"tuple index {t_index} outside 1..{D.n}")
    sc = scores(D, u)
    target = sc[t_index - 1]
    above = int(np.count_nonzero(sc > target))
    tied_lower = int(np.count_nonzero(sc[: t_index - 1] == target))
    return above + tied_lower + 1


def rank_regret_of_set(u, S: Iterable[int], D: Dataset) -> int:
    """Best (minimum) rank among the members of S under u."""
    rows = _set_rows(S, D.n)
    sc = scores(D, u)
    return int(_min_rank_rows(sc[None, :], rows)[0])


def top_k(u, k: int, D: Dataset) -> list[int]:
    """The k best tuple indices under u, in rank order."""
    if not 1 <= k <= D.n:
        raise ValueError(f"k must be in 1..{D.n}, got {k}")
    sc = scores(D, u)
    order = np.argsort(-sc, kind="stable")  # stable sort = index tie rule
    return [int(i) + 1 for i in order[:k]]


def shift(D: Dataset, lam) -> Dataset:
    """Dataset with lam added to every tuple, marked un-normalized.

    Adding a fixed nonnegative vector adds the same constant to every
    score under any u, so all ranks are preserved.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (D.d,):
        raise ValueError(f"shift vector must have {D.d} components")
    if (lam < 0).any():
        raise ValueError("shift vector must be nonnegative")
    return Dataset(D.values + lam, D.attribute_names, normalized=False)


def _set_rows(S: Iterable[int], n: int) -> np.ndarray:
    rows = np.unique(np.asarray(list(S), dtype=int))
    if rows.size == 0:
        raise ValueError("tuple set must be nonempty")
    if rows.min() < 1 or rows.max() > n:
        raise IndexError(f"tuple indices must lie in 1..{n}")
    return rows - 1


def _min_rank_rows(score_matrix: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Minimum rank of the tuple set over each utility row of a score matrix.

    The set's best rank is the rank of its best-scoring member; among
    equal scores the member with the lowest index wins, which ``rows``
    being sorted guarantees via the first argmax.
    """
    sub = score_matrix[:, rows]
    pick = rows[np.argmax(sub, axis=1)]
    best = sub.max(axis=1)
    above = (score_matrix > best[:, None]).sum(axis=1)
    col = np.arange(score_matrix.shape[1])
    tied_lower = ((score_matrix == best[:, None]) & (col[None, :] < pick[:, None])).sum(axis=1)
    return (above + tied_lower + 1).astype(np.int64)


def min_ranks_for_vectors(D: Dataset, vectors: np.ndarray, S: Iterable[int],
                          chunk: int = 2048) -> np.ndarray:
    """Rank-regret of the set S for every utility row of ``vectors``."""
    rows = _set_rows(S, D.n)
    V = np.atleast_2d(np.asarray(vectors, dtype=float))
    out = np.empty(V.shape[0], dtype=np.int64)
    for lo in range(0, V.shape[0], chunk):
        block = V[lo:lo + chunk]
        out[lo:lo + chunk] = _min_rank_rows(block @ D.values.T, rows)
    return out
