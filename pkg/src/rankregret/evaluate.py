"""Monte-Carlo quality metrics for representative sets.

The rank-regret estimate is the worst sampled rank and can never exceed
the true worst case; rat_k is the sampled fraction of directions whose
top-k intersects the set.  The regret-ratio metric of score-based
selection is included for contrast only.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import Dataset, RestrictedSpace, _set_rows, min_ranks_for_vectors
from .solverhd import sample_sphere


@dataclass(frozen=True, eq=False)
class EvalReport:
    estimated_rank_regret: int
    rat_k: dict[int, float] = field(default_factory=dict)
    max_regret_ratio: float | None = None
    samples: int = 0
    seed: int = 0
    normalized_input: bool = True
    skipped_samples: int = 0

    def to_json_dict(self) -> dict:
        out: dict = {
            "estimated_rank_regret": self.estimated_rank_regret,
            "rat_k": {str(k): v for k, v in sorted(self.rat_k.items())},
            "samples": self.samples,
            "seed": self.seed,
        }
        if self.max_regret_ratio is not None:
            out["max_regret_ratio"] = self.max_regret_ratio
        if not self.normalized_input:
            out["normalized_input"] = False
        if self.skipped_samples:
            out["skipped_samples"] = self.skipped_samples
        return out


def estimate_rank_regret(S, D: Dataset, samples: int, seed: int,
                         space: RestrictedSpace | None = None,
                         ks=()) -> EvalReport:
    """Sampled worst-case rank-regret of S, plus rat_k for requested thresholds."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    V = sample_sphere(D.d, samples, seed, space)
    min_ranks = min_ranks_for_vectors(D, V, S)
    rat = {int(k): float(np.mean(min_ranks <= int(k))) for k in ks}
    return EvalReport(
        estimated_rank_regret=int(min_ranks.max()),
        rat_k=rat,
        samples=samples,
        seed=seed,
        normalized_input=D.normalized,
    )


def max_regret_ratio(S, D: Dataset, samples: int, seed: int,
                     space: RestrictedSpace | None = None) -> float:
    """Sampled maximum of (best score in D minus best score in S) / best score.

    Directions where the dataset's best score is not positive carry no
    ratio and are skipped with a warning.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rows = _set_rows(S, D.n)
    V = sample_sphere(D.d, samples, seed, space)
    worst = 0.0
    skipped = 0
    chunk = 4096
    for lo in range(0, samples, chunk):
        sc = V[lo:lo + chunk] @ D.values.T
        top = sc.max(axis=1)
        ok = top > 0
        skipped += int((~ok).sum())
        if ok.any():
            best_s = sc[np.ix_(ok, rows)].max(axis=1)
            ratios = (top[ok] - best_s) / top[ok]
            worst = max(worst, float(ratios.max()))
    if skipped:
        warnings.warn(
            f"{skipped} of {samples} sampled directions had no positive score "
            "and were skipped", RuntimeWarning,
        )
    return worst
