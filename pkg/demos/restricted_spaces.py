"""Restricting the utility space: cones, rendering, and restricted solves."""

import numpy as np

import rankregret as rr
from rankregret.datagen import GenSpec, generate

# A cone of admissible utility vectors is given by homogeneous halfspaces
# h.u >= 0.  A common choice is a weak ranking: attribute 1 matters at
# least as much as attribute 2, and so on.
space = rr.RestrictedSpace.weak_ranking(3, levels=2)
print("cone:", space.description)
print("extreme rays:\n", space.extreme_rays())

D = generate(GenSpec("anti-correlated", 400, 3, seed=5))
sky_all = rr.skyline(D)
sky_u = rr.restricted_skyline(D, space)
print(f"\nskyline size {len(sky_all)} shrinks to {len(sky_u)} under the cone")

params = rr.HdParams(r=6, gamma=4, m=2000, seed=5)
res_full = rr.solve_rrm_hd(D, params)
res_restricted = rr.solve_rrm_hd(D, params, space)
print("full-space solve:      set", res_full.selected_indices,
      "threshold", res_full.rank_regret)
print("restricted solve:      set", res_restricted.selected_indices,
      "threshold", res_restricted.rank_regret)

# In 2D the cone renders to an interval of the sum-one weight x, and the
# sweep only covers that interval.
D2 = generate(GenSpec("independent", 300, 2, seed=8))
half = rr.RestrictedSpace(((1.0, -1.0),), "first attribute weighted higher")
print("\n2D rendered interval for", half.description, "->", rr.render_scene(half))
for sp, label in ((None, "full space"), (half, "restricted")):
    res = rr.solve_rrm_2d(D2, 4, sp)
    print(f"  {label}: set {res.selected_indices}, worst rank {res.rank_regret}")
