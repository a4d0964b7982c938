"""No algorithm can keep the worst-case rank independent of n.

Tuples spread evenly on a quarter circle make every direction favor its
nearest tuple, so any r-subset leaves an angular gap with about n/(r+1)
better-ranked tuples in the middle.  The exhaustive optimum doubles with
n, matching the linear lower bound.
"""

import rankregret as rr

r = 3
for n in (50, 100, 200):
    D = rr.arc_dataset(n)
    rep = rr.exhaustive_rrm(D, r)
    print(f"n={n:4d}: exhaustive optimum {rep.optimal_value:3d}  "
          f"(n/(2(r+1)) = {n / (2 * (r + 1)):.1f}, "
          f"one optimal set {rep.optimal_sets[0]})")

print("\nper-tuple picture at n=12, r=1: every tuple is top-1 somewhere,")
D = rr.arc_dataset(12)
for i in (1, 6, 12):
    print(f"  t{i} worst-case rank {rr.exact_chain_rank([i], D)}")
