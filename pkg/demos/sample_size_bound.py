"""Coupon-collector sample counts for covering every cell of the up-facets.

Partitioning the d up-facets of the unit cube into cells of diameter
delta and sampling until every cell is hit gives a net of the direction
space; the required count explodes with the dimension.
"""

import rankregret as rr

print(f"{'c':>3} {'d':>3} {'eps':>6} {'samples':>15}")
for c in (1, 2):
    for d in (3, 4, 5):
        for eps in (0.1, 0.2):
            p = rr.NetBoundParams(c=c, d=d, epsilon_net=eps)
            print(f"{c:>3} {d:>3} {eps:>6} {rr.net_sample_bound(p):>15,}")

p = rr.NetBoundParams(c=1, d=4, epsilon_net=0.1)
print("\nderived quantities at c=1, d=4, eps=0.1:")
print("  cell diameter   :", round(p.delta_net, 6))
print("  facet subdivision:", round(p.facet_subdivision, 2))
print("  number of cells :", round(p.hypercube_count))
print("\ncompare: the solver's default Monte-Carlo sizes stay in the tens of")
print("thousands because coverage is only needed on the finite vector set.")
