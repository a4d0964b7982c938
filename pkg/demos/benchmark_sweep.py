"""Small benchmark sweep over dataset families and sizes.

Writes a tidy CSV (same schema the `rankregret bench` subcommand emits)
that external tools can plot directly.
"""

import time

import rankregret as rr
from rankregret.datagen import GenSpec, generate

rows = ["algo,family,n,d,r,gamma,delta,m,seed,samples,time_ms,"
        "rank_regret,estimated_rank_regret"]
seed, samples = 1, 20_000

for family in ("independent", "anti-correlated"):
    for n in (200, 1000):
        D2 = generate(GenSpec(family, n, 2, seed=seed))
        t0 = time.perf_counter()
        res = rr.solve_rrm_2d(D2, 5)
        ms = (time.perf_counter() - t0) * 1000
        est = rr.estimate_rank_regret(res.selected_indices, D2, samples, seed + 1)
        rows.append(f"2d,{family},{n},2,5,,,,{seed},{samples},{ms:.2f},"
                    f"{res.rank_regret},{est.estimated_rank_regret}")

        D3 = generate(GenSpec(family, n, 3, seed=seed))
        params = rr.HdParams(r=5, gamma=4, m=2000, seed=seed)
        t0 = time.perf_counter()
        res = rr.solve_rrm_hd(D3, params)
        ms = (time.perf_counter() - t0) * 1000
        est = rr.estimate_rank_regret(res.selected_indices, D3, samples, seed + 1)
        rows.append(f"hd,{family},{n},3,5,4,0.03,2000,{seed},{samples},{ms:.2f},"
                    f"{res.rank_regret},{est.estimated_rank_regret}")

out = "\n".join(rows) + "\n"
print(out)
with open("bench_sweep.csv", "w", encoding="utf-8") as fh:
    fh.write(out)
print("written to bench_sweep.csv")
print('CLI equivalent: rankregret bench --algos 2d,hd --families '
      'independent,anti-correlated --ns 200,1000 --ds 2,3 --rs 5 --out bench.csv')
