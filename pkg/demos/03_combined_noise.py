"""
Phase noise plus imperfect splitters
====================================

Every T2 splitter gets theta = (pi/2)|m| with m ~ Normal(1, sigma_bs), on top
of weak phase noise.
"""

# %%
from fieldwalk import (
    NoiseConfig,
    classical_distribution,
    flatness,
    moments,
    photon_distribution,
    propagate,
    run_ensemble,
    tv_distance,
)

N = 200
quantum = photon_distribution(propagate(N))
classical = classical_distribution(N)

for sigma_bs in (0.0, 0.03, 0.07, 0.15, 0.3):
    res = run_ensemble(N, cfg=NoiseConfig(0.005, sigma_bs, trials=50, master_seed=1))
    d = res.mean
    print(f"sigma_bs={sigma_bs:<5} variance={moments(d).variance:8.1f} "
          f"flatness={flatness(d):6.3f} TV(quantum)={tv_distance(d, quantum):.3f} "
          f"TV(classical)={tv_distance(d, classical):.3f} max stderr={res.stderr.max():.2e}")

# %%
# The same ensemble from the command line, as CSV rows k,value,stderr:
#
#   fieldwalk decohere --steps 200 --sigma-pp 0.005 --sigma-bs 0.07 --trials 50 --seed 1
