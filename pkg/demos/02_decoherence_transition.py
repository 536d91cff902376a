"""
From quantum to classical with random phase shifters
====================================================

Extra phase shifters before and after each T2 layer shift every mode by
2*pi*|l|, l ~ Normal(1, sigma_pp). Fifty trials are averaged at N = 200.

Run with ``--plot out.png`` to save the curves (needs matplotlib).
"""

# %%
import sys

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
classical = classical_distribution(N)
quantum = photon_distribution(propagate(N))

curves = {"quantum": quantum}
for sigma in (0.0125, 0.013, 0.13, 0.25):
    curves[f"sigma_pp={sigma}"] = run_ensemble(N, cfg=NoiseConfig(sigma, trials=50, master_seed=7)).mean

# %%
# Variance falls toward the classical value N as the phase noise grows, while
# a small amount of noise gives a flat plateau wider than the pure walk's peaks.
print(f"{'curve':>18} {'variance':>9} {'flatness':>9} {'TV->classical':>14}")
for name, dist in curves.items():
    print(f"{name:>18} {moments(dist).variance:9.1f} {flatness(dist, (-141, 141)):9.3f} "
          f"{tv_distance(dist, classical):14.4f}")

# %%
if "--plot" in sys.argv:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (lin, log) = plt.subplots(1, 2, figsize=(10, 4))
    for name, dist in curves.items():
        k = dist.occupied_nodes
        lin.plot(k, dist.values[k + N], label=name)
        log.semilogy(k, dist.values[k + N] + 1e-12, label=name)
    lin.set_xlabel("k")
    lin.set_ylabel("M(200, k)")
    log.set_xlabel("k")
    lin.legend(fontsize=7)
    fig.savefig(sys.argv[sys.argv.index("--plot") + 1], dpi=120)
