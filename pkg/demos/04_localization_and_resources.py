"""
Fresh versus frozen disorder, and what the hardware costs
=========================================================
"""

# %%
import numpy as np

from fieldwalk import NoiseConfig, moments, resource_count, run_ensemble

# Fresh draws at every step diffuse (variance ~ N); one table of phases reused
# at every step acts like static disorder and the spread saturates.
ns = [50, 100, 200, 400]
for mode in ("fresh", "fixed"):
    var = [moments(run_ensemble(n, cfg=NoiseConfig(0.25, trials=50, master_seed=3, randomness=mode)).mean).variance
           for n in ns]
    slope = np.polyfit(np.log(ns), np.log(var), 1)[0]
    print(f"{mode:>5}: variances {[round(v) for v in var]}, log-log slope {slope:.2f}")

# %%
# The dynamic-line layout needs one T2 block per node: quadratic in N.
# Feeding beams back with acousto-optic modulators keeps it linear.
for n in (4, 10, 100, 1000):
    line, aom = resource_count(n, "line"), resource_count(n, "aom")
    print(f"N={n:5d}  line: {line.beam_splitters:7d} splitters {line.phase_shifters:7d} shifters | "
          f"aom: {aom.beam_splitters:5d} splitters {aom.aoms:5d} AOMs")
