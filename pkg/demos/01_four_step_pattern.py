"""
The four-step interference pattern
==================================

A coherent state enters the first beam splitter and crosses three layers of
T2 blocks. Every output mode carries a fixed fraction of the input amplitude.
"""

# %%
import math

import numpy as np

from fieldwalk import (
    SYMMETRIC_T1,
    coin_from_t1,
    init_coin,
    photon_distribution,
    poisson_photon_probability,
    propagate,
    scale_to_input,
    walk_distribution,
)

state = propagate(4, SYMMETRIC_T1)
for (k, direction), chi in state.modes().items():
    print(f"k={k:+d} {direction.value:>4}  chi={chi.real:+.4f}{chi.imag:+.4f}i  |chi|^2*16={16 * abs(chi)**2:.3f}")

# %%
# Summing the two modes that meet at each detector gives the normalized
# mean photon number. It matches the single-walker coined walk exactly.
m4 = photon_distribution(state)
print(m4.as_dict())

coin = init_coin(*coin_from_t1(SYMMETRIC_T1))
for n in (4, 5, 6):
    optical = photon_distribution(propagate(n)).values
    coined = walk_distribution(n, coin).values
    print(n, "max difference to the coined walk:", np.max(np.abs(optical - coined)))

# %%
# For an input |alpha|^2 the detector counts simply scale.
print(scale_to_input(m4, 1.0))
print(scale_to_input(m4, 4.0))

# %%
# A weak coherent state with alpha = 1 contains exactly one photon with probability:
print(f"{poisson_photon_probability(1.0, 1):.4f}", "vs e^-1 =", f"{math.exp(-1):.4f}")
