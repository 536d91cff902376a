"""
Reference coined walk on a line and the classical binomial walk.

The coined walk is kept deliberately independent of :mod:`fieldwalk.optics`
(dense position arrays, explicit coin labels) so the two can check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import Distribution, PositionDistribution
from .optics import BeamSplitterParams

__all__ = [
    "CoinWalkState",
    "init_coin",
    "step",
    "walk_distribution",
    "classical_distribution",
    "coin_from_t1",
]


@dataclass(frozen=True, eq=False)
class CoinWalkState:
    """
    Amplitudes ``right[x + j]`` and ``left[x + j]`` for positions ``x = -j .. j``.

    Positions with the wrong parity hold zeros.
    """

    j: int
    right: np.ndarray
    left: np.ndarray

    def amplitude(self, x: int, coin: str) -> complex:
        if abs(x) > self.j:
            return 0j
        arr = self.right if coin.upper() == "R" else self.left
        return complex(arr[x + self.j])

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.right) ** 2 + np.abs(self.left) ** 2))


def init_coin(a_r: complex, a_l: complex) -> CoinWalkState:
    """Walker at the origin with coin ``a_r |R> + a_l |L>``."""
    norm = abs(a_r) ** 2 + abs(a_l) ** 2
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"coin state must be normalized, |a_R|^2 + |a_L|^2 = {norm!r}")
    return CoinWalkState(0, np.array([a_r], dtype=complex), np.array([a_l], dtype=complex))


def step(state: CoinWalkState) -> CoinWalkState:
    """Hadamard coin followed by the conditional shift, R to x+1 and L to x-1."""
    r, l = state.right, state.left
    n = r.shape[0] + 2
    right = np.zeros(n, dtype=complex)
    left = np.zeros(n, dtype=complex)
    right[2:] = (r + l) / math.sqrt(2)
    left[:-2] = (r - l) / math.sqrt(2)
    return CoinWalkState(state.j + 1, right, left)


def walk_distribution(n: int, initial: CoinWalkState) -> PositionDistribution:
    """Position probabilities after ``n`` further steps, marginalized over the coin."""
    if n < 0:
        raise ValueError(f"number of steps must be non-negative, got {n}")
    state = initial
    for _ in range(n):
        state = step(state)
    return Distribution(state.j, np.abs(state.right) ** 2 + np.abs(state.left) ** 2)


def classical_distribution(n: int) -> PositionDistribution:
    """Unbiased classical walk: ``C(n, (n + x)/2) / 2**n``."""
    if n < 0:
        raise ValueError(f"number of steps must be non-negative, got {n}")
    values = np.zeros(2 * n + 1)
    denom = 2**n
    for m in range(n + 1):
        # exact integer ratio, correctly rounded
        values[2 * m] = math.comb(n, m) / denom
    return Distribution(n, values)


def coin_from_t1(params: BeamSplitterParams) -> tuple[complex, complex]:
    """
    Initial coin whose first walk step reproduces the ``T1`` output.

    ``T1`` already places the field on line 1, so it plays the role of the first
    coin-and-shift step: the coin is the Hadamard preimage of
    ``(cos(theta/2), exp(i phi) sin(theta/2))``.
    """
    c = math.cos(params.theta / 2)
    s = complex(np.exp(1j * params.phi)) * math.sin(params.theta / 2)
    return (c + s) / math.sqrt(2), (c - s) / math.sqrt(2)
