"""Moments, distances, flatness and resource tallies for walk distributions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .distribution import Distribution

__all__ = [
    "Moments",
    "moments",
    "tv_distance",
    "flatness",
    "default_flat_region",
    "poisson_photon_probability",
    "Layout",
    "ResourceCount",
    "resource_count",
]

NORM_TOL = 1e-6


class Moments(NamedTuple):
    mean: float
    variance: float
    std: float


def _normalized(dist: Distribution) -> np.ndarray:
    total = math.fsum(dist.values)
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(f"distribution sums to {total!r}, not 1 within {NORM_TOL}")
    if np.any(dist.values < 0):
        raise ValueError("distribution has negative weights")
    return dist.values / total


def moments(dist: Distribution) -> Moments:
    """Mean, variance and standard deviation of the node index."""
    p = _normalized(dist)
    k = dist.nodes.astype(float)
    mean = math.fsum(p * k)
    var = math.fsum(p * (k - mean) ** 2)
    return Moments(mean, var, math.sqrt(var))


def tv_distance(p: Distribution, q: Distribution) -> float:
    """
    Total variation distance ``0.5 * sum |p(k) - q(k)|``.

    Distributions with different ``j`` of equal parity are compared on the wider
    node range; different parity means disjoint supports and is rejected.
    """
    if (p.j - q.j) % 2:
        raise ValueError(f"supports of j={p.j} and j={q.j} have different parity")
    pv, qv = _normalized(p), _normalized(q)
    j = max(p.j, q.j)
    pv = Distribution(p.j, pv).padded(j)
    qv = Distribution(q.j, qv).padded(j)
    return min(1.0, 0.5 * math.fsum(np.abs(pv - qv)))


def default_flat_region(n_steps: int) -> tuple[int, int]:
    """``[-ceil(N/sqrt 2), +ceil(N/sqrt 2)]``: the ballistic front of the walk."""
    edge = math.ceil(n_steps / math.sqrt(2))
    return -edge, edge


def flatness(dist: Distribution, region: Optional[Sequence[int]] = None) -> float:
    """
    Max-over-mean ratio on the reachable nodes inside ``region`` (inclusive).

    1 means perfectly flat. The region defaults to :func:`default_flat_region`.
    """
    lo, hi = default_flat_region(dist.j) if region is None else region
    k = dist.occupied_nodes
    inside = (k >= lo) & (k <= hi)
    if lo > hi or not inside.any():
        raise ValueError(f"region [{lo}, {hi}] contains no reachable node at j={dist.j}")
    vals = dist.values[k[inside] + dist.j]
    mean = vals.mean()
    if mean <= 0:
        raise ValueError(f"distribution vanishes on region [{lo}, {hi}]")
    return float(vals.max() / mean)


def poisson_photon_probability(mean_photons: float, n: int) -> float:
    """Probability of counting exactly ``n`` photons in a coherent state of mean ``mean_photons``."""
    if mean_photons < 0 or n < 0:
        raise ValueError("mean photon number and count must be non-negative")
    if mean_photons == 0:
        return 1.0 if n == 0 else 0.0
    return math.exp(-mean_photons + n * math.log(mean_photons) - math.lgamma(n + 1))


class Layout(str, Enum):
    DYNAMIC_LINE = "line"
    AOM_LOOP = "aom"


@dataclass(frozen=True)
class ResourceCount:
    layout: Layout
    n_steps: int
    beam_splitters: int
    phase_shifters: int
    aoms: int
    detectors: int

    def as_dict(self) -> dict:
        return {
            "layout": self.layout.value,
            "n_steps": self.n_steps,
            "beam_splitters": self.beam_splitters,
            "phase_shifters": self.phase_shifters,
            "aoms": self.aoms,
            "detectors": self.detectors,
        }


def resource_count(n_steps: int, layout: Layout | str) -> ResourceCount:
    """
    Optical elements needed for an ``n_steps`` walk.

    The dynamic-line layout places one ``T2`` block (one splitter, two phase
    shifters) on every node of lines ``1 .. N-1``, edge nodes included, after
    the single ``T1`` splitter, and a detector on each of the ``N + 1`` nodes of
    line ``N``. The AOM layout reuses one block per step: ``N`` splitters,
    ``2N`` shifters and ``2N`` AOMs, with ``2N + 1`` detectors.
    """
    if int(n_steps) != n_steps or n_steps < 1:
        raise ValueError(f"n_steps must be a positive integer, got {n_steps!r}")
    n = int(n_steps)
    layout = Layout(layout)
    if layout is Layout.DYNAMIC_LINE:
        blocks = (n - 1) * (n + 2) // 2  # sum_{j=1}^{N-1} (j + 1)
        return ResourceCount(layout, n, 1 + blocks, 2 * blocks, 0, n + 1)
    return ResourceCount(layout, n, n, 2 * n, 2 * n, 2 * n + 1)
