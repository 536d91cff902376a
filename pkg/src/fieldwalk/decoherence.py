"""
Monte Carlo decoherence for the dynamic-line walk.

Two noise channels act on every ``T2`` layer:

* random phase shifters on each mode just before and just after the layer,
  shifting by ``2 pi |l|`` with ``l ~ Normal(1, sigma_pp)``;
* random splitter angles ``theta = (pi/2) |m|`` with ``m ~ Normal(1, sigma_bs)``,
  clamped to ``[0, pi]``.

Both channels are unitary, so every trial's distribution stays normalized.

Reproducibility
---------------
Trial ``t`` of an ensemble draws from ``PCG64(SeedSequence(master_seed,
spawn_key=(t,)))``. Within a step, draws are consumed as: before-layer phases
(node ascending, down before side), then node angles (node ascending), then
after-layer phases (node ascending, down before side). A channel whose sigma is
exactly zero is noise-free and consumes no draws. In ``fixed`` mode the same
three blocks are drawn once per trial over nodes ``-N .. N`` and reused at
every step.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from .distribution import Distribution, PhotonDistribution
from .optics import SYMMETRIC_T1, BeamSplitterParams, StepNoise, photon_distribution, propagate

__all__ = [
    "Randomness",
    "PhaseSharing",
    "NoiseConfig",
    "EnsembleResult",
    "trial_rng",
    "phase_from_draw",
    "theta_from_draw",
    "sample_phase_offset",
    "sample_theta",
    "noise_realization",
    "run_trial",
    "run_ensemble",
]


class Randomness(str, Enum):
    FRESH = "fresh"
    FIXED = "fixed"


class PhaseSharing(str, Enum):
    PER_MODE = "per-mode"
    PER_STEP = "per-step"


@dataclass(frozen=True)
class NoiseConfig:
    """
    Noise strengths and Monte Carlo settings.

    ``phase_sharing="per-mode"`` draws an independent shift for every mode of
    every layer. ``"per-step"`` draws one shift per layer and direction and
    applies it to all nodes of that line (a shift shared by both directions
    would be a global phase and do nothing).
    """

    sigma_pp: float = 0.0
    sigma_bs: float = 0.0
    trials: int = 50
    master_seed: int = 0
    randomness: Randomness = Randomness.FRESH
    phase_sharing: PhaseSharing = PhaseSharing.PER_MODE

    def __post_init__(self):
        if not self.sigma_pp >= 0:
            raise ValueError(f"sigma_pp must be >= 0, got {self.sigma_pp!r}")
        if not self.sigma_bs >= 0:
            raise ValueError(f"sigma_bs must be >= 0, got {self.sigma_bs!r}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if not (0 <= self.master_seed < 2**64):
            raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed!r}")
        object.__setattr__(self, "randomness", Randomness(self.randomness))
        object.__setattr__(self, "phase_sharing", PhaseSharing(self.phase_sharing))

    @property
    def noiseless(self) -> bool:
        return self.sigma_pp == 0 and self.sigma_bs == 0


@dataclass(frozen=True, eq=False)
class EnsembleResult:
    mean: PhotonDistribution
    stderr: np.ndarray  # dense, aligned with mean.values
    trials_used: int

    def stderr_at(self, k: int) -> float:
        j = self.mean.j
        return 0.0 if abs(k) > j else float(self.stderr[k + j])


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Independent generator for one trial, stable across runs and platforms."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(trial_index,))
    return np.random.Generator(np.random.PCG64(ss))


def phase_from_draw(l):
    return 2 * np.pi * np.abs(l)


def theta_from_draw(m):
    return np.clip(0.5 * np.pi * np.abs(m), 0.0, np.pi)


def sample_phase_offset(rng: np.random.Generator, sigma_pp: float, size=None):
    """Phase shift ``2 pi |l|`` with ``l ~ Normal(1, sigma_pp)``; not reduced mod 2 pi."""
    return phase_from_draw(rng.normal(1.0, sigma_pp, size))


def sample_theta(rng: np.random.Generator, sigma_bs: float, size=None):
    """Splitter angle ``(pi/2)|m|`` with ``m ~ Normal(1, sigma_bs)``, clamped to [0, pi]."""
    return theta_from_draw(rng.normal(1.0, sigma_bs, size))


def _draw_phases(rng, cfg: NoiseConfig, n_nodes: int):
    if cfg.sigma_pp == 0:
        return None, None
    if cfg.phase_sharing is PhaseSharing.PER_STEP:
        d, s = sample_phase_offset(rng, cfg.sigma_pp, 2)
        return np.full(n_nodes, d), np.full(n_nodes, s)
    block = sample_phase_offset(rng, cfg.sigma_pp, (n_nodes, 2))
    return block[:, 0], block[:, 1]


def _draw_thetas(rng, cfg: NoiseConfig, n_nodes: int):
    if cfg.sigma_bs == 0:
        return np.pi / 2
    return sample_theta(rng, cfg.sigma_bs, n_nodes)


def noise_realization(
    n_steps: int, cfg: NoiseConfig, rng: np.random.Generator
) -> Iterator[StepNoise]:
    """Yield the perturbation of each ``T2`` layer, lines ``1 .. n_steps - 1``."""
    if cfg.randomness is Randomness.FRESH:
        for j in range(1, n_steps):
            bd, bs = _draw_phases(rng, cfg, j + 1)
            theta = _draw_thetas(rng, cfg, j + 1)
            ad, as_ = _draw_phases(rng, cfg, j + 2)
            yield StepNoise(theta, bd, bs, ad, as_)
        return

    # fixed: tables over dense nodes -N..N, index k + N
    width = 2 * n_steps + 1
    bd, bs = _draw_phases(rng, cfg, width)
    theta = _draw_thetas(rng, cfg, width)
    ad, as_ = _draw_phases(rng, cfg, width)

    def take(table, line):
        if table is None or np.ndim(table) == 0:
            return table
        return table[n_steps - line:n_steps + line + 1:2]

    for j in range(1, n_steps):
        yield StepNoise(
            take(theta, j), take(bd, j), take(bs, j), take(ad, j + 1), take(as_, j + 1)
        )


def run_trial(
    n_steps: int,
    t1: BeamSplitterParams = SYMMETRIC_T1,
    cfg: NoiseConfig = NoiseConfig(),
    trial_index: int = 0,
) -> PhotonDistribution:
    """One noise realization; deterministic in ``(cfg.master_seed, trial_index)``."""
    if cfg.noiseless:
        return photon_distribution(propagate(n_steps, t1))
    rng = trial_rng(cfg.master_seed, trial_index)
    return photon_distribution(propagate(n_steps, t1, noise_realization(n_steps, cfg, rng)))


def _trial_values(args):
    n_steps, t1, cfg, t = args
    return run_trial(n_steps, t1, cfg, t).values


def run_ensemble(
    n_steps: int,
    t1: BeamSplitterParams = SYMMETRIC_T1,
    cfg: NoiseConfig = NoiseConfig(),
    workers: Optional[int] = 1,
) -> EnsembleResult:
    """
    Average ``cfg.trials`` independent trials.

    Trials may run in ``workers`` processes; the result does not depend on the
    schedule because trial seeds are fixed and the mean is an exactly rounded sum.
    """
    jobs = [(n_steps, t1, cfg, t) for t in range(cfg.trials)]
    if workers is not None and workers <= 1:
        rows = [_trial_values(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_trial_values, jobs, chunksize=max(1, len(jobs) // 16)))
    stack = np.vstack(rows)
    trials = stack.shape[0]
    mean = np.array([math.fsum(col) for col in stack.T]) / trials
    if trials > 1:
        dev = stack - mean
        var = np.array([math.fsum(col) for col in (dev * dev).T]) / (trials - 1)
        stderr = np.sqrt(var / trials)
    else:
        stderr = np.zeros_like(mean)
    return EnsembleResult(Distribution(n_steps, mean), stderr, trials)
