"""Coined quantum walks on a line, simulated as interference of classical fields."""

__version__ = "0.1.0"

from .distribution import Distribution, PhotonDistribution, PositionDistribution
from .optics import (
    SYMMETRIC_T1,
    BeamSplitterParams,
    Direction,
    LineState,
    StepNoise,
    apply_t1,
    apply_t2,
    photon_distribution,
    propagate,
    scale_to_input,
)
from .coinwalk import (
    CoinWalkState,
    classical_distribution,
    coin_from_t1,
    init_coin,
    step,
    walk_distribution,
)
from .decoherence import (
    EnsembleResult,
    NoiseConfig,
    PhaseSharing,
    Randomness,
    run_ensemble,
    run_trial,
)
from .analysis import (
    Layout,
    Moments,
    ResourceCount,
    flatness,
    moments,
    poisson_photon_probability,
    resource_count,
    tv_distance,
)
