"""
Field-amplitude propagation through the dynamic-line interferometer.

A coherent (or any) input field enters one beam splitter ``T1`` and then
crosses a cascade of ``T2`` blocks, one per node of every dynamic line. Every
output mode carries a fixed complex fraction ``chi`` of the input amplitude,
so the whole network is described by a single-excitation amplitude vector.
The mean photon number reaching node ``k`` of line ``j`` is
``|chi(k, down)|**2 + |chi(k, side)|**2`` times the input mean photon number.

Layout
------
A :class:`LineState` stores two compact arrays of length ``j + 1``; slot ``i``
is node ``k = -j + 2 i``. A ``T2`` block at slot ``i`` sends its down output
to slot ``i + 1`` and its side output to slot ``i`` of the next line, so one
step is two slice assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from .distribution import Distribution, PhotonDistribution

__all__ = [
    "BeamSplitterParams",
    "Direction",
    "LineState",
    "StepNoise",
    "SYMMETRIC_T1",
    "apply_t1",
    "apply_t2",
    "propagate",
    "photon_distribution",
    "scale_to_input",
    "t2_matrix",
    "beam_splitter_matrix",
    "phase_shifter_matrix",
    "t2_matrix_composed",
]


class Direction(str, Enum):
    DOWN = "down"
    SIDE = "side"


@dataclass(frozen=True)
class BeamSplitterParams:
    """Mixing angle ``theta`` in [0, pi] and relative phase ``phi`` in (-pi, pi]."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not (-np.pi < self.phi <= np.pi):
            raise ValueError(f"phi must lie in (-pi, pi], got {self.phi!r}")


SYMMETRIC_T1 = BeamSplitterParams(np.pi / 2, -np.pi / 2)


@dataclass(frozen=True, eq=False)
class LineState:
    """
    Complex mode amplitudes incident on dynamic line ``j``.

    ``down[i]`` and ``side[i]`` belong to node ``k = -j + 2 i``. For ``j >= 1``
    node ``-j`` can only be reached sideward and node ``+j`` only downward;
    the forbidden edge slots must be exactly zero.
    """

    j: int
    down: np.ndarray
    side: np.ndarray

    def __post_init__(self):
        if self.j < 0:
            raise ValueError(f"line index must be non-negative, got {self.j}")
        down = np.asarray(self.down, dtype=complex)
        side = np.asarray(self.side, dtype=complex)
        n = self.j + 1
        if down.shape != (n,) or side.shape != (n,):
            raise ValueError(
                f"line {self.j} needs {n} slots per direction, "
                f"got {down.shape} and {side.shape}"
            )
        if self.j >= 1 and (down[0] != 0 or side[-1] != 0):
            raise ValueError(
                "edge nodes carry one mode only: no down mode at k=-j, no side mode at k=+j"
            )
        object.__setattr__(self, "down", down)
        object.__setattr__(self, "side", side)

    @classmethod
    def from_modes(cls, j: int, amps: Mapping[tuple, complex]) -> "LineState":
        """Build a state from ``{(k, direction): amplitude}``; missing modes are vacuum."""
        down = np.zeros(j + 1, dtype=complex)
        side = np.zeros(j + 1, dtype=complex)
        for (k, direction), a in amps.items():
            i = _slot(j, k)
            if Direction(direction) is Direction.DOWN:
                down[i] = a
            else:
                side[i] = a
        return cls(j, down, side)

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(-self.j, self.j + 1, 2)

    def amplitude(self, k: int, direction: Union[Direction, str]) -> complex:
        if abs(k) > self.j or (k - self.j) % 2:
            return 0j
        arr = self.down if Direction(direction) is Direction.DOWN else self.side
        return complex(arr[(k + self.j) // 2])

    def modes(self) -> dict[tuple[int, Direction], complex]:
        """All physically present modes, ordered by node then down before side."""
        out = {}
        for i, k in enumerate(self.nodes):
            k = int(k)
            if self.j == 0 or k != -self.j:
                out[(k, Direction.DOWN)] = complex(self.down[i])
            if self.j == 0 or k != self.j:
                out[(k, Direction.SIDE)] = complex(self.side[i])
        return out

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.down) ** 2) + np.sum(np.abs(self.side) ** 2))


def _slot(j: int, k: int) -> int:
    if abs(k) > j or (k - j) % 2:
        raise ValueError(f"node {k} does not exist on dynamic line {j}")
    return (k + j) // 2


@dataclass(frozen=True, eq=False)
class StepNoise:
    """
    Perturbation of one ``T2`` layer, line ``j`` to ``j + 1``.

    ``theta`` is a scalar or one angle per node of line ``j``. Phase arrays are
    in radians: ``before_*`` has ``j + 1`` entries (incident modes of line
    ``j``), ``after_*`` has ``j + 2`` (incident modes of line ``j + 1``).
    ``None`` means no shifter on that layer.
    """

    theta: Union[float, np.ndarray] = np.pi / 2
    before_down: Optional[np.ndarray] = None
    before_side: Optional[np.ndarray] = None
    after_down: Optional[np.ndarray] = None
    after_side: Optional[np.ndarray] = None


def t2_matrix(theta: float = np.pi / 2) -> np.ndarray:
    """
    Single-node ``T2`` map, rows ``(down_out, side_out)``, columns ``(down_in, side_in)``.

    At ``theta = pi/2`` this is the Hadamard coin ``[[1, 1], [1, -1]] / sqrt(2)``;
    its transmittivity is ``cos(theta/2)**2``.
    """
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, s], [s, -c]], dtype=complex)


def beam_splitter_matrix(theta: float, phi: float) -> np.ndarray:
    """
    One-photon matrix of ``exp(theta/2 (e^{i phi} a_s^+ a_d - e^{-i phi} a_d^+ a_s))``.

    Basis order ``(down, side)``; column ``m`` is the image of a photon in mode ``m``.
    """
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [[c, -np.exp(-1j * phi) * s], [np.exp(1j * phi) * s, c]], dtype=complex
    )


def phase_shifter_matrix(angle: float, direction: Union[Direction, str]) -> np.ndarray:
    """One-photon matrix of ``exp(i angle n_m)`` acting on mode ``m``."""
    d = np.ones(2, dtype=complex)
    d[0 if Direction(direction) is Direction.DOWN else 1] = np.exp(1j * angle)
    return np.diag(d)


def t2_matrix_composed(theta: float = np.pi / 2) -> np.ndarray:
    """
    ``T2`` built literally as side shifter (+pi/2), splitter ``(theta, pi)``,
    down shifter (-pi/2).

    Equals ``diag(-i, -1) @ t2_matrix(theta) @ diag(1, i)``. Since
    ``(-i)(1) == (-1)(i)`` the phases between successive layers are global, and
    a cascade of composed blocks after ``T1(theta, phi)`` gives the same photon
    numbers as the :func:`t2_matrix` cascade after ``T1(theta, phi + pi/2)``.
    """
    return (
        phase_shifter_matrix(-np.pi / 2, Direction.DOWN)
        @ beam_splitter_matrix(theta, np.pi)
        @ phase_shifter_matrix(np.pi / 2, Direction.SIDE)
    )


def apply_t1(params: BeamSplitterParams = SYMMETRIC_T1) -> LineState:
    """
    Split the input field into line 1.

    Returns ``chi(+1, down) = cos(theta/2)`` and
    ``chi(-1, side) = exp(i phi) sin(theta/2)``.
    """
    if not isinstance(params, BeamSplitterParams):
        params = BeamSplitterParams(*params)
    down = np.array([0.0, np.cos(params.theta / 2)], dtype=complex)
    side = np.array([np.exp(1j * params.phi) * np.sin(params.theta / 2), 0.0])
    return LineState(1, down, side)


def _t2_kernel(down, side, theta, bd=None, bs=None, ad=None, as_=None):
    if bd is not None:
        down = down * np.exp(1j * bd)
    if bs is not None:
        side = side * np.exp(1j * bs)
    c, s = np.cos(np.asarray(theta) / 2), np.sin(np.asarray(theta) / 2)
    n = down.shape[0]
    new_down = np.zeros(n + 1, dtype=complex)
    new_side = np.zeros(n + 1, dtype=complex)
    new_down[1:] = c * down + s * side
    new_side[:-1] = s * down - c * side
    if ad is not None:
        new_down *= np.exp(1j * ad)
    if as_ is not None:
        new_side *= np.exp(1j * as_)
    return new_down, new_side


def _node_thetas(j: int, theta_per_node) -> Union[float, np.ndarray]:
    if theta_per_node is None:
        return np.pi / 2
    if isinstance(theta_per_node, Mapping):
        thetas = np.full(j + 1, np.pi / 2)
        for k, t in theta_per_node.items():
            thetas[_slot(j, k)] = t
        return thetas
    thetas = np.asarray(theta_per_node, dtype=float)
    if thetas.ndim and thetas.shape != (j + 1,):
        raise ValueError(f"need {j + 1} node angles on line {j}, got {thetas.shape}")
    return thetas


def apply_t2(
    state: LineState,
    theta_per_node=None,
    phase_offsets: Optional[Mapping[tuple, float]] = None,
) -> LineState:
    """
    Advance ``state`` from line ``j`` to ``j + 1`` through one ``T2`` per node.

    Parameters
    ----------
    state : LineState
    theta_per_node : float, array of length ``j + 1``, or mapping ``k -> theta``, optional
        Splitter angles; unspecified nodes use ``pi/2``.
    phase_offsets : mapping ``(k, direction, layer) -> angle``, optional
        ``layer`` is ``"before"`` (``k`` on line ``j``) or ``"after"``
        (``k`` on line ``j + 1``). Each named mode is multiplied by
        ``exp(i angle)``.
    """
    if not isinstance(state, LineState):
        raise TypeError(f"expected LineState, got {type(state).__name__}")
    j = state.j
    thetas = _node_thetas(j, theta_per_node)
    layers = {
        ("before", Direction.DOWN): None,
        ("before", Direction.SIDE): None,
        ("after", Direction.DOWN): None,
        ("after", Direction.SIDE): None,
    }
    for (k, direction, layer), angle in (phase_offsets or {}).items():
        if layer not in ("before", "after"):
            raise ValueError(f"phase layer must be 'before' or 'after', got {layer!r}")
        line = j if layer == "before" else j + 1
        key = (layer, Direction(direction))
        if layers[key] is None:
            layers[key] = np.zeros(line + 1)
        layers[key][_slot(line, k)] = angle
    down, side = _t2_kernel(
        state.down,
        state.side,
        thetas,
        layers[("before", Direction.DOWN)],
        layers[("before", Direction.SIDE)],
        layers[("after", Direction.DOWN)],
        layers[("after", Direction.SIDE)],
    )
    return LineState(j + 1, down, side)


def propagate(
    n_steps: int,
    t1: BeamSplitterParams = SYMMETRIC_T1,
    noise: Optional[Iterable[StepNoise]] = None,
) -> LineState:
    """
    Run ``T1`` followed by ``n_steps - 1`` layers of ``T2``.

    ``noise``, if given, yields one :class:`StepNoise` per ``T2`` layer in
    order of increasing line index.
    """
    if int(n_steps) != n_steps or n_steps < 1:
        raise ValueError(f"n_steps must be a positive integer, got {n_steps!r}")
    n_steps = int(n_steps)
    state = apply_t1(t1)
    down, side = state.down, state.side
    if noise is None:
        for _ in range(1, n_steps):
            down, side = _t2_kernel(down, side, np.pi / 2)
        return LineState(n_steps, down, side)

    layers = iter(noise)
    for j in range(1, n_steps):
        try:
            sn = next(layers)
        except StopIteration:
            raise ValueError(
                f"noise realization ran out at line {j} of {n_steps}"
            ) from None
        down, side = _t2_kernel(
            down, side, sn.theta,
            sn.before_down, sn.before_side, sn.after_down, sn.after_side,
        )
    return LineState(n_steps, down, side)


def photon_distribution(state: LineState) -> PhotonDistribution:
    """Normalized mean photon number per node of the state's line."""
    values = np.zeros(2 * state.j + 1)
    values[::2] = np.abs(state.down) ** 2 + np.abs(state.side) ** 2
    return Distribution(state.j, values)


def scale_to_input(dist: Distribution, mean_photons: float) -> dict[int, float]:
    """Absolute mean photon numbers for an input with ``mean_photons`` (``|alpha|^2``)."""
    if mean_photons < 0:
        raise ValueError(f"mean photon number must be non-negative, got {mean_photons}")
    return {k: v * mean_photons for k, v in dist.as_dict().items()}
