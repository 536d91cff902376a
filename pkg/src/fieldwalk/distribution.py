"""Per-node distributions on a line, shared by the optical and coined walks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

__all__ = ["Distribution", "PhotonDistribution", "PositionDistribution"]


@dataclass(frozen=True, eq=False)
class Distribution:
    """
    Non-negative weights over nodes ``k = -j .. j`` after ``j`` steps.

    ``values`` is dense with length ``2j + 1`` and index ``k + j``. Nodes whose
    parity differs from ``j`` are unreachable and hold exact zeros.
    """

    j: int
    values: np.ndarray

    def __post_init__(self):
        if self.j < 0:
            raise ValueError(f"step index must be non-negative, got {self.j}")
        values = np.asarray(self.values, dtype=float)
        if values.shape != (2 * self.j + 1,):
            raise ValueError(
                f"expected {2 * self.j + 1} values for j={self.j}, got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, j: int, mapping: Mapping[int, float]) -> "Distribution":
        values = np.zeros(2 * j + 1)
        for k, v in mapping.items():
            if abs(k) > j or (k - j) % 2:
                raise ValueError(f"node {k} is not reachable after {j} steps")
            values[k + j] = v
        return cls(j, values)

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(-self.j, self.j + 1)

    @property
    def occupied_nodes(self) -> np.ndarray:
        """Nodes with the parity of ``j``."""
        return np.arange(-self.j, self.j + 1, 2)

    def __getitem__(self, k: int) -> float:
        if abs(k) > self.j:
            return 0.0
        return float(self.values[k + self.j])

    def total(self) -> float:
        return float(np.sum(self.values))

    def as_dict(self) -> dict[int, float]:
        return {int(k): float(self.values[k + self.j]) for k in self.occupied_nodes}

    def padded(self, j: int) -> np.ndarray:
        """Values embedded in the wider node range ``-j .. j``."""
        if j < self.j or (j - self.j) % 2:
            raise ValueError(f"cannot embed a j={self.j} distribution into j={j}")
        out = np.zeros(2 * j + 1)
        off = j - self.j
        out[off:off + 2 * self.j + 1] = self.values
        return out

    def __repr__(self):
        return f"Distribution(j={self.j}, total={self.total():.12g})"


# The optical and coined walks produce the same kind of object; the names
# document which observable a function returns.
PhotonDistribution = Distribution
PositionDistribution = Distribution
