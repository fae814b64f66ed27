from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [0, 1] with ``n`` interior nodes and boundary nodes at 0 and 1."""

    n: int
    dt: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("grid needs at least one interior node")
        if not self.dt > 0:
            raise ValueError("dt must be positive")

    @classmethod
    def from_spacing(cls, dx: float, dt: float) -> "Grid1D":
        return cls(int(round(1.0 / dx)) - 1, dt)

    @property
    def dx(self) -> float:
        return 1.0 / (self.n + 1)

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n + 2) * self.dx

    def refined(self, space: int = 2, time: int = 1) -> "Grid1D":
        """Grid with dx divided by ``space`` and dt divided by ``time``."""
        return Grid1D(space * (self.n + 1) - 1, self.dt / time)


# (dx, dt) = (0.002, 0.001)
REFERENCE_GRID = Grid1D(499, 1e-3)
