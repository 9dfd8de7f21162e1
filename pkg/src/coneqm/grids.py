"""Uniform radial grids shared by the quadrature and eigensolver code."""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadialGrid:
    """Uniform discretization of [r_min, r_max] with 0 < r_min < r_max.

    ``points`` counts both endpoints; ``spacing`` is (r_max - r_min)/(points-1).
    """

    r_min: float
    r_max: float
    points: int

    def __post_init__(self):
        if not isinstance(self.points, int) or isinstance(self.points, bool) \
                or self.points < 16:
            raise ValueError(f"points must be an integer >= 16, got {self.points!r}")
        for name in ("r_min", "r_max"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) \
                    or not math.isfinite(v):
                raise ValueError(f"{name} must be a finite real, got {v!r}")
        if not (0.0 < self.r_min < self.r_max):
            raise ValueError(
                f"need 0 < r_min < r_max, got r_min={self.r_min!r}, "
                f"r_max={self.r_max!r}"
            )

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.points - 1)

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.points)

    def refined(self) -> "RadialGrid":
        """Same interval with the spacing halved (2*points - 1 nodes)."""
        return RadialGrid(self.r_min, self.r_max, 2 * self.points - 1)

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.points, self.spacing)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w
