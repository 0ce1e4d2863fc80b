"""Uniformly sampled real-valued functions on an interval."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class GridFunction:
    """Real samples on a uniform grid over [lo, hi], endpoints included."""

    lo: float
    hi: float
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size < 2:
            raise ValueError("GridFunction needs a 1-d array with at least 2 samples")
        if not self.hi > self.lo:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def from_callable(cls, f, lo: float, hi: float, n: int) -> "GridFunction":
        x = np.linspace(lo, hi, n)
        return cls(lo, hi, np.asarray(f(x), dtype=float) * np.ones_like(x))

    @classmethod
    def zeros(cls, lo: float, hi: float, n: int) -> "GridFunction":
        return cls(lo, hi, np.zeros(n))

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    def interp(self, pts) -> np.ndarray:
        """Linear interpolation; exact at grid nodes."""
        return np.interp(pts, self.x, self.values)

    def integral(self) -> float:
        from .quadrature import definite_weights

        return float(definite_weights(self.n, self.h) @ self.values)

    def l2_norm(self) -> float:
        from .quadrature import definite_weights

        w = definite_weights(self.n, self.h)
        return float(np.sqrt(max(w @ self.values**2, 0.0)))

    def l2_distance(self, other: "GridFunction") -> float:
        if other.n != self.n or abs(other.lo - self.lo) > 1e-12 or abs(other.hi - self.hi) > 1e-12:
            raise ValueError("grids do not match")
        from .quadrature import definite_weights

        w = definite_weights(self.n, self.h)
        d = self.values - other.values
        return float(np.sqrt(max(w @ d**2, 0.0)))
