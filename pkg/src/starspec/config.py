"""Problem configuration for the star-graph delay operator.

The graph has m equal edges meeting at one internal vertex.  Edge 1 runs
from the root vertex to the internal vertex; edges 2..m connect the
internal vertex to the remaining boundary vertices, each carrying a Robin
boundary condition y' + H_j y = 0 at its outer end.  The delay parameter
``a`` lies in [1, 2), so the delayed argument always reaches back through
the internal vertex onto edge 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class ProblemConfig:
    """Graph and operator parameters.

    m : number of edges (>= 2)
    a : delay parameter, 1 <= a < 2
    H : Robin coefficients H_2..H_m for the outer edges (length m-1),
        real, finite and pairwise distinct
    """

    m: int
    a: float
    H: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        from .errors import ConfigError

        if not isinstance(self.m, int) or self.m < 2:
            raise ConfigError(f"edge count m must be an integer >= 2, got {self.m!r}")
        if not (1.0 <= self.a < 2.0):
            raise ConfigError(f"delay parameter a must lie in [1, 2), got {self.a!r}")
        H = tuple(float(h) for h in self.H)
        object.__setattr__(self, "H", H)
        if len(H) != self.m - 1:
            raise ConfigError(
                f"expected {self.m - 1} Robin coefficients H_2..H_{self.m}, got {len(H)}"
            )
        for h in H:
            if not math.isfinite(h):
                raise ConfigError(f"Robin coefficients must be finite, got {h!r}")
        scale = 1.0 + max((abs(h) for h in H), default=0.0)
        for i in range(len(H)):
            for k in range(i + 1, len(H)):
                if abs(H[i] - H[k]) <= 1e-12 * scale:
                    raise ConfigError(
                        "Robin coefficients H must be pairwise distinct; "
                        f"H_{i + 2}={H[i]} and H_{k + 2}={H[k]} coincide "
                        "(equal coefficients make the edge potentials indistinguishable)"
                    )

    @property
    def edges(self) -> range:
        """Outer edge indices j = 2..m."""
        return range(2, self.m + 1)

    def H_of(self, j: int) -> float:
        """Robin coefficient of edge j (2 <= j <= m)."""
        if not 2 <= j <= self.m:
            raise IndexError(f"edge index {j} outside 2..{self.m}")
        return self.H[j - 2]

    @property
    def support_length(self) -> float:
        """Length 2-a of the interval carrying the potential information."""
        return 2.0 - self.a
