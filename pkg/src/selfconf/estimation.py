"""Asymptotic estimation costs and the cooperative optimum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonpositiveVariance
from .limits import LimitMatrix


@dataclass(frozen=True)
class VarianceVector:
    """Strictly positive measurement variances, one per agent."""

    sigma2: np.ndarray

    def __post_init__(self):
        s = np.array(self.sigma2, dtype=float)
        if s.ndim != 1 or s.size == 0:
            raise NonpositiveVariance(f"variances must be a nonempty vector, got shape {s.shape}")
        if np.any(s <= 0.0):
            i = int(np.flatnonzero(s <= 0.0)[0])
            raise NonpositiveVariance(f"sigma2[{i}] = {s[i]!r} must be > 0")
        s.setflags(write=False)
        object.__setattr__(self, "sigma2", s)

    @property
    def n(self) -> int:
        return self.sigma2.size


@dataclass(frozen=True)
class CostVector:
    """Per-agent limit estimation variances."""

    upsilon: np.ndarray


@dataclass(frozen=True)
class OptimalAggregate:
    """Minimum-variance aggregation weights and the cost they achieve."""

    mu_star: np.ndarray
    cost_floor: float


def estimation_costs(H: LimitMatrix, sigma2: VarianceVector) -> CostVector:
    """Cost of each agent's limit estimate: upsilon_i = sum_j H_ij^2 sigma_j^2."""
    if H.H.shape[1] != sigma2.n:
        raise DimensionMismatch(f"limit map is {H.H.shape}, variances have {sigma2.n} entries")
    upsilon = (H.H ** 2) @ sigma2.sigma2
    upsilon.setflags(write=False)
    return CostVector(upsilon=upsilon)


def optimal_weights(sigma2: VarianceVector) -> OptimalAggregate:
    """Weights minimizing the variance of a convex combination of measurements.

    mu*_i is proportional to 1/sigma_i^2; the minimum value is
    1 / sum_j sigma_j^{-2}, the floor no profile can beat.
    """
    w = 1.0 / sigma2.sigma2
    total = float(w.sum())
    mu = w / total
    mu.setflags(write=False)
    return OptimalAggregate(mu_star=mu, cost_floor=1.0 / total)
