"""Brute-force verifiers: matrix powers, grid search, Monte-Carlo rollouts.

Nothing here shares code with the closed forms it checks; that is the
point. power_limit iterates the update kernel, grid_best_response scans a
grid of self-weights through power_limit, opinion_rollout simulates the
averaging process on noisy measurements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AgentOutOfRange, NoConvergence
from .estimation import VarianceVector, estimation_costs
from .limits import LimitBranch, LimitMatrix, SelfConfidenceProfile, effective_update_matrix
from .network import InfluenceNetwork


@dataclass(frozen=True)
class OpinionRollout:
    """Monte-Carlo estimate of the limit estimation variances."""

    theta: float
    samples: int
    horizon: int
    seed: int
    empirical_variances: np.ndarray


def power_limit(
    net: InfluenceNetwork,
    z: SelfConfidenceProfile,
    tol: float = 1e-11,
    max_doublings: int = 64,
) -> LimitMatrix:
    """Limit of Q^t by repeated squaring, to entrywise Cauchy tolerance."""
    M = effective_update_matrix(net, z).Q.copy()
    for _ in range(max_doublings):
        M2 = M @ M
        if float(np.max(np.abs(M2 - M))) <= tol:
            branch = LimitBranch.ABSORPTION if z.stubborn else LimitBranch.CONSENSUS
            M2.setflags(write=False)
            return LimitMatrix(H=M2, branch=branch)
        M = M2
    raise NoConvergence(f"powers not Cauchy within {max_doublings} doublings at tol {tol:g}")


def grid_best_response(
    net: InfluenceNetwork,
    sigma2: VarianceVector,
    z: SelfConfidenceProfile,
    k: int,
    grid_step: float = 0.001,
) -> float:
    """Grid argmin of agent k's cost over z_k in {0, step, ...} + {1}.

    Ties go to the smallest grid value. Costs are evaluated through
    power_limit, independently of any closed form.
    """
    if not 0 <= k < net.n:
        raise AgentOutOfRange(f"agent {k} outside 0..{net.n - 1}")
    if grid_step <= 0.0:
        raise ValueError(f"grid_step must be positive, got {grid_step!r}")
    candidates = np.append(np.arange(0.0, 1.0, grid_step), 1.0)
    best_val = np.inf
    best_zk = 0.0
    zvec = z.z.copy()
    for cand in candidates:
        zvec[k] = cand
        H = power_limit(net, SelfConfidenceProfile(zvec))
        cost = float(estimation_costs(H, sigma2).upsilon[k])
        if cost < best_val:
            best_val = cost
            best_zk = float(cand)
    return best_zk


def opinion_rollout(
    net: InfluenceNetwork,
    z: SelfConfidenceProfile,
    sigma2: VarianceVector,
    theta: float = 0.0,
    samples: int = 100_000,
    horizon: int = 10_000,
    seed: int = 0,
) -> OpinionRollout:
    """Simulate the averaging of noisy measurements of theta.

    Each sample starts at x(0) = theta + xi with independent zero-mean
    Gaussian noise of the given variances and runs the update for
    ``horizon`` steps (applied as one propagated linear map, which is the
    same thing). Returns the per-agent empirical variance of x_i(T) - theta.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    Q = effective_update_matrix(net, z).Q
    prop = np.eye(net.n)
    for _ in range(horizon):
        prop = prop @ Q
    rng = np.random.default_rng(seed)
    xi = rng.normal(0.0, np.sqrt(sigma2.sigma2), size=(samples, net.n))
    deviations = (theta + xi) @ prop.T - theta
    ddof = 1 if samples > 1 else 0
    variances = deviations.var(axis=0, ddof=ddof)
    variances.setflags(write=False)
    return OpinionRollout(
        theta=float(theta),
        samples=int(samples),
        horizon=int(horizon),
        seed=int(seed),
        empirical_variances=variances,
    )
