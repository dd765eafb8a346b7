"""Best responses, the Pareto ray, and equilibrium classification.

The strategic object is the per-agent choice of self-weight z_k given the
others. Three facts drive everything here:

* With no stubborn opponent, agent k's cost is smooth in z_k with a unique
  minimizer: clamp(1 - a pi_k sigma_k^2 / b, 0) where
  a = sum_{j != k} pi_j / (1 - z_j) and
  b = sum_{j != k} pi_j^2 sigma_j^2 / (1 - z_j)^2.
* With a stubborn opponent present, agent k's cost is a constant c on the
  whole half-open interval [0, 1) and jumps to sigma_k^2 at z_k = 1, so the
  best response is an interval decided by comparing c against sigma_k^2.
* The profiles that are simultaneously Pareto optimal and strict Nash
  equilibria form one ray: z = 1 - alpha d with d_i = pi_i sigma_i^2 and
  0 < alpha <= alpha_max = 1 / max_i d_i.

Agent ids are 0-based everywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .centrality import CentralityVector
from .errors import AgentOutOfRange, DimensionMismatch
from .estimation import VarianceVector, estimation_costs
from .limits import SelfConfidenceProfile, limit_matrix
from .network import InfluenceNetwork, is_directed_ring, restricted_graph

#: absolute tolerance for cost comparisons (tie band of interval responses)
COST_TIE_TOL = 1e-9
#: sup-norm tolerance for accepting a profile as a ray member
RAY_TOL = 1e-9


class BestResponseKind(enum.Enum):
    SINGLETON = "singleton"
    HALF_OPEN_INTERVAL = "half_open_interval"  # [0, 1)
    FULL_INTERVAL = "full_interval"            # [0, 1]
    STUBBORN_ONLY = "stubborn_only"            # {1}


@dataclass(frozen=True)
class BestResponseResult:
    """Best-response set of one agent.

    value is set only for SINGLETON; constant_cost is set only for the
    interval kinds (the cost shared by every point of [0, 1)).
    """

    kind: BestResponseKind
    value: float | None = None
    constant_cost: float | None = None


@dataclass(frozen=True)
class ParetoRay:
    """The ray {1 - alpha * direction : 0 < alpha <= alpha_max}."""

    direction: np.ndarray
    alpha_max: float

    def profile_at(self, alpha: float) -> SelfConfidenceProfile:
        """Profile at ray coordinate alpha in (0, alpha_max]."""
        z = 1.0 - alpha * self.direction
        # the endpoint hits 0 only up to float rounding
        z[np.abs(z) < 1e-12] = 0.0
        return SelfConfidenceProfile(z)


class EquilibriumClass(enum.Enum):
    STRICT_NASH = "strict_nash"
    NON_STRICT_NASH = "non_strict_nash"
    NOT_NASH = "not_nash"


@dataclass(frozen=True)
class StructureChecks:
    """Structural facts about the stubborn set, recorded for cross-checking.

    At any non-strict equilibrium the theory requires: at least two stubborn
    agents, equal variances across them, and a directed-ring restricted
    graph. The classifier decides by direct cost comparisons and records
    these checks independently, so a bug in either layer surfaces.
    """

    stubborn_count: int
    variances_equal: bool | None
    restricted_ring: bool | None


@dataclass(frozen=True)
class EquilibriumReport:
    classification: EquilibriumClass
    fitted_alpha: float | None
    deviating_agent: int | None
    deviation_value: float | None
    structure_checks: StructureChecks


def _check_pair(pi: CentralityVector, sigma2: VarianceVector) -> None:
    if pi.pi.size != sigma2.n:
        raise DimensionMismatch(f"centrality has {pi.pi.size} entries, variances {sigma2.n}")


def _interior_singleton(
    pi: np.ndarray, sigma2: np.ndarray, z: np.ndarray, k: int
) -> float:
    others = np.arange(z.size) != k
    y = 1.0 / (1.0 - z[others])
    a = float(np.sum(pi[others] * y))
    b = float(np.sum((pi[others] * y) ** 2 * sigma2[others]))
    return max(0.0, 1.0 - a * pi[k] * sigma2[k] / b)


def _constant_cost(
    net: InfluenceNetwork,
    pi: CentralityVector,
    sigma2: VarianceVector,
    z: np.ndarray,
    k: int,
) -> float:
    # cost of agent k anywhere on [0, 1); evaluated at z_k = 0
    z0 = z.copy()
    z0[k] = 0.0
    H = limit_matrix(net, pi, SelfConfidenceProfile(z0))
    return float(estimation_costs(H, sigma2).upsilon[k])


def best_response(
    net: InfluenceNetwork,
    pi: CentralityVector,
    sigma2: VarianceVector,
    z: SelfConfidenceProfile,
    k: int,
) -> BestResponseResult:
    """Best-response set of agent k against z_{-k} (z_k itself is ignored)."""
    _check_pair(pi, sigma2)
    if z.n != net.n or sigma2.n != net.n:
        raise DimensionMismatch(f"inputs disagree on n: {net.n}, {z.n}, {sigma2.n}")
    if not 0 <= k < net.n:
        raise AgentOutOfRange(f"agent {k} outside 0..{net.n - 1}")
    stubborn_others = [s for s in z.stubborn if s != k]
    if not stubborn_others:
        value = _interior_singleton(pi.pi, sigma2.sigma2, z.z, k)
        return BestResponseResult(kind=BestResponseKind.SINGLETON, value=value)

    c = _constant_cost(net, pi, sigma2, z.z, k)
    sk2 = float(sigma2.sigma2[k])
    if c < sk2 - COST_TIE_TOL:
        kind = BestResponseKind.HALF_OPEN_INTERVAL
    elif c > sk2 + COST_TIE_TOL:
        kind = BestResponseKind.STUBBORN_ONLY
    else:
        kind = BestResponseKind.FULL_INTERVAL
    return BestResponseResult(kind=kind, constant_cost=c)


def pareto_set(pi: CentralityVector, sigma2: VarianceVector) -> ParetoRay:
    """Direction d = pi * sigma2 (entrywise) and maximal scale 1 / max d."""
    _check_pair(pi, sigma2)
    d = pi.pi * sigma2.sigma2
    d.setflags(write=False)
    return ParetoRay(direction=d, alpha_max=float(1.0 / d.max()))


def ray_membership(
    ray: ParetoRay, z: SelfConfidenceProfile, tol: float = RAY_TOL
) -> tuple[bool, float | None]:
    """Test 1 - z = alpha * d for a common alpha in (0, alpha_max].

    The fitted alpha is the mean of the per-agent ratios (1 - z_i) / d_i;
    membership holds when the sup-norm residual at that alpha is within
    tol and alpha lands in the valid range (with tol slack at the top so
    the float-constructed endpoint is accepted).
    """
    if ray.direction.size != z.n:
        raise DimensionMismatch(f"ray has {ray.direction.size} entries, profile {z.n}")
    gaps = 1.0 - z.z
    alpha_hat = float(np.mean(gaps / ray.direction))
    if alpha_hat <= 0.0:
        return False, None
    residual = float(np.max(np.abs(gaps - alpha_hat * ray.direction)))
    if residual > tol or alpha_hat * float(ray.direction.max()) > 1.0 + tol:
        return False, None
    return True, alpha_hat


def _structure_checks(net: InfluenceNetwork, sigma2: np.ndarray, stubborn: tuple[int, ...]) -> StructureChecks:
    if not stubborn:
        return StructureChecks(stubborn_count=0, variances_equal=None, restricted_ring=None)
    s = sigma2[list(stubborn)]
    equal = bool(s.max() - s.min() <= 1e-12 * max(1.0, float(s.max())))
    ring = is_directed_ring(restricted_graph(net, stubborn))
    return StructureChecks(stubborn_count=len(stubborn), variances_equal=equal, restricted_ring=ring)


def classify_equilibrium(
    net: InfluenceNetwork,
    pi: CentralityVector,
    sigma2: VarianceVector,
    z: SelfConfidenceProfile,
    *,
    ray_tol: float = RAY_TOL,
    cost_tol: float = COST_TIE_TOL,
) -> EquilibriumReport:
    """Classify a profile as StrictNash, NonStrictNash, or NotNash.

    Decision procedure:

    * No stubborn agent: strict equilibria are exactly the ray members;
      otherwise the agent whose singleton best response moves farthest
      from its current z_i witnesses NotNash.
    * One stubborn agent: never an equilibrium; the stubborn agent's
      singleton best response against the (interior) rest is the witness.
    * Two or more stubborn agents: a stubborn agent j gains by leaving the
      boundary iff its constant interior cost is below sigma_j^2; a
      non-stubborn agent i gains only by turning stubborn, iff sigma_i^2
      is below its current cost. If nobody gains, the profile is a
      non-strict equilibrium (interval best responses preclude strictness).
    """
    _check_pair(pi, sigma2)
    if z.n != net.n or sigma2.n != net.n:
        raise DimensionMismatch(f"inputs disagree on n: {net.n}, {z.n}, {sigma2.n}")
    stubborn = z.stubborn
    checks = _structure_checks(net, sigma2.sigma2, stubborn)

    if not stubborn:
        ray = pareto_set(pi, sigma2)
        member, alpha_hat = ray_membership(ray, z, tol=ray_tol)
        if member:
            return EquilibriumReport(
                classification=EquilibriumClass.STRICT_NASH,
                fitted_alpha=alpha_hat,
                deviating_agent=None,
                deviation_value=None,
                structure_checks=checks,
            )
        brs = np.array([
            _interior_singleton(pi.pi, sigma2.sigma2, z.z, k) for k in range(net.n)
        ])
        witness = int(np.argmax(np.abs(brs - z.z)))
        return EquilibriumReport(
            classification=EquilibriumClass.NOT_NASH,
            fitted_alpha=None,
            deviating_agent=witness,
            deviation_value=float(brs[witness]),
            structure_checks=checks,
        )

    if len(stubborn) == 1:
        s = stubborn[0]
        value = _interior_singleton(pi.pi, sigma2.sigma2, z.z, s)
        return EquilibriumReport(
            classification=EquilibriumClass.NOT_NASH,
            fitted_alpha=None,
            deviating_agent=s,
            deviation_value=value,
            structure_checks=checks,
        )

    # |S| >= 2: direct cost comparisons for both agent groups
    upsilon = estimation_costs(limit_matrix(net, pi, z), sigma2).upsilon
    candidates: list[tuple[float, int, float]] = []  # (improvement, agent, new z)
    for j in stubborn:
        c = _constant_cost(net, pi, sigma2, z.z, j)
        sj2 = float(sigma2.sigma2[j])
        if c < sj2 - cost_tol:
            candidates.append((sj2 - c, j, 0.0))
    stubborn_set = set(stubborn)
    for i in range(net.n):
        if i in stubborn_set:
            continue
        si2 = float(sigma2.sigma2[i])
        if si2 < float(upsilon[i]) - cost_tol:
            candidates.append((float(upsilon[i]) - si2, i, 1.0))
    if candidates:
        candidates.sort(key=lambda t: (-t[0], t[1]))
        _, witness, new_z = candidates[0]
        return EquilibriumReport(
            classification=EquilibriumClass.NOT_NASH,
            fitted_alpha=None,
            deviating_agent=witness,
            deviation_value=new_z,
            structure_checks=checks,
        )
    return EquilibriumReport(
        classification=EquilibriumClass.NON_STRICT_NASH,
        fitted_alpha=None,
        deviating_agent=None,
        deviation_value=None,
        structure_checks=checks,
    )
