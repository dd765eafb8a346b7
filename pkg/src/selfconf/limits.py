"""Limit opinions for a self-confidence profile.

Opinions follow x(t+1) = ((I - [z])P + [z]) x(t), so x(t) -> H(z) x(0).
With no stubborn agent (every z_i < 1) the limit is a consensus whose
weights are the rescaled centralities pi_j / ((1 - z_j) gamma(z)). With
stubborn agents the chain is absorbing and H collects the absorption
probabilities; columns outside the stubborn set vanish.

Stubbornness is exact equality z_i == 1.0. Literals that round to 1.0
(1 - 1e-17 does, 1 - 1e-16 does not) count as stubborn; 1 - 1e-12 is not.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .centrality import CentralityVector
from .errors import DimensionMismatch, InvalidProfile, SingularSystem, StubbornPresent
from .network import InfluenceNetwork


@dataclass(frozen=True)
class SelfConfidenceProfile:
    """Vector z in [0, 1]^n of self-weights; z_i == 1 marks a stubborn agent."""

    z: np.ndarray

    def __post_init__(self):
        z = np.array(self.z, dtype=float)
        if z.ndim != 1 or z.size == 0:
            raise InvalidProfile(f"profile must be a nonempty vector, got shape {z.shape}")
        if np.any(z < 0.0) or np.any(z > 1.0):
            i = int(np.flatnonzero((z < 0.0) | (z > 1.0))[0])
            raise InvalidProfile(f"z[{i}] = {z[i]!r} outside [0, 1]")
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.z.size

    @property
    def stubborn(self) -> tuple[int, ...]:
        """Indices with z_i exactly 1."""
        return tuple(int(i) for i in np.flatnonzero(self.z == 1.0))


class LimitBranch(enum.Enum):
    CONSENSUS = "consensus"
    ABSORPTION = "absorption"


@dataclass(frozen=True)
class EffectiveUpdateMatrix:
    """Row-stochastic update kernel Q = (I - [z])P + [z]."""

    Q: np.ndarray


@dataclass(frozen=True)
class LimitMatrix:
    """Row-stochastic map H from initial opinions to limit opinions."""

    H: np.ndarray
    branch: LimitBranch


def _check_dims(net: InfluenceNetwork, profile: SelfConfidenceProfile) -> None:
    if profile.n != net.n:
        raise DimensionMismatch(f"profile has {profile.n} entries, network has {net.n}")


def effective_update_matrix(
    net: InfluenceNetwork, profile: SelfConfidenceProfile
) -> EffectiveUpdateMatrix:
    """Blend the influence matrix with self-weights: Q_ii = z_i, Q_ij = (1-z_i)P_ij."""
    _check_dims(net, profile)
    z = profile.z
    Q = (1.0 - z)[:, None] * net.P + np.diag(z)
    Q.setflags(write=False)
    return EffectiveUpdateMatrix(Q=Q)


def gamma(pi: CentralityVector, profile: SelfConfidenceProfile) -> float:
    """Normalizer sum_i pi_i / (1 - z_i); defined only without stubborn agents."""
    if pi.pi.size != profile.n:
        raise DimensionMismatch(f"centrality has {pi.pi.size} entries, profile {profile.n}")
    if profile.stubborn:
        raise StubbornPresent(f"gamma undefined: stubborn agents {profile.stubborn}")
    return float(np.sum(pi.pi / (1.0 - profile.z)))


def limit_matrix(
    net: InfluenceNetwork, pi: CentralityVector, profile: SelfConfidenceProfile
) -> LimitMatrix:
    """Limit opinion map H(z) for any profile.

    Consensus branch (no stubborn agents): every row equals
    pi_j / ((1 - z_j) gamma(z)); built by broadcast, never by inversion.
    Absorption branch: stubborn rows are unit vectors, transient rows are
    absorption probabilities solved from (I - Q_TT) X = Q_TS.
    """
    _check_dims(net, profile)
    if pi.pi.size != net.n:
        raise DimensionMismatch(f"centrality has {pi.pi.size} entries, network has {net.n}")
    n = net.n
    z = profile.z
    stubborn = profile.stubborn

    if not stubborn:
        weights = pi.pi / (1.0 - z)
        row = weights / weights.sum()
        H = np.tile(row, (n, 1))
        H.setflags(write=False)
        return LimitMatrix(H=H, branch=LimitBranch.CONSENSUS)

    S = list(stubborn)
    T = [i for i in range(n) if z[i] < 1.0]
    H = np.zeros((n, n))
    for s in S:
        H[s, s] = 1.0
    if T:
        Q = effective_update_matrix(net, profile).Q
        Q_TT = Q[np.ix_(T, T)]
        Q_TS = Q[np.ix_(T, S)]
        try:
            X = np.linalg.solve(np.eye(len(T)) - Q_TT, Q_TS)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(f"absorption solve failed: {exc}") from exc
        H[np.ix_(T, S)] = X
    H.setflags(write=False)
    return LimitMatrix(H=H, branch=LimitBranch.ABSORPTION)
