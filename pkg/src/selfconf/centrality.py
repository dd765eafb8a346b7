"""Invariant distribution of the influence matrix (social power)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularSystem
from .network import InfluenceNetwork

#: residual tolerance on the fixed-point equation
FIXED_POINT_TOL = 1e-10


@dataclass(frozen=True)
class CentralityVector:
    """Probability vector pi with pi = P' pi, strictly positive entries."""

    pi: np.ndarray


def centrality(net: InfluenceNetwork) -> CentralityVector:
    """Solve for the unique invariant distribution of ``net.P``.

    Dense solve: one row of (I - P') is replaced by the all-ones row and
    the system is solved against the matching unit right-hand side.
    Irreducibility guarantees a unique positive solution, so any failure
    here is numerical, not a model case.
    """
    n = net.n
    M = np.eye(n) - net.P.T
    M[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"stationary solve failed: {exc}") from exc
    residual = float(np.max(np.abs(net.P.T @ pi - pi)))
    if residual > FIXED_POINT_TOL or np.any(pi <= 0.0):
        raise SingularSystem(f"stationary solve inaccurate (residual {residual:g})")
    pi.setflags(write=False)
    return CentralityVector(pi=pi)
