"""Cost gradient and the self-confidence adaptation flow.

In the interior (no stubborn agent) all agents share one limit-estimate
variance V = B / A^2, where, with openness y_i = 1 / (1 - z_i),
A = sum_j pi_j y_j and B = sum_j pi_j^2 sigma_j^2 y_j^2. Two derivatives
of V appear below and must not be confused:

* :func:`cost_gradient` returns dV/dz_i = y_i^2 * dV/dy_i, the slope of
  agent i's cost in her own self-weight.
* the adaptation flow moves each agent against the openness slope,

      dz_i/dt = -z_i * dV/dy_i = -z_i (1 - z_i)^2 * dV/dz_i.

  The velocity vanishes linearly at z_i = 0 (that boundary is absorbing,
  exactly, in the integrator too) and quadratically toward z_i = 1, which
  keeps the fixed-step scheme stable next to the upper boundary.

Stationary points of the flow with all z_i > 0 are exactly the members of
the Pareto/strict-Nash ray, where A * pi_i sigma_i^2 * y_i = B for all i.

Integration is classical fixed-step RK4 with a stop test on
max_i |dz_i/dt|; the hot loop is numba-compiled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .centrality import CentralityVector
from .errors import DimensionMismatch, NonInteriorStart, StepTooLarge, StubbornPresent
from .estimation import VarianceVector
from .limits import SelfConfidenceProfile
from .network import InfluenceNetwork

_CHUNK_STEPS = 2_000_000


@dataclass(frozen=True)
class GradientTerms:
    """Shared sums A, B and the openness vector y at a profile."""

    A: float
    B: float
    y: np.ndarray


@dataclass(frozen=True)
class SolverConfig:
    """Fixed-step integrator settings.

    step: time step h.
    t_max: integration horizon.
    stop_tol: stop once max_i |dz_i/dt| falls to this level.
    floor: guard distance from 1; z is clamped to [0, 1 - floor].
    """

    step: float = 0.01
    t_max: float = 1e7
    stop_tol: float = 1e-10
    floor: float = 1e-12

    def __post_init__(self):
        if self.step <= 0.0 or self.t_max <= 0.0 or self.stop_tol <= 0.0:
            raise ValueError("step, t_max, stop_tol must be positive")
        if not 0.0 < self.floor < 1.0:
            raise ValueError(f"floor must lie in (0, 1), got {self.floor!r}")


@dataclass(frozen=True)
class TrajectoryRecord:
    """Sampled adaptation trajectory plus its terminus.

    profiles[k] is z at times[k]; grad_norms[k] is max_i |dz_i/dt| there.
    The last sample is always the terminus. converged is True when the
    stop tolerance fired before the horizon ran out.
    """

    times: np.ndarray
    profiles: np.ndarray
    grad_norms: np.ndarray
    steady: SelfConfidenceProfile
    fitted_alpha: float
    alpha_spread: float
    converged: bool


def _check_dims(net: InfluenceNetwork, pi: CentralityVector, sigma2: VarianceVector) -> None:
    if pi.pi.size != net.n or sigma2.n != net.n:
        raise DimensionMismatch(f"inputs disagree on n: {net.n}, {pi.pi.size}, {sigma2.n}")


def gradient_terms(
    pi: CentralityVector, sigma2: VarianceVector, z: SelfConfidenceProfile
) -> GradientTerms:
    """A, B, y at an interior profile."""
    if pi.pi.size != sigma2.n or sigma2.n != z.n:
        raise DimensionMismatch(f"inputs disagree on n: {pi.pi.size}, {sigma2.n}, {z.n}")
    if z.stubborn:
        raise StubbornPresent(f"interior quantities undefined: stubborn agents {z.stubborn}")
    y = 1.0 / (1.0 - z.z)
    A = float(np.sum(pi.pi * y))
    B = float(np.sum((pi.pi * y) ** 2 * sigma2.sigma2))
    y.setflags(write=False)
    return GradientTerms(A=A, B=B, y=y)


def cost_gradient(
    pi: CentralityVector, sigma2: VarianceVector, z: SelfConfidenceProfile
) -> np.ndarray:
    """Per-agent slope of the limit cost in the own self-weight, dV/dz_i."""
    terms = gradient_terms(pi, sigma2, z)
    y = terms.y
    dv_dy = 2.0 * pi.pi * (terms.A * pi.pi * sigma2.sigma2 * y - terms.B) / terms.A**3
    g = y**2 * dv_dy
    g.setflags(write=False)
    return g


def adaptation_velocity(
    pi: CentralityVector, sigma2: VarianceVector, z: SelfConfidenceProfile
) -> np.ndarray:
    """Right-hand side of the adaptation flow, -z_i * dV/dy_i."""
    terms = gradient_terms(pi, sigma2, z)
    y = terms.y
    dv_dy = 2.0 * pi.pi * (terms.A * pi.pi * sigma2.sigma2 * y - terms.B) / terms.A**3
    v = -z.z * dv_dy
    v.setflags(write=False)
    return v


def fit_alpha(
    pi: CentralityVector, sigma2: VarianceVector, z: SelfConfidenceProfile
) -> tuple[float, float]:
    """Fit z = 1 - alpha * (pi sigma^2): mean-ratio alpha and relative spread."""
    if pi.pi.size != sigma2.n or sigma2.n != z.n:
        raise DimensionMismatch(f"inputs disagree on n: {pi.pi.size}, {sigma2.n}, {z.n}")
    if z.stubborn:
        raise StubbornPresent(f"fit undefined: stubborn agents {z.stubborn}")
    ratios = (1.0 - z.z) / (pi.pi * sigma2.sigma2)
    alpha_hat = float(np.mean(ratios))
    spread = float((ratios.max() - ratios.min()) / alpha_hat)
    return alpha_hat, spread


@njit(cache=True)
def _velocity_nb(z, pi, d, out):
    n = z.shape[0]
    A = 0.0
    B = 0.0
    for i in range(n):
        y = 1.0 / (1.0 - z[i])
        A += pi[i] * y
        B += pi[i] * d[i] * y * y
    A3 = A * A * A
    for i in range(n):
        y = 1.0 / (1.0 - z[i])
        out[i] = -z[i] * 2.0 * pi[i] * (A * d[i] * y - B) / A3


@njit(cache=True)
def _velocity_max_nb(z, pi, d):
    out = np.empty(z.shape[0])
    _velocity_nb(z, pi, d, out)
    gmax = 0.0
    for i in range(out.shape[0]):
        a = abs(out[i])
        if a > gmax:
            gmax = a
    return gmax


@njit(cache=True)
def _stage_nb(z, k, scale, stage, guard):
    # stage = z + scale * k; stages must stay inside [-guard, 1) to be evaluable
    for i in range(z.shape[0]):
        s = z[i] + scale * k[i]
        if s < -guard or s >= 1.0:
            return False
        stage[i] = s
    return True


@njit(cache=True)
def _rk4_chunk_nb(z, pi, d, h, nsteps, stop_tol, guard, every, step_offset,
                  t_idx, zbuf, gbuf):
    n = z.shape[0]
    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    stage = np.empty(n)
    nrec = 0
    ceil = 1.0 - guard
    for local in range(nsteps):
        _velocity_nb(z, pi, d, k1)
        gmax = 0.0
        for i in range(n):
            a = abs(k1[i])
            if a > gmax:
                gmax = a
        if gmax <= stop_tol:
            return local, nrec, 1
        gstep = step_offset + local
        if gstep % every == 0:
            t_idx[nrec] = gstep
            for i in range(n):
                zbuf[nrec, i] = z[i]
            gbuf[nrec] = gmax
            nrec += 1
        if not _stage_nb(z, k1, 0.5 * h, stage, guard):
            return local, nrec, 2
        _velocity_nb(stage, pi, d, k2)
        if not _stage_nb(z, k2, 0.5 * h, stage, guard):
            return local, nrec, 2
        _velocity_nb(stage, pi, d, k3)
        if not _stage_nb(z, k3, h, stage, guard):
            return local, nrec, 2
        _velocity_nb(stage, pi, d, k4)
        for i in range(n):
            zi = z[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if zi < 0.0:
                zi = 0.0
            elif zi > ceil:
                zi = ceil
            z[i] = zi
    return nsteps, nrec, 0


def simulate_adaptation(
    net: InfluenceNetwork,
    pi: CentralityVector,
    sigma2: VarianceVector,
    z0: SelfConfidenceProfile,
    cfg: SolverConfig | None = None,
    *,
    sample_every: int = 1000,
) -> TrajectoryRecord:
    """Integrate the adaptation flow from an interior start.

    Runs RK4 with step cfg.step until max_i |dz_i/dt| <= cfg.stop_tol or
    the horizon cfg.t_max is exhausted, clamping z into [0, 1 - cfg.floor]
    after every step. Samples are kept every sample_every steps plus the
    terminus.

    Raises NonInteriorStart if some z0_i == 1, StepTooLarge if an RK4
    stage leaves the admissible band.
    """
    _check_dims(net, pi, sigma2)
    if z0.n != net.n:
        raise DimensionMismatch(f"start profile has {z0.n} entries, network {net.n}")
    if z0.stubborn:
        raise NonInteriorStart(f"stubborn agents {z0.stubborn} in the start profile")
    if sample_every < 1:
        raise ValueError(f"sample_every must be >= 1, got {sample_every}")
    cfg = cfg or SolverConfig()

    z = z0.z.copy()
    pi_arr = np.ascontiguousarray(pi.pi)
    d_arr = np.ascontiguousarray(pi.pi * sigma2.sigma2)
    max_steps = int(round(cfg.t_max / cfg.step))

    t_parts: list[np.ndarray] = []
    z_parts: list[np.ndarray] = []
    g_parts: list[np.ndarray] = []
    done = 0
    status = 0
    while done < max_steps:
        chunk = min(max_steps - done, _CHUNK_STEPS)
        nbuf = chunk // sample_every + 2
        t_idx = np.empty(nbuf, dtype=np.int64)
        zbuf = np.empty((nbuf, net.n))
        gbuf = np.empty(nbuf)
        stepped, nrec, status = _rk4_chunk_nb(
            z, pi_arr, d_arr, cfg.step, chunk, cfg.stop_tol, cfg.floor,
            sample_every, done, t_idx, zbuf, gbuf,
        )
        if nrec:
            t_parts.append(t_idx[:nrec].copy())
            z_parts.append(zbuf[:nrec].copy())
            g_parts.append(gbuf[:nrec].copy())
        done += stepped
        if status != 0:
            break
    if status == 2:
        raise StepTooLarge(
            f"an RK4 stage left [{-cfg.floor}, 1) at t = {done * cfg.step:g}; "
            f"reduce step {cfg.step}"
        )

    # terminus, evaluated by the same compiled path the stop test uses
    g_final = float(_velocity_max_nb(z, pi_arr, d_arr))
    t_parts.append(np.array([done], dtype=np.int64))
    z_parts.append(z[None, :].copy())
    g_parts.append(np.array([g_final]))

    times = np.concatenate(t_parts) * cfg.step
    profiles = np.vstack(z_parts)
    grad_norms = np.concatenate(g_parts)
    for arr in (times, profiles, grad_norms):
        arr.setflags(write=False)
    steady = SelfConfidenceProfile(z)
    alpha_hat, spread = fit_alpha(pi, sigma2, steady)
    return TrajectoryRecord(
        times=times,
        profiles=profiles,
        grad_norms=grad_norms,
        steady=steady,
        fitted_alpha=alpha_hat,
        alpha_spread=spread,
        converged=(status == 1),
    )
