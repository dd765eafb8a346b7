"""Command-line front end.

Subcommands: validate, centrality, limit, costs, best-response, pareto,
nash-check, simulate, oracle {power-limit, grid-br, rollout}. Scenario
files are JSON objects {"P": [[...]], "sigma2": [...], "z": [...],
"metadata": {...}} with z and metadata optional. Reports go to stdout as
JSON with floats at 17 significant digits (parse-exact for doubles);
trajectories go to --out as CSV. Agent ids are 0-based.

Exit codes: 0 success, 1 validation/data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .centrality import CentralityVector, centrality
from .dynamics import SolverConfig, fit_alpha, simulate_adaptation
from .errors import DimensionMismatch, ScenarioError, SelfconfError, UsageError
from .estimation import VarianceVector, estimation_costs, optimal_weights
from .game import best_response, classify_equilibrium, pareto_set
from .limits import SelfConfidenceProfile, limit_matrix
from .network import InfluenceNetwork, validate_network
from .oracle import grid_best_response, opinion_rollout, power_limit

_BUNDLED = ("paper4", "tri3")


@dataclass(frozen=True)
class Scenario:
    """Parsed and validated scenario file."""

    network: InfluenceNetwork
    sigma2: VarianceVector
    profile: SelfConfidenceProfile | None
    metadata: dict


def _read_scenario_text(path: str) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text()
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    if stem in _BUNDLED:
        # bundled copy, so the shipped fixture names work from any directory
        return (resources.files("selfconf") / "fixtures" / f"{stem}.json").read_text()
    raise ScenarioError(f"scenario file not found: {path}")


def load_scenario(path: str) -> Scenario:
    """Load, parse, and validate a scenario file."""
    text = _read_scenario_text(path)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ScenarioError(f"scenario {path} must be a JSON object")
    for key in ("P", "sigma2"):
        if key not in raw:
            raise ScenarioError(f"scenario {path} is missing {key!r}")
    network = validate_network(raw["P"])
    sigma2 = VarianceVector(np.asarray(raw["sigma2"], dtype=float))
    if sigma2.n != network.n:
        raise DimensionMismatch(
            f"scenario {path}: sigma2 has {sigma2.n} entries, network has {network.n}"
        )
    profile = None
    if raw.get("z") is not None:
        profile = SelfConfidenceProfile(np.asarray(raw["z"], dtype=float))
        if profile.n != network.n:
            raise DimensionMismatch(
                f"scenario {path}: z has {profile.n} entries, network has {network.n}"
            )
    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ScenarioError(f"scenario {path}: metadata must be an object")
    return Scenario(network=network, sigma2=sigma2, profile=profile, metadata=metadata)


# -- serialization -----------------------------------------------------------

def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def render_json(value) -> str:
    """Serialize to JSON with floats at 17 significant digits."""
    parts: list[str] = []
    _render(value, parts)
    return "".join(parts)


def _render(value, parts: list[str]) -> None:
    if isinstance(value, (bool, np.bool_)):
        parts.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        parts.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        parts.append(_fmt_float(value))
    elif value is None:
        parts.append("null")
    elif isinstance(value, str):
        parts.append(json.dumps(value))
    elif isinstance(value, enum.Enum):
        _render(value.value, parts)
    elif isinstance(value, np.ndarray):
        _render(value.tolist(), parts)
    elif isinstance(value, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(value):
            if i:
                parts.append(",")
            _render(item, parts)
        parts.append("]")
    elif isinstance(value, dict):
        parts.append("{")
        for i, (key, item) in enumerate(value.items()):
            if i:
                parts.append(",")
            parts.append(json.dumps(str(key)))
            parts.append(":")
            _render(item, parts)
        parts.append("}")
    else:
        raise TypeError(f"cannot serialize {type(value)!r}")


# -- argument helpers --------------------------------------------------------

def parse_profile_spec(spec: str, n: int, default_seed: int = 0) -> SelfConfidenceProfile:
    """Parse const:<v>, csv:<v1,...,vn>, random:<seed>, or random."""
    if spec.startswith("const:"):
        try:
            v = float(spec[len("const:"):])
        except ValueError as exc:
            raise UsageError(f"bad const profile {spec!r}") from exc
        return SelfConfidenceProfile(np.full(n, v))
    if spec.startswith("csv:"):
        try:
            values = [float(tok) for tok in spec[len("csv:"):].split(",")]
        except ValueError as exc:
            raise UsageError(f"bad csv profile {spec!r}") from exc
        if len(values) != n:
            raise UsageError(f"profile {spec!r} has {len(values)} entries, need {n}")
        return SelfConfidenceProfile(np.asarray(values))
    if spec == "random" or spec.startswith("random:"):
        seed = default_seed
        if spec.startswith("random:"):
            try:
                seed = int(spec[len("random:"):])
            except ValueError as exc:
                raise UsageError(f"bad random profile {spec!r}") from exc
        rng = np.random.default_rng(seed)
        return SelfConfidenceProfile(rng.random(n))
    raise UsageError(f"cannot parse profile spec {spec!r}; use const:/csv:/random:")


def _require_profile(scenario: Scenario, zspec: str | None, seed: int = 0) -> SelfConfidenceProfile:
    if zspec is not None:
        return parse_profile_spec(zspec, scenario.network.n, default_seed=seed)
    if scenario.profile is not None:
        return scenario.profile
    raise UsageError("scenario carries no 'z'; pass --z")


# -- subcommands -------------------------------------------------------------

def _cmd_validate(args) -> str:
    scenario = load_scenario(args.scenario)
    # connectivity and aperiodicity hold by construction after validation
    return render_json({"n": scenario.network.n, "irreducible": True, "aperiodic": True})


def _cmd_centrality(args) -> str:
    scenario = load_scenario(args.scenario)
    return render_json(centrality(scenario.network).pi)


def _cmd_limit(args) -> str:
    scenario = load_scenario(args.scenario)
    profile = _require_profile(scenario, args.z)
    H = limit_matrix(scenario.network, centrality(scenario.network), profile)
    return render_json({"branch": H.branch, "H": H.H})


def _cmd_costs(args) -> str:
    scenario = load_scenario(args.scenario)
    profile = _require_profile(scenario, args.z)
    H = limit_matrix(scenario.network, centrality(scenario.network), profile)
    costs = estimation_costs(H, scenario.sigma2)
    floor = optimal_weights(scenario.sigma2).cost_floor
    return render_json({"upsilon": costs.upsilon, "cost_floor": floor})


def _cmd_best_response(args) -> str:
    scenario = load_scenario(args.scenario)
    profile = _require_profile(scenario, args.z)
    result = best_response(
        scenario.network, centrality(scenario.network), scenario.sigma2, profile, args.agent
    )
    return render_json({
        "agent": args.agent,
        "kind": result.kind,
        "value": result.value,
        "constant_cost": result.constant_cost,
    })


def _cmd_pareto(args) -> str:
    scenario = load_scenario(args.scenario)
    ray = pareto_set(centrality(scenario.network), scenario.sigma2)
    return render_json({"direction": ray.direction, "alpha_max": ray.alpha_max})


def _cmd_nash_check(args) -> str:
    scenario = load_scenario(args.scenario)
    profile = _require_profile(scenario, args.z)
    report = classify_equilibrium(
        scenario.network, centrality(scenario.network), scenario.sigma2, profile,
        ray_tol=args.tol,
    )
    checks = report.structure_checks
    return render_json({
        "classification": report.classification,
        "fitted_alpha": report.fitted_alpha,
        "deviating_agent": report.deviating_agent,
        "deviation_value": report.deviation_value,
        "structure_checks": {
            "stubborn_count": checks.stubborn_count,
            "variances_equal": checks.variances_equal,
            "restricted_ring": checks.restricted_ring,
        },
    })


def _cmd_simulate(args) -> str:
    scenario = load_scenario(args.scenario)
    z0 = parse_profile_spec(args.z0, scenario.network.n, default_seed=args.seed)
    cfg = SolverConfig(step=args.dt, t_max=args.t_max, stop_tol=args.stop_tol)
    pi = centrality(scenario.network)
    record = simulate_adaptation(
        scenario.network, pi, scenario.sigma2, z0, cfg, sample_every=args.sample_every
    )
    if args.out:
        _write_trajectory_csv(args.out, record, pi, scenario.sigma2)
    steps = int(round(record.times[-1] / cfg.step))
    return render_json({
        "steady": record.steady.z,
        "alpha_hat": record.fitted_alpha,
        "alpha_spread": record.alpha_spread,
        "steps": steps,
        "time": float(record.times[-1]),
        "grad_norm": float(record.grad_norms[-1]),
        "converged": record.converged,
    })


def _write_trajectory_csv(path: str, record, pi: CentralityVector, sigma2: VarianceVector) -> None:
    n = record.profiles.shape[1]
    d = pi.pi * sigma2.sigma2
    alphas = np.mean((1.0 - record.profiles) / d, axis=1)
    header = "t," + ",".join(f"z_{i + 1}" for i in range(n)) + ",alpha_hat,grad_norm"
    lines = [header]
    for t, z_row, a, g in zip(record.times, record.profiles, alphas, record.grad_norms):
        cells = [_fmt_float(t)]
        cells.extend(_fmt_float(v) for v in z_row)
        cells.append(_fmt_float(a))
        cells.append(_fmt_float(g))
        lines.append(",".join(cells))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _cmd_oracle_power_limit(args) -> str:
    scenario = load_scenario(args.scenario)
    profile = _require_profile(scenario, args.z)
    H = power_limit(scenario.network, profile, tol=args.tol)
    return render_json({"branch": H.branch, "H": H.H})


def _cmd_oracle_grid_br(args) -> str:
    scenario = load_scenario(args.scenario)
    profile = _require_profile(scenario, args.z)
    value = grid_best_response(
        scenario.network, scenario.sigma2, profile, args.agent, grid_step=args.grid_step
    )
    return render_json({"agent": args.agent, "grid_step": args.grid_step, "best_z": value})


def _cmd_oracle_rollout(args) -> str:
    scenario = load_scenario(args.scenario)
    profile = _require_profile(scenario, args.z)
    rollout = opinion_rollout(
        scenario.network, profile, scenario.sigma2,
        theta=args.theta, samples=args.samples, horizon=args.horizon, seed=args.seed,
    )
    return render_json({
        "theta": rollout.theta,
        "samples": rollout.samples,
        "horizon": rollout.horizon,
        "seed": rollout.seed,
        "empirical_variances": rollout.empirical_variances,
    })


# -- parser ------------------------------------------------------------------

def _add_z_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--z", default=None,
                   help="profile spec const:<v> | csv:<v1,...> | random:<seed> "
                        "(default: the scenario's z)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfconf",
        description="Self-confidence adaptation on averaging networks. Agent ids are 0-based.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("scenario", help="scenario JSON path (bundled: paper4, tri3)")
        p.set_defaults(func=func)
        return p

    add("validate", _cmd_validate, "validate the influence matrix")
    add("centrality", _cmd_centrality, "print the invariant distribution")
    p = add("limit", _cmd_limit, "print the limit opinion map H(z)")
    _add_z_flag(p)
    p = add("costs", _cmd_costs, "print per-agent limit costs and the cost floor")
    _add_z_flag(p)
    p = add("best-response", _cmd_best_response, "best-response set of one agent")
    _add_z_flag(p)
    p.add_argument("--agent", type=int, required=True, help="agent id (0-based)")
    p = add("pareto", _cmd_pareto, "print the Pareto/strict-Nash ray")
    p = add("nash-check", _cmd_nash_check, "classify a profile as an equilibrium")
    _add_z_flag(p)
    p.add_argument("--tol", type=float, default=1e-9, help="ray membership tolerance")
    p = add("simulate", _cmd_simulate, "integrate the adaptation flow")
    p.add_argument("--z0", required=True,
                   help="start profile const:<v> | csv:<v1,...> | random:<seed> | random")
    p.add_argument("--dt", type=float, default=0.01, help="time step")
    p.add_argument("--t-max", type=float, default=1e7, help="integration horizon")
    p.add_argument("--stop-tol", type=float, default=1e-10, help="stationarity threshold")
    p.add_argument("--seed", type=int, default=0, help="seed for --z0 random")
    p.add_argument("--sample-every", type=int, default=1000, help="record every N steps")
    p.add_argument("--out", default=None, help="trajectory CSV path")

    oracle = sub.add_parser("oracle", help="brute-force verifiers")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)

    p = osub.add_parser("power-limit", help="limit map by repeated squaring")
    p.add_argument("scenario")
    _add_z_flag(p)
    p.add_argument("--tol", type=float, default=1e-11, help="Cauchy tolerance")
    p.set_defaults(func=_cmd_oracle_power_limit)

    p = osub.add_parser("grid-br", help="best response by grid search")
    p.add_argument("scenario")
    _add_z_flag(p)
    p.add_argument("--agent", type=int, required=True, help="agent id (0-based)")
    p.add_argument("--grid-step", type=float, default=0.001)
    p.set_defaults(func=_cmd_oracle_grid_br)

    p = osub.add_parser("rollout", help="Monte-Carlo variance of limit estimates")
    p.add_argument("scenario")
    _add_z_flag(p)
    p.add_argument("--theta", type=float, default=0.0, help="state of the world")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--horizon", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle_rollout)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        output = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SelfconfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if output is not None:
        print(output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
