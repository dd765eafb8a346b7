"""Self-confidence adaptation on averaging networks.

Opinions evolve by convex averaging, x(t+1) = ((I - [z])P + [z]) x(t),
where P carries the interpersonal weights and z the self-weights. The
package computes the limit opinion map and its estimation costs, best
responses and equilibria of the induced game, the Pareto/strict-Nash ray,
and the gradient adaptation flow of z, all cross-checked by brute-force
oracles and exposed through the ``selfconf`` CLI.
"""

from .centrality import CentralityVector, centrality
from .dynamics import (
    GradientTerms,
    SolverConfig,
    TrajectoryRecord,
    adaptation_velocity,
    cost_gradient,
    fit_alpha,
    gradient_terms,
    simulate_adaptation,
)
from .errors import (
    AgentOutOfRange,
    DimensionMismatch,
    EmptySubset,
    InvalidProfile,
    NegativeEntry,
    NoConvergence,
    NodeOutOfRange,
    NonInteriorStart,
    NonpositiveVariance,
    NonzeroDiagonal,
    NotSquare,
    NotStronglyConnected,
    Periodic,
    RowSumOutOfTolerance,
    ScenarioError,
    SelfconfError,
    SingularSystem,
    StepTooLarge,
    StubbornPresent,
    UsageError,
)
from .estimation import (
    CostVector,
    OptimalAggregate,
    VarianceVector,
    estimation_costs,
    optimal_weights,
)
from .game import (
    BestResponseKind,
    BestResponseResult,
    EquilibriumClass,
    EquilibriumReport,
    ParetoRay,
    StructureChecks,
    best_response,
    classify_equilibrium,
    pareto_set,
    ray_membership,
)
from .limits import (
    EffectiveUpdateMatrix,
    LimitBranch,
    LimitMatrix,
    SelfConfidenceProfile,
    effective_update_matrix,
    gamma,
    limit_matrix,
)
from .network import (
    InfluenceNetwork,
    RestrictedGraph,
    is_directed_ring,
    restricted_graph,
    validate_network,
)
from .oracle import OpinionRollout, grid_best_response, opinion_rollout, power_limit
from .cli import Scenario, load_scenario

__version__ = "0.1.0"

__all__ = [
    "AgentOutOfRange",
    "BestResponseKind",
    "BestResponseResult",
    "CentralityVector",
    "CostVector",
    "DimensionMismatch",
    "EffectiveUpdateMatrix",
    "EmptySubset",
    "EquilibriumClass",
    "EquilibriumReport",
    "GradientTerms",
    "InfluenceNetwork",
    "InvalidProfile",
    "LimitBranch",
    "LimitMatrix",
    "NegativeEntry",
    "NoConvergence",
    "NodeOutOfRange",
    "NonInteriorStart",
    "NonpositiveVariance",
    "NonzeroDiagonal",
    "NotSquare",
    "NotStronglyConnected",
    "OpinionRollout",
    "OptimalAggregate",
    "ParetoRay",
    "Periodic",
    "RestrictedGraph",
    "RowSumOutOfTolerance",
    "Scenario",
    "ScenarioError",
    "SelfConfidenceProfile",
    "SelfconfError",
    "SingularSystem",
    "SolverConfig",
    "StepTooLarge",
    "StructureChecks",
    "StubbornPresent",
    "TrajectoryRecord",
    "UsageError",
    "VarianceVector",
    "adaptation_velocity",
    "best_response",
    "centrality",
    "classify_equilibrium",
    "cost_gradient",
    "effective_update_matrix",
    "estimation_costs",
    "fit_alpha",
    "gamma",
    "gradient_terms",
    "grid_best_response",
    "is_directed_ring",
    "limit_matrix",
    "load_scenario",
    "opinion_rollout",
    "optimal_weights",
    "pareto_set",
    "power_limit",
    "ray_membership",
    "restricted_graph",
    "simulate_adaptation",
    "validate_network",
]
