"""Exception types shared across the package.

Everything raised on bad input derives from :class:`SelfconfError`, so
callers (and the CLI) can catch one base class. Names state the violated
condition.
"""


class SelfconfError(ValueError):
    """Base class for all validation and numerical-contract errors."""


# -- influence-matrix validation -------------------------------------------

class NotSquare(SelfconfError):
    """Input matrix is not square, or has fewer than two rows."""


class NegativeEntry(SelfconfError):
    """Input matrix has a negative entry."""


class NonzeroDiagonal(SelfconfError):
    """Input matrix has a nonzero diagonal entry."""


class RowSumOutOfTolerance(SelfconfError):
    """A row sum differs from 1 by more than the stochasticity tolerance."""


class NotStronglyConnected(SelfconfError):
    """The influence graph is not strongly connected."""


class Periodic(SelfconfError):
    """The influence graph is periodic (cycle-length gcd exceeds 1)."""


# -- graph queries ----------------------------------------------------------

class EmptySubset(SelfconfError):
    """A node subset argument is empty."""


class NodeOutOfRange(SelfconfError):
    """A node id lies outside 0..n-1."""


# -- profiles, costs, linear algebra ---------------------------------------

class InvalidProfile(SelfconfError):
    """A self-confidence entry lies outside [0, 1]."""


class SingularSystem(SelfconfError):
    """A linear solve failed; signals a numerical bug, not a model case."""


class StubbornPresent(SelfconfError):
    """Operation requires a profile with no entry equal to 1."""


class DimensionMismatch(SelfconfError):
    """Vector/matrix sizes do not agree."""


class AgentOutOfRange(SelfconfError):
    """An agent index lies outside 0..n-1."""


class NonpositiveVariance(SelfconfError):
    """A measurement variance is zero or negative."""


# -- dynamics ---------------------------------------------------------------

class NonInteriorStart(SelfconfError):
    """Adaptation must start with every entry strictly below 1."""


class StepTooLarge(SelfconfError):
    """An integrator stage left the admissible band; reduce the step."""


class NoConvergence(SelfconfError):
    """An iteration budget was exhausted before reaching tolerance."""


# -- CLI --------------------------------------------------------------------

class UsageError(SelfconfError):
    """Command line arguments are structurally wrong or incomplete."""


class ScenarioError(SelfconfError):
    """A scenario file is missing or malformed."""
