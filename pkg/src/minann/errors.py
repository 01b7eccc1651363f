"""Exception hierarchy for the engine.

Every error carries enough context to act on: the failed clause, the
measured quantity, and (where meaningful) the best value achieved.
"""


class EngineError(Exception):
    """Base class for all engine errors."""


class DomainError(EngineError):
    """Evaluation requested outside the domain of definition (e.g. z = 0
    with negative Laurent exponents)."""


class IllConditionedFitError(EngineError):
    """Least-squares system too ill-conditioned to trust.

    Carries the condition estimate in ``condition``.
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class QuadratureError(EngineError):
    """Adaptive quadrature exhausted its subdivision budget.

    ``best`` holds the last estimate, ``error`` the estimated error.
    """

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error


class GeometryError(EngineError):
    """Invalid or degenerate planar geometry (self-intersection, broken
    containment, asymmetric vertex set, ...)."""


class OffsetError(GeometryError):
    """Polygon offset collapsed an edge or broke a containment."""


class ResolutionError(EngineError):
    """Mesh resolution too coarse for the requested domain."""


class PathRoutingError(EngineError):
    """No admissible integration path from the base point to the target."""


class ApproximationError(EngineError):
    """Runge multiplier could not be certified within the basis budget.

    ``sup_errors`` holds the best measured sup-errors on the two sets.
    """

    def __init__(self, message, sup_errors=None):
        super().__init__(message)
        self.sup_errors = sup_errors


class StepFailureError(EngineError):
    """A single deformation step failed certification.

    ``binding`` names the property that could not be satisfied.
    """

    def __init__(self, message, binding=None, report=None):
        super().__init__(message)
        self.binding = binding
        self.report = report


class LemmaFailureError(EngineError):
    """A full deformation run failed one of its asserted conclusions.

    ``assertion`` names the failed clause.
    """

    def __init__(self, message, assertion=None, report=None):
        super().__init__(message)
        self.assertion = assertion
        self.report = report


class AdvanceFailureError(EngineError):
    """Outer recursion could not advance (budget exhausted or the
    required labyrinth scale is out of reach)."""


class SeedConfigError(EngineError):
    """Seed state does not satisfy its distance window on the chosen pair."""


class ConfigError(EngineError):
    """Malformed or contradictory run configuration.

    ``path`` points at the offending key.
    """

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


class DisconnectedError(EngineError):
    """Dijkstra target unreachable from the source set."""
