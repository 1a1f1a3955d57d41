"""Exception hierarchy shared across the package."""


class PgIproError(Exception):
    """Base class for all domain errors raised by this package."""


# Graph ingestion and path evaluation.
class ParseError(PgIproError):
    pass


class MissingNode(PgIproError):
    pass


class DimensionMismatch(PgIproError):
    pass


class NegativeCost(PgIproError):
    pass


class NotAPath(PgIproError):
    pass


# Search and partition maintenance.
class Unreachable(PgIproError):
    pass


class UnknownRegion(PgIproError):
    pass


class InvalidOracleResult(PgIproError):
    pass


class DegenerateAxis(PgIproError):
    pass


class OracleTimeLimit(PgIproError):
    pass


# Interactive sessions.
class SessionClosed(PgIproError):
    pass


class NoPendingCandidate(PgIproError):
    pass


class PendingComparison(PgIproError):
    pass


# Baselines and benchmarks.
class SingularKernel(PgIproError):
    pass


class ScenarioLoadError(PgIproError):
    pass
