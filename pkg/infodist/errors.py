"""
Exception hierarchy for infodist.

Every error raised on purpose by the library derives from InfodistError so the
CLI can map it onto its exit-code contract.
"""


class InfodistError(Exception):
    """Base class for all infodist errors."""
    pass


class NonHermitianInput(InfodistError):
    """Raised when a matrix expected to be Hermitian is not, within tolerance."""
    pass


class DomainError(InfodistError):
    """Raised when a scalar function is undefined at a retained eigenvalue."""
    pass


class DimensionMismatch(InfodistError):
    """Raised when operand dimensions disagree."""
    pass


class OutOfDomain(InfodistError):
    """Raised when a parameter point lies outside a model's domain."""
    pass


class DegenerateModel(InfodistError):
    """Raised when a model produces something that is not a valid density matrix."""
    pass


class InvalidMeasurement(InfodistError):
    """Raised when Kraus operators violate shape or normalization requirements."""
    pass


class NotPure(InfodistError):
    """Raised when a pure measurement is required but some outcome has several Kraus operators."""
    pass


class NotReversible(InfodistError):
    """Raised when a reversible measurement is required but some Kraus operator is singular."""
    pass


class NotImpure(InfodistError):
    """Raised when an impure measurement is required but every outcome has one Kraus operator."""
    pass


class SingularDistribution(InfodistError):
    """Raised when the classical Fisher information diverges at a zero-probability outcome."""
    pass


class RankDeficient(InfodistError):
    """Raised when a general monotone metric is evaluated where it diverges."""
    pass


class NotADistribution(InfodistError):
    """Raised when a vector is not a probability distribution."""
    pass


class SingularSigma(InfodistError):
    """Raised when the Belavkin-Staszewski entropy needs the inverse of a singular state."""
    pass


class UnknownMetric(InfodistError):
    """Raised when a metric name is not one of the presets."""
    pass


class ConfigError(InfodistError):
    """Raised when a job config is malformed or inconsistent."""
    pass


class InvalidState(InfodistError):
    """Raised when a matrix is not a density matrix within tolerance."""
    pass


class NumericalError(InfodistError):
    """Raised when a computed quantity breaks an invariant beyond its tolerance."""
    pass
