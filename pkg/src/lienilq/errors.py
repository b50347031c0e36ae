"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for engine failures."""


class AmbientMismatchError(EngineError):
    """Operands live in free algebras with different generator counts."""


class ModeMismatchError(EngineError):
    """Operands carry different scalar modes."""


class DegreeError(EngineError):
    """A vector is inhomogeneous or has the wrong multidegree."""


class ResourceGuardError(EngineError):
    """A requested computation exceeds the configured component-size limit."""


class InconsistencyError(EngineError):
    """An internal cross-check failed, e.g. a negative weight multiplicity."""


class NotPolynomialCharacterError(EngineError):
    """A weight table is not a nonnegative sum of irreducible characters."""
