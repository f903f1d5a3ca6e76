"""Exception types shared across the package."""


class DomainBridgeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DomainBridgeError):
    """A file violated its expected format; the message names file and line."""


class DataError(DomainBridgeError):
    """Input data cannot support the requested operation."""


class TrainingDiverged(DomainBridgeError):
    """The joint loss became non-finite during optimization."""
