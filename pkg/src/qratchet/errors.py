class QRatchetError(Exception):
    """Base class for all errors raised by qratchet."""


class DimensionError(QRatchetError, ValueError):
    pass


class ShapeError(QRatchetError, ValueError):
    pass


class ContractError(QRatchetError, ValueError):
    """An input violates a documented precondition (e.g. non-Hermitian matrix)."""


class DomainError(QRatchetError, ValueError):
    pass


class ParameterError(QRatchetError, ValueError):
    pass


class ConvergenceError(QRatchetError, RuntimeError):
    pass


class CoderError(QRatchetError, ValueError):
    pass
