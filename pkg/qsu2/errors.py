"""
qsu2 error taxonomy.

Structured errors for consistent command responses. ``status`` doubles as the
process exit status of the CLI.
"""


class Qsu2Error(Exception):
    """Base error for all qsu2 errors."""

    def __init__(self, message: str, code: str = "INTERNAL_ERROR", status: int = 1):
        self.message = message
        self.code = code
        self.status = status
        super().__init__(message)


class ParameterError(Qsu2Error):
    """Invalid deformation parameter, index, size or state descriptor."""

    def __init__(self, message: str):
        super().__init__(message, code="INVALID_PARAMETER", status=2)


class ParseError(Qsu2Error):
    """Expression text could not be parsed."""

    def __init__(self, message: str, position: int = 0):
        self.position = position
        super().__init__(f"{message} (at position {position})", code="PARSE_ERROR", status=2)


class QParamsMismatchError(Qsu2Error):
    """Arithmetic between elements living over different q."""

    def __init__(self, left: float, right: float):
        super().__init__(f"q mismatch: {left!r} vs {right!r}", code="QPARAMS_MISMATCH", status=2)


class UnsupportedError(Qsu2Error):
    """Operation not defined at the requested parameters."""

    def __init__(self, message: str):
        super().__init__(message, code="UNSUPPORTED", status=2)


class OracleError(Qsu2Error):
    """Numerical oracle failed outright."""

    def __init__(self, oracle: str, message: str):
        super().__init__(f"{oracle}: {message}", code="ORACLE_ERROR", status=3)


class IdentityError(Qsu2Error):
    """An algebraic identity that must hold exactly failed beyond tolerance."""

    def __init__(self, identity: str, residual: float):
        self.residual = residual
        super().__init__(f"{identity}: residual {residual:.3e}", code="IDENTITY_FAILED", status=1)
