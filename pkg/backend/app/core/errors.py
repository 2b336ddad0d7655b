"""Exception hierarchy shared by every feature package.

Each error carries the process exit code the CLI maps it to and a
human-readable ``detail``, mirroring ``HTTPException(status_code, detail)``.
"""

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNBOUNDED = 3
EXIT_INTERNAL = 70


class OriginLabError(Exception):
    exit_code: int = EXIT_INTERNAL

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class ContractViolation(OriginLabError):
    """Caller broke an operation precondition (shapes, empty inputs)."""

    exit_code = EXIT_CONFIG


class ConfigError(OriginLabError):
    exit_code = EXIT_CONFIG


class SymmetryViolation(ConfigError):
    pass


class WeightError(ConfigError):
    pass


class ZeroCostVector(ConfigError):
    pass


class TooLargeToEnumerate(ConfigError):
    pass


class FiniteAtomsRequired(ConfigError):
    pass


class MeanZeroRequired(ConfigError):
    pass


class InternalError(OriginLabError):
    exit_code = EXIT_INTERNAL


class CertificateError(InternalError):
    """A solver emitted a certificate that failed exact re-verification."""
