from enum import StrEnum


## OUTPUT TYPES
class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


## CLI TYPES
class LogLevel(StrEnum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"

    @staticmethod
    def from_str(string: str | None) -> "LogLevel":
        if not string:
            return LogLevel.WARNING
        try:
            return LogLevel(string.strip().upper())
        except ValueError:
            return LogLevel.WARNING


class VerifySuite(StrEnum):
    BLACKBODY = "blackbody"
    VACUUM = "vacuum"
    MAXWELL = "maxwell"
    TWOSLIT = "twoslit"
    ALL = "all"
