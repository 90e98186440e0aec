"""Exception hierarchy shared by all toolkit modules."""

from typing import Any, Dict, Optional


class PVToolkitError(Exception):
    """Base class for toolkit errors, carrying optional source context."""

    def __init__(self, message: str, module: Optional[str] = None,
                 path: Optional[str] = None, line: Optional[int] = None):
        """
        Initialize the error.

        Args:
            message: Human-readable description
            module: Toolkit module that raised the error (e.g. "ingestion")
            path: File being processed, when known
            line: 1-based line number in that file, when known
        """
        super().__init__(message)
        self.message = message
        self.module = module
        self.path = path
        self.line = line

    def with_context(self, module: Optional[str] = None, path: Optional[str] = None,
                     line: Optional[int] = None) -> "PVToolkitError":
        """Fill in any missing context fields and return self."""
        self.module = self.module or module
        self.path = self.path or path
        self.line = self.line or line
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form used by the CLI."""
        return {
            "type": type(self).__name__,
            "module": self.module,
            "file": self.path,
            "line": self.line,
            "message": self.message,
        }

    def __str__(self) -> str:
        where = ""
        if self.path:
            where = f"{self.path}"
            if self.line:
                where += f":{self.line}"
            where += ": "
        return f"{where}{self.message}"


class ConfigError(PVToolkitError, ValueError):
    """Invalid, unknown or unreadable configuration."""


class DataError(PVToolkitError, ValueError):
    """Malformed, out-of-range or unusable input data."""


class UndefinedValueError(PVToolkitError, ArithmeticError):
    """A metric is undefined for its inputs (zero denominator, sun below horizon)."""
