# errors.py
from typing import Optional


class KUniformError(Exception):
    """Base class for every error raised by the toolkit."""


class NotNormalized(KUniformError, ValueError):
    pass


class DuplicateBasisState(KUniformError, ValueError):
    pass


class BadBitstring(KUniformError, ValueError):
    pass


class DimensionMismatch(KUniformError, ValueError):
    pass


class SubsetTooLarge(KUniformError, ValueError):
    pass


class IndexOutOfRange(KUniformError, ValueError):
    pass


class NonHermitianResidue(KUniformError, RuntimeError):
    pass


class InternalInconsistency(KUniformError, RuntimeError):
    pass


class DuplicateRow(KUniformError, ValueError):
    pass


class NotUniformMagnitude(KUniformError, ValueError):
    pass


class SupportTooLarge(KUniformError, ValueError):
    pass


class UnknownId(KUniformError, KeyError):
    def __str__(self) -> str:
        # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class _LineAnchoredError(KUniformError, ValueError):
    """Error tied to a 1-based line (and optionally column) of an input text."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(self._format())

    def _format(self) -> str:
        if self.line is None:
            return self.message
        if self.col is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, col {self.col}: {self.message}"


class SdlSyntaxError(_LineAnchoredError):
    pass


class BlockWidthMismatch(_LineAnchoredError):
    pass


class FileFormatError(_LineAnchoredError):
    pass


class QubitCoverageError(KUniformError, ValueError):
    def __init__(self, message: str, term: int):
        self.term = term
        super().__init__(f"term {term}: {message}")
