from typing import Optional


class JordanLensError(Exception):
    """Base class for every error raised by jordanlens"""


class InputError(JordanLensError, ValueError):
    """Raised when an argument is malformed or out of range"""


class DimensionMismatchError(InputError):
    def __init__(self, *dims: int):
        self.dims = dims
        super().__init__(f"Ambient dimensions differ: {', '.join(str(d) for d in dims)}")


class ParseError(InputError):
    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = path or "<text>"
        if line is not None:
            location = f"{location}:{line}"
        super().__init__(f"{location}: {message}")


class PreconditionError(JordanLensError):
    """Raised when a mathematical precondition of an operation does not hold"""
