# File name: errors.py
# Created: 3/2/2026 10:12 AM
# Purpose: Exception hierarchy shared by the handlers and the command line
# Notes:
# - Everything a user can trigger with bad input derives from McwError (exit code 1)
# - Messages are one line; the CLI prints them as-is
# Used: Yes

from __future__ import annotations


class McwError(Exception):
    """Base class for domain errors (validation, preconditions, resource caps)."""


class ExpressionSyntaxError(McwError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ExpressionValidationError(McwError):
    """Width violation, eta with i = j, empty atom, short join."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line
        self.column = column


class EtaPreconditionViolation(McwError):
    """Some vertex carries both labels of an eta at the moment it is applied."""

    def __init__(
        self,
        path: tuple[int, ...],
        i: int,
        j: int,
        vertex: int | None = None,
        mask: int | None = None,
    ):
        where = "/" + "/".join(str(p) for p in path) if path else "/"
        if vertex is not None:
            witness = f"vertex {vertex}"
        else:
            witness = f"label set {mask:#b}" if mask is not None else "some vertex"
        super().__init__(f"eta {i} {j} at {where}: {witness} carries both labels")
        self.path = path
        self.i = i
        self.j = j
        self.vertex = vertex
        self.mask = mask


class FormatError(McwError):
    """Syntax error in a graph or .td file."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class DecompositionError(McwError):
    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class ResourceLimitError(McwError):
    pass


class OracleGuardError(ResourceLimitError):
    pass


class DimensionMismatchError(McwError):
    pass
