# zpm_actions/exceptions.py

"""Exceptions raised by the zpm-actions library."""

import typing


class SurfaceActionError(Exception):
    """Base exception for errors originating from the zpm-actions library."""
    pass


# --- Linear algebra over F_p ---

class NotPrimeError(SurfaceActionError, ValueError):
    """Raised when a modulus is not a prime (or too large for word arithmetic)."""

    def __init__(self, p: int, reason: str = "not prime"):
        self.p = p
        self.reason = reason
        super().__init__(f"Modulus p={p} is {reason}.")


class DimensionMismatchError(SurfaceActionError, ValueError):
    """Raised when matrix/vector shapes or ambient spaces do not fit together."""
    pass


class SingularMatrixError(SurfaceActionError, ArithmeticError):
    """Raised when an inverse is requested for a singular matrix."""
    pass


class NotAlternatingError(SurfaceActionError, ValueError):
    """Raised when a Gram matrix is not alternating (zero diagonal, antisymmetric)."""

    def __init__(self, i: int, j: int, detail: str):
        self.i = i
        self.j = j
        # f-строка для сообщения
        super().__init__(f"Gram matrix is not alternating at ({i}, {j}): {detail}")


class NotAnIsometryError(SurfaceActionError, ValueError):
    """Raised when a partial map cannot be extended to a form-preserving automorphism."""
    pass


# --- Action data ---

class ActionShapeError(SurfaceActionError, ValueError):
    """Raised when ActionData fields have the wrong shape or out-of-range entries."""

    def __init__(self, field_name: str, detail: str):
        self.field_name = field_name
        self.detail = detail
        super().__init__(f"Invalid field '{field_name}': {detail}")


class InvalidActionError(SurfaceActionError, ValueError):
    """Base class for ActionData that does not describe an action."""
    pass


class ZeroBranchImageError(InvalidActionError):
    """Raised when a branch loop is sent to the zero element."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Branch image c_{index + 1} is zero; every branch point needs a nontrivial image.")


class BranchSumError(InvalidActionError):
    """Raised when the branch images do not sum to zero."""

    def __init__(self, total: typing.Sequence[int]):
        self.total = tuple(total)
        super().__init__(f"Branch images sum to {list(self.total)} instead of zero.")


class NotSurjectiveError(InvalidActionError):
    """Raised when the monodromy images do not span F_p^m."""

    def __init__(self, rank: int, m: int):
        self.rank = rank
        self.m = m
        super().__init__(f"Monodromy images span a {rank}-dimensional subspace, not all of F_p^{m}.")


class ActionMismatchError(SurfaceActionError, ValueError):
    """Raised when two actions of different groups are compared."""

    def __init__(self, left: typing.Tuple[int, int], right: typing.Tuple[int, int]):
        self.left = left
        self.right = right
        super().__init__(f"Cannot compare actions with (p, m) = {left} and {right}.")


class AdmissibilityError(SurfaceActionError, ValueError):
    """Raised when invariants requested from construct_action are not realizable."""

    def __init__(self, inequality: str, detail: str = ""):
        self.inequality = inequality
        message = f"{inequality} violated"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class ActionFileError(SurfaceActionError):
    """Raised when an action file cannot be read or parsed."""

    def __init__(self, path: str, error: typing.Union[Exception, str], line: typing.Optional[int] = None,
                 text: str = ""):
        self.path = path
        self.error = error
        self.line = line
        preview = text.strip()[:200] if text else "N/A"
        location = f"{path}:{line}" if line is not None else path
        message = (
            f"Failed to load action file {location}.\n"
            f"Error: {error}\n"
            f"Content (first 200 chars):\n{preview}"
        )
        super().__init__(message)


# --- Guards, config, internal ---

class InstanceTooLargeError(SurfaceActionError):
    """Raised when a computation exceeds a configured enumeration guard."""

    def __init__(self, what: str, size: int, limit: int, key: str, suggestion: str = ""):
        self.what = what
        self.size = size
        self.limit = limit
        self.key = key
        message = f"instance too large: {what} needs {size} > {key}={limit}."
        if suggestion:
            message += f" {suggestion}"
        super().__init__(message)


class ConfigError(SurfaceActionError, ValueError):
    """Raised for unreadable or invalid configuration files."""
    pass


class InternalConsistencyError(SurfaceActionError, AssertionError):
    """Raised when a computed object fails its own post-condition (a bug, not a user error)."""
    pass


class OracleIncompleteError(SurfaceActionError):
    """Raised when brute-force orbits outnumber invariant values."""

    def __init__(self, mode: str, orbit_count: int, invariant_count: int):
        self.mode = mode
        self.orbit_count = orbit_count
        self.invariant_count = invariant_count
        super().__init__(
            f"generator set incomplete: {orbit_count} {mode} orbits but only {invariant_count} invariant values."
        )
