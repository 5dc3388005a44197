"""Exception types shared across the package.

The CLI maps these onto exit codes: input errors exit 2, budget errors
exit 3 and invariant breaches exit 4.
"""


class HeartwoodError(Exception):
    """Base class for all library errors."""


class InputError(HeartwoodError, ValueError):
    """Malformed or out-of-contract input."""


class FormatError(InputError):
    """A JSON document does not follow the expected schema."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class IsometryViolation(InputError):
    """Image points do not preserve the distances of their domain points."""

    code = "ISOMETRY_VIOLATION"

    def __init__(self, name, pair, expected, found):
        self.name = name
        self.pair = pair
        self.expected = expected
        self.found = found
        super().__init__(
            f"{self.code}: generator {name!r}, extremal pair {pair}: "
            f"domain distance {expected} but image distance {found}"
        )


class ScalarContextError(InputError):
    """Two quadratic scalars live in different fields Q(sqrt d)."""


class OutOfBallError(InputError):
    """A point or word falls outside a finite ball of the suspension tree."""


class DepthError(HeartwoodError):
    """An infinite-word generator cannot produce the requested prefix."""


class BudgetError(HeartwoodError):
    """An enumeration would exceed the configured resource budget."""

    def __init__(self, message, required=None):
        self.required = required
        super().__init__(message)


class InvariantBreach(HeartwoodError, AssertionError):
    """An internal consistency check failed."""
