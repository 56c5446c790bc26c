"""Exception hierarchy: validation failures vs. resource-cap failures.

The CLI maps ValidationError to exit code 2 and ResourceLimitError to exit
code 3; everything else is a bug.
"""


class ValidationError(ValueError):
    """Malformed input: bad permutation, degree mismatch, broken precondition."""


class ResourceLimitError(RuntimeError):
    """A configured cap was hit; the computation was aborted, not truncated."""


class ElementCapExceeded(ResourceLimitError):
    """Group element enumeration grew past the element cap."""


class WorkLimitExceeded(ResourceLimitError):
    """Subgroup join/closure work exceeded the work limit."""


class SieveMemoryExceeded(ResourceLimitError):
    """Requested sieve bound is larger than the configured maximum."""
