"""Shared resource-guard exception.

Desk-scale caps never silently degrade results: exceeding one raises
ResourceLimit, which callers surface as an explicit "undecided" outcome or an
error, never as a mathematical verdict.
"""


class ResourceLimit(RuntimeError):
    """A desk-scale guard was exceeded; the computation was not attempted."""
