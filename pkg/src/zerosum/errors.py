"""Exception hierarchy.  Every library failure derives from ``ZeroSumError``."""


class ZeroSumError(Exception):
    """Base class for domain errors; ``code`` is a stable machine-readable tag."""

    code = "error"


class GroupError(ZeroSumError, ValueError):
    code = "group_mismatch"


class NotDecomposable(ZeroSumError):
    code = "not_decomposable"


class NotMinimal(ZeroSumError):
    code = "not_minimal_decomposable"


class SizeGuardExceeded(ZeroSumError):
    code = "size_guard_exceeded"


class SearchExhausted(ZeroSumError):
    """A bounded search ran out of budget without an answer."""

    code = "search_exhausted"


class TreeInconsistency(ZeroSumError):
    """Internal invariant of the tree construction failed; indicates a bug."""

    code = "tree_inconsistency"
