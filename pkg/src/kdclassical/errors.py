"""Exception types shared across the package."""


class InconsistentSupportError(ValueError):
    """A requested support window contains a row or column with no nonzero
    transition-matrix entry, so no state can have exactly these supports."""


class DecomposableMatrixError(ValueError):
    """An operation that requires an indecomposable transition matrix was
    handed one that splits into a nontrivial direct sum."""


class InternalConsistencyError(RuntimeError):
    """A quantity that is guaranteed by an exact identity failed its
    numerical re-check; signals a mis-set tolerance or an implementation bug."""
