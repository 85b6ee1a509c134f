"""Exception types shared across the package."""


class RankMismatchError(ValueError):
    """Vectors from incompatible lattices were combined."""


class RootError(ValueError):
    """A reflection was requested through a vector that is not a root."""


class OrbitCapExceededError(RuntimeError):
    """Orbit enumeration grew past the configured safety cap."""


class ReductionStepLimitError(RuntimeError):
    """Chamber reduction exceeded its step bound.

    The reduction provably terminates on valid input, so seeing this error
    means the input vector or the root data were corrupted.
    """


class IntegrityError(RuntimeError):
    """An exact cross-check failed; computed results cannot be trusted."""


class UnderdeterminedClassError(IntegrityError):
    """No usable associativity instance was found for a curve class."""


class CacheFormatError(IntegrityError):
    """A cache file is structurally invalid."""
