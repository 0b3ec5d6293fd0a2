"""Exception types shared across the package."""


class NormpropError(Exception):
    """Base class for all errors raised by this package."""


class CapExceededError(NormpropError):
    """A closure, product or enumeration grew past its configured cap."""


class BadDegreeError(NormpropError):
    """Permutation generators do not all act on the same number of points."""


class NotNormalError(NormpropError):
    """An operation requiring a normal subgroup was given a non-normal one."""


class GroupMismatchError(NormpropError):
    """Two group ring elements live over different groups."""


class BadClassError(NormpropError):
    """The given element set is not a conjugacy class of the group."""


class NotAUnitError(NormpropError):
    """The group ring element is not invertible over the integers."""


class NotNormalizingError(NormpropError):
    """The unit does not normalize the subgroup it is paired with."""


class NotAbelianError(NormpropError):
    """An operation requiring an abelian group was given a non-abelian one."""


class NoFixedPointError(NormpropError):
    """The support action had no usable fixed point; indicates a bug."""


class SpecParseError(NormpropError):
    """A group spec or element text could not be parsed."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class InconsistentPresentationError(NormpropError):
    """Metacyclic parameters do not satisfy the consistency congruences."""


class CatalogError(NormpropError):
    """A catalog file could not be read or failed validation."""


class CatalogWarning(UserWarning):
    """Non-fatal catalog issue, e.g. a fingerprint collision between entries."""
