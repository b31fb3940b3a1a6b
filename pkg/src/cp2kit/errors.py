"""Exception types raised across the toolkit."""


class CP2KitError(ValueError):
    """Base class for all toolkit errors."""


class NotAGroup(CP2KitError):
    pass


class ClosureCapExceeded(CP2KitError):
    pass


class InvalidAction(CP2KitError):
    pass


class NotASubgroup(CP2KitError):
    pass


class NotNormal(CP2KitError):
    pass


class NotAPGroup(CP2KitError):
    pass


class EvenPrime(CP2KitError):
    pass


class PreconditionNotCP2(CP2KitError):
    pass


class ThresholdExceeded(CP2KitError):
    """A computation was refused because the group (or its lattice) is too large."""


class InvalidParameters(CP2KitError):
    pass
