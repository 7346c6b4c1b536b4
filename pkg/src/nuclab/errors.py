"""Exception types shared across the toolkit."""


class NuclabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(NuclabError, ValueError):
    """An argument lies outside an operation's mathematical domain."""


class SingularPotentialError(DomainError):
    """A formula divides by a vanishing potential value."""


class NumericError(NuclabError, RuntimeError):
    """A numerical routine failed to converge or produced non-finite values."""


class NoFalseVacuumError(NuclabError, RuntimeError):
    """The potential is not double-welled: fewer than two minima were found."""


class ContractViolationError(NuclabError, ValueError):
    """An input object violates its documented contract (e.g. an un-normalized wave functional)."""


class ConfigError(NuclabError, ValueError):
    """A run configuration is invalid."""
