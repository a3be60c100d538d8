"""Exception types raised by the library and mapped to CLI exit codes."""


class EntangleTensorError(Exception):
    """Base class for all library errors."""


class DomainError(EntangleTensorError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(EntangleTensorError):
    """An enumeration would exceed its configured budget."""


class SingularPointError(EntangleTensorError, ArithmeticError):
    """The requested quantity diverges or is undefined at this point."""


class BranchError(EntangleTensorError, ArithmeticError):
    """A measure is not strictly monotonic on the requested grid."""
