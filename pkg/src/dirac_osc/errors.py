"""Exception types raised by the library."""


class DomainError(ValueError):
    """Invalid quantum-number combination or out-of-domain argument."""


class UnsupportedOrderError(DomainError):
    """Spherical harmonic order outside the stretched pair {l, l-1}."""


class NoPartnerError(DomainError):
    """Ground-family state (A = 0) whose small component vanishes."""


class TruncationError(RuntimeError):
    """Requested accuracy cannot be reached within the basis cap."""


class ContractError(ValueError):
    """Operation called on a state or config it does not accept."""
