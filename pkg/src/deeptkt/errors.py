"""Exception types raised across the package."""


class ParameterError(ValueError):
    """Presentation parameters outside the admissible set."""


class StructureError(ValueError):
    """Malformed element (wrong length or exponent out of range)."""


class CapacityError(RuntimeError):
    """Requested computation exceeds the configured enumeration bound."""


class ContractError(ValueError):
    """A precondition on subgroups (index, containment, normality) failed."""


class ConsistencyError(RuntimeError):
    """Internal invariant broken; indicates a bug in the engine."""


class IdentificationError(LookupError):
    """Deep kernel data matches none of the tower-group patterns."""


class DomainError(ValueError):
    """Number-theoretic input outside the supported domain."""
