"""Exception types shared across the package."""


class ModInvError(Exception):
    """Base class for all library errors."""


class ModulusMismatch(ModInvError):
    """Operands live over different prime fields."""


class DivisionByZero(ModInvError):
    """Division by the zero element of F_p."""


class DimensionMismatch(ModInvError):
    """Operands have incompatible shapes or block counts."""


class ZeroPolynomial(ModInvError):
    """The zero polynomial has no lead monomial."""


class NotInvariant(ModInvError):
    """An operation requiring a fixed point received a non-fixed input."""


class NotMultihomogeneous(ModInvError):
    """Input mixes several multidegrees where a single one is required."""


class NotInDomain(ModInvError):
    """A lattice path outside the admissible classes was supplied."""


class UnmatchedY(ModInvError):
    """The greedy matching failed; signals a path classification bug."""


class RelationFailed(ModInvError):
    """A polynomial identity that must vanish did not; arithmetic bug."""


class DegreeMismatch(ModInvError):
    """A polarisation target degree does not match the source degree."""


class InfeasibleSize(ModInvError):
    """Estimated or actual work exceeds the configured budget."""
