"""Exception types shared across the toolkit."""


class BeableKitError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(BeableKitError):
    """Operands live on different ambient dimensions."""


class NotHermitian(BeableKitError):
    """Operation requires a self-adjoint matrix."""


class NotProjection(BeableKitError):
    """Operation requires an orthogonal projection."""


class NotUnitVector(BeableKitError):
    """Operation requires a unit vector."""


class NotAbelian(BeableKitError):
    """Operation requires an abelian operator algebra."""


class NotContained(BeableKitError):
    """A required span containment between algebras fails."""


class GenericityFailure(BeableKitError):
    """Generic-element construction failed after all retries.

    Signals a pathological interplay between the input and the tolerances,
    not a routine bad argument.
    """


class NotCommutingWithState(BeableKitError):
    """Privileged generators must commute with the density operator."""


class GeneratorsNotMutuallyCommuting(BeableKitError):
    """A privileged generator family must mutually commute."""


class ExtraNotAdmissible(BeableKitError):
    """Extra commuting elements fall outside the admissible compressed algebra."""


class SeedNotBeable(BeableKitError):
    """Seed algebra for a maximal-beable extension is not itself beable."""


class DegenerateAngles(BeableKitError):
    """Basis angles violate the genericity preconditions of a scenario."""


class VerificationError(BeableKitError):
    """A theorem-backed consistency check failed numerically."""


class UnknownDemo(BeableKitError):
    """No built-in demo with the requested name."""


class ParseError(BeableKitError):
    """Scenario file is not well-formed."""


class ValidationError(BeableKitError):
    """Scenario content violates an invariant; the message names the invariant."""
