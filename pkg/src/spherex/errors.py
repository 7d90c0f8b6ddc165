"""Exception hierarchy shared by all modules."""


class SpherexError(Exception):
    """Base class for every error raised by this package."""


class DatumError(SpherexError):
    """Input data violates a structural invariant."""


class CapExceeded(SpherexError):
    """Group enumeration passed its hard cap (non-finite input slipped in)."""


class NoDecomposition(DatumError):
    """A claimed spherical root is neither a positive root nor a sum of two
    strongly orthogonal positive roots."""


class AmbiguousDecomposition(DatumError):
    """More than one strongly orthogonal pair survives the simple-coroot
    condition."""


class TypeNWithoutDouble(DatumError):
    """A positive root outside the weight lattice whose double is also
    outside (the type-N test fails)."""


class InconsistentCoroot(DatumError):
    """The two associated roots of a type-G spherical root restrict to
    different functionals on the weight lattice."""


class TypeNPresent(DatumError):
    """The dual group is undefined because a spherical root has type N."""

    def __init__(self, root):
        self.root = root
        super().__init__(
            f"no dual group: spherical root {list(root)} has type N"
        )


class InvalidParabolicType(DatumError):
    """The weight lattice does not annihilate the marked simple coroots."""


class ActionNotDefined(DatumError):
    """The supplied pinned automorphism does not preserve the spherical
    roots."""


class NegativeMultiplicity(DatumError):
    """Removing the dual-group adjoint weights from the degree-2 layer left a
    negative multiplicity."""


class MalformedFan(DatumError):
    """Two cones of a fan do not intersect in a common face."""


class NotSmoothCone(SpherexError):
    """Operation requires a smooth cone."""


class NotWavefront(SpherexError):
    """Operation requires a wavefront datum."""


class PoleAtSpecialization(SpherexError):
    """A Satake specialization makes an Euler factor vanish identically."""


class RegularizationMismatch(SpherexError):
    """Declared zeta-regularization order exceeds the actual vanishing
    order."""


class MissingOracleEntry(SpherexError):
    """A root-number oracle lacks an entry for a required constituent pair."""


class OddDimension(DatumError):
    """A representation that must have even dimension does not."""


class NotASubgroup(DatumError):
    """A claimed subgroup is not closed under the group law."""


class InconsistentHeartSequence(DatumError):
    """The supplied heart data does not form the required exact sequence."""


class ParseError(SpherexError):
    """A data file failed schema validation."""

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
