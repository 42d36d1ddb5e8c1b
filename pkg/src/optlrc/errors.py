"""Exception hierarchy shared by every optlrc module."""


class LRCError(Exception):
    """Base class for all library errors."""


class ParamError(LRCError, ValueError):
    """Code parameters (or a field descriptor) violate a construction constraint."""


class FieldMismatchError(LRCError, ValueError):
    """Operands do not belong to the same field."""


class ZeroInverseError(LRCError, ZeroDivisionError):
    """Attempted to invert the zero element."""


class ShapeError(LRCError, ValueError):
    """Matrix or vector dimensions are incompatible."""


class SingularMatrixError(LRCError, ArithmeticError):
    """A square system has no unique solution."""


class TooManyLocalErasures(LRCError):
    """A repair group lost more symbols than its local code can rebuild."""

    def __init__(self, group, erased, tolerance):
        self.group = group
        self.erased = tuple(sorted(erased))
        self.tolerance = tolerance
        super().__init__(
            f"group {group} lost {len(self.erased)} symbols {list(self.erased)}; "
            f"the local code tolerates at most {tolerance}"
        )


class RankDeficient(LRCError):
    """The available symbols do not span the message space."""

    def __init__(self, message, erased=()):
        self.erased = tuple(sorted(erased))
        super().__init__(message)


class CapExceeded(LRCError):
    """A combinatorial enumeration exhausted its configured budget."""


class TooLarge(LRCError):
    """The instance is too large for an exhaustive check."""


class ChecksumMismatch(LRCError):
    """Reconstructed data does not match the recorded checksum."""


class ManifestError(LRCError):
    """A shard directory has a missing or malformed manifest or shard."""
