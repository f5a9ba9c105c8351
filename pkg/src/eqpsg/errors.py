"""Exception types shared across the package."""


class EqpsgError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(EqpsgError):
    """Syntax error in a polynomial, family file, or formula.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonPositiveGeneratorError(EqpsgError):
    """A generator evaluated outside N^m \\ {0}; n is below the family's valid range."""

    def __init__(self, n, index, value):
        super().__init__(
            f"generator {index + 1} evaluates to {value} at n={n}; "
            "generators must be nonzero with nonnegative coordinates"
        )
        self.n = n
        self.index = index
        self.value = value


class NotNumericalError(EqpsgError):
    """Invariant requested for a semigroup whose generators have gcd > 1."""


class NotMemberError(EqpsgError):
    def __init__(self, value):
        super().__init__(f"{value} is not an element of the semigroup")
        self.value = value


class ResourceLimitError(EqpsgError):
    """A computation was refused because its predicted size exceeds a cap."""


class EmptyComplexError(EqpsgError):
    """Homology of the empty complex requested."""


class MissingCapError(EqpsgError):
    """Coarse Betti numbers in ambient dimension > 1 require a degree cap."""


class OddDegreeError(EqpsgError):
    """The four-generator unbounded-Betti family requires an even degree."""


class VerificationError(EqpsgError):
    """A structural check that should hold failed; names the witnesses."""


class BoundViolationError(EqpsgError):
    """A proven degree or cardinality bound was violated (implementation bug)."""


class InsufficientDataError(EqpsgError):
    """Too few sample points to search for a quasi-polynomial fit."""


class BelowOnsetError(EqpsgError):
    def __init__(self, n, onset):
        super().__init__(f"n={n} is below the fit onset {onset}")


class QuantifiedParameterError(EqpsgError):
    """The parameter symbol n may not be quantified."""


class UnboundVariableError(EqpsgError):
    def __init__(self, name):
        super().__init__(f"variable {name!r} has no assigned value")
        self.name = name


class UnknownBuiltinError(EqpsgError):
    def __init__(self, name):
        super().__init__(f"unknown builtin formula {name!r}")
