"""Exception hierarchy for lmkit."""


class LMKitError(Exception):
    """Base class for every error raised by lmkit."""


class InvalidInput(LMKitError, ValueError):
    pass


class UnknownElement(InvalidInput):
    pass


class CycleError(InvalidInput):
    """The reflexive-transitive closure of the given pairs is not antisymmetric."""


class NotALattice(InvalidInput):
    pass


class NotDistributive(InvalidInput):
    pass


class InvalidN(InvalidInput):
    pass


class ArityMismatch(InvalidInput):
    pass


class AlgebraMismatch(InvalidInput):
    pass


class NotSemimodal(InvalidInput):
    pass


class ComplementNotSemimodal(NotSemimodal):
    pass


class NotAFilter(InvalidInput):
    pass


class NotBoolean(InvalidInput):
    pass


class NotAHomomorphism(InvalidInput):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(LMKitError):
    """An algebra or space failed its axioms.

    ``violations`` holds the report entries that triggered the error.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ParseError(LMKitError):
    pass


class TheoremViolation(LMKitError):
    """Two computations that must agree did not.

    Raised only when a checked equivalence fails on a concrete instance,
    which signals either a broken input or a bug.
    """

    def __init__(self, theorem, message, witness=None):
        super().__init__(f"{theorem}: {message}")
        self.theorem = theorem
        self.witness = witness


class L6EquivalenceFailure(TheoremViolation):
    def __init__(self, message, witness=None):
        super().__init__("L6", message, witness)


class RoundTripFailure(TheoremViolation):
    def __init__(self, message, witness=None):
        super().__init__("duality", message, witness)
