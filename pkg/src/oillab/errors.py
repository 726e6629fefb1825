"""Exception hierarchy shared by every module."""


class OilLabError(Exception):
    """Base class for all library errors."""


class InputError(OilLabError, ValueError):
    """Malformed or out-of-range input."""


class CycleDetected(InputError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"cover relation has a cycle: {' -> '.join(map(str, self.cycle))}")


class DuplicateCover(InputError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"duplicate cover {self.pair}")


class NotALattice(OilLabError):
    def __init__(self, pair, reason):
        self.pair = tuple(pair)
        self.reason = reason
        super().__init__(f"pair {self.pair}: {reason}")


class SizeLimitExceeded(OilLabError):
    def __init__(self, what, size, cap):
        self.what, self.size, self.cap = what, size, cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotAnIdeal(OilLabError):
    def __init__(self, which, witness):
        self.which = which
        self.witness = witness
        super().__init__(f"ideal {which} is not closed: witness cover {witness}")


class NotDistributive(OilLabError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"lattice is not distributive: witness {witness}")


class NotModular(OilLabError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"function is not modular: witness pair {witness}")


class PreconditionFailed(OilLabError):
    def __init__(self, name, witness=None):
        self.name = name
        self.witness = witness
        super().__init__(f"precondition {name!r} failed (witness {witness})")


class InternalInvariantViolated(OilLabError, AssertionError):
    """A construction left the set it is supposed to stay in (a bug, not bad input)."""


class ClosureViolated(InternalInvariantViolated):
    pass


class CountMismatch(InternalInvariantViolated):
    pass


class DivisibilityFailed(InternalInvariantViolated):
    pass


class Mismatch(OilLabError):
    def __init__(self, index, expected, actual):
        self.index, self.expected, self.actual = index, expected, actual
        super().__init__(f"index {index}: expected {expected}, got {actual}")


class NotComparable(InputError):
    pass


class NotStrict(InputError):
    pass


class NotWellIndexed(InputError):
    pass


class NotPositive(InputError):
    pass


class OutOfBounds(InputError):
    def __init__(self, index, message=""):
        self.index = index
        super().__init__(message or f"table entry {index} out of bounds")


class NotAdmissible(InputError):
    pass


class InvalidRGF(InputError):
    pass


class NotStandardForm(InputError):
    pass


class Infeasible(InputError):
    pass


class UnknownFamily(InputError):
    pass


class TooShort(InputError):
    pass


class InvalidPattern(InputError):
    pass
