"""Exception types raised across the toolkit."""


class TlatError(Exception):
    """Base class for every error raised by tlat."""


class CycleError(TlatError):
    """The supplied relations force x <= y <= x for distinct x, y."""

    def __init__(self, x, y):
        super().__init__(f"order relations imply {x} <= {y} <= {x}")
        self.witness = (x, y)


class DuplicateLabel(TlatError):
    pass


class UnknownElement(TlatError):
    pass


class NotALattice(TlatError):
    pass


class NotDistributive(TlatError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class MissingCertificate(TlatError):
    """A pair declared consistent has no meet/join in the carrier."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class ConflictError(TlatError):
    def __init__(self, msg, derivation=None):
        super().__init__(msg)
        self.derivation = derivation


class NotComparable(TlatError):
    pass


class UnknownGenerator(TlatError):
    pass


class NonMonotoneValuation(TlatError):
    pass


class SizeGuardExceeded(TlatError):
    def __init__(self, msg, size=None, limit=None):
        super().__init__(msg)
        self.size = size
        self.limit = limit


class IndexOutOfRange(TlatError):
    pass


class LengthMismatch(TlatError):
    pass


class NotACongruence(TlatError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class DepthExceeded(TlatError):
    """The staged construction ran out of depth before closing up.

    ``partial`` holds the last stage reached.
    """

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class NotStabilized(TlatError):
    pass


class ParseError(TlatError):
    def __init__(self, msg, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + msg)
        self.line = line
        self.column = column
