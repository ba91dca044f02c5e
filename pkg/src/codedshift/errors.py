"""Exception hierarchy. Every domain failure derives from CodedShiftError."""


class CodedShiftError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class EmptyCodeSet(CodedShiftError):
    pass


class DuplicateWord(CodedShiftError):
    def __init__(self, word):
        super().__init__(f"duplicate code word {word!r}")
        self.word = word


class BadSymbol(CodedShiftError):
    def __init__(self, position, symbol=None):
        super().__init__(f"bad symbol {symbol!r} at position {position}")
        self.position = position
        self.symbol = symbol


class EnumeratorUnavailable(CodedShiftError):
    pass


class BudgetExceeded(CodedShiftError):
    def __init__(self, limit):
        super().__init__(f"state budget of {limit} exceeded")
        self.limit = limit


class BadParams(CodedShiftError):
    pass


class CertificateViolation(CodedShiftError):
    pass


class NoBracket(CodedShiftError):
    pass


class TailUnbounded(CodedShiftError):
    pass


class PreconditionFailed(CodedShiftError):
    pass


class EtaNotAboveOne(PreconditionFailed):
    pass


class UniqueDecompositionUnknown(CodedShiftError):
    pass


class RegimeMismatch(CodedShiftError):
    pass


class NotIrreducible(CodedShiftError):
    pass


class ParseError(CodedShiftError):
    pass
