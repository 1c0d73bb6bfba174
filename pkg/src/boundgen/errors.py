"""Exception taxonomy shared by every module.

Each exception carries a stable ``code`` used by the command-line driver
when it reports failures as JSON.
"""


class BoundGenError(Exception):
    code = "error"

    def __init__(self, message="", **data):
        super().__init__(message)
        self.data = data


class ZeroPolynomial(BoundGenError):
    code = "ZeroPolynomial"


class NotAField(BoundGenError):
    code = "NotAField"


class DivByZero(BoundGenError, ZeroDivisionError):
    code = "DivByZero"


class FieldMismatch(BoundGenError):
    code = "FieldMismatch"


class NotInvertible(BoundGenError):
    code = "NotInvertible"


class NotSplit(BoundGenError):
    code = "NotSplit"

    def __init__(self, message="", factor=None, **data):
        super().__init__(message, **data)
        self.factor = factor


class NotUnipotent(BoundGenError):
    code = "NotUnipotent"


class ZeroElement(BoundGenError):
    code = "ZeroElement"


class VarMismatch(BoundGenError):
    code = "VarMismatch"


class BadTruncation(BoundGenError):
    code = "BadTruncation"


class DegenerateResultant(BoundGenError):
    code = "DegenerateResultant"


class IndexOutOfRange(BoundGenError):
    code = "IndexOutOfRange"


class DimensionMismatch(BoundGenError):
    code = "DimensionMismatch"


class TooManyExceptions(BoundGenError):
    code = "TooManyExceptions"


class NoSuitableEigenvalue(BoundGenError):
    code = "NoSuitableEigenvalue"


class LemmaViolation(BoundGenError):
    code = "LemmaViolation"


class NoPointFound(BoundGenError):
    code = "NoPointFound"


class ZeroWitness(BoundGenError):
    code = "ZeroWitness"


class NotRegular(BoundGenError):
    code = "NotRegular"


class ParseError(BoundGenError):
    code = "parse"
