"""Exception hierarchy shared by all modules."""


class TreeSetError(Exception):
    """Base class for every error raised by this package."""


class UnknownElement(TreeSetError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvolutionClash(TreeSetError):
    pass


class NotAPartialOrder(TreeSetError):
    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class NotBijective(TreeSetError):
    pass


class InvolutionNotPreserved(TreeSetError):
    pass


class OrderNotPreserved(TreeSetError):
    pass


class DoubleOriented(TreeSetError):
    pass


class InconsistentInput(TreeSetError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class InconsistentOrientation(InconsistentInput):
    pass


class CoTrivialElement(TreeSetError):
    def __init__(self, message, element=None, witness=None):
        super().__init__(message)
        self.element = element
        self.witness = witness


class PinTrivial(TreeSetError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PinNotMaximalInP(TreeSetError):
    pass


class TooLarge(TreeSetError):
    pass


class NotATreeSet(TreeSetError):
    pass


class NotRegular(TreeSetError):
    pass


class NotSplitting(TreeSetError):
    pass


class NotASubset(TreeSetError):
    pass


class InvalidModel(TreeSetError):
    pass


class InvalidTree(TreeSetError):
    pass


class ConstructionFailure(TreeSetError):
    """A construction produced an object violating a proven property.

    This signals a bug in the implementation; ``certificate`` holds the
    offending data.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InvalidIndex(TreeSetError):
    pass


class NotTame(TreeSetError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidCoordinate(TreeSetError):
    pass


class UnknownDescriptor(TreeSetError):
    pass


class InvalidIntervalSet(TreeSetError):
    pass


class ParseError(TreeSetError):
    def __init__(self, message, path=None, line=None, column=None):
        super().__init__(message)
        self.path = path
        self.line = line
        self.column = column


class SchemaError(TreeSetError):
    pass


class InvariantViolation(TreeSetError):
    pass
