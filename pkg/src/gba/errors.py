"""Exception types raised across the toolkit."""


class GBAError(Exception):
    pass


class NonPrimeError(GBAError, ValueError):
    pass


class CapExceededError(GBAError):
    pass


class SpecMismatchError(GBAError, ValueError):
    pass


class FieldDivisionByZero(GBAError, ZeroDivisionError):
    pass


class WrongCharacteristicError(GBAError, ValueError):
    pass


class WrongFieldShapeError(GBAError, ValueError):
    pass


class NotClosedError(GBAError):
    pass


class UnknownNameError(GBAError, KeyError):
    pass


class NotASubgroupError(GBAError, ValueError):
    pass


class PreconditionError(GBAError, ValueError):
    pass


class LengthMismatchError(GBAError, ValueError):
    pass


class NoSolutionInFieldError(GBAError):
    pass


class NotApplicableError(GBAError):
    pass


class EvenQError(GBAError, ValueError):
    pass


class MultipleInvolutionClassesError(GBAError):
    pass


class UnknownScenarioError(GBAError, KeyError):
    pass


class UnsupportedFormatError(GBAError, ValueError):
    pass
