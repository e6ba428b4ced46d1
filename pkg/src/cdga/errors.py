"""Exception types shared across the toolkit."""


class CdgaError(Exception):
    """Base class for all errors raised by this package."""


# --- element / algebra arithmetic ---

class UnknownGenerator(CdgaError):
    pass


class MixedAlgebras(CdgaError):
    pass


class MissingImage(CdgaError):
    pass


class ObjectMismatch(CdgaError):
    pass


# --- dg-structure ---

class NotASubcomplex(CdgaError):
    pass


class NotPointed(CdgaError):
    pass


class HomotopyInvalid(CdgaError):
    pass


# --- truncated linear algebra ---

class TruncationInsufficient(CdgaError):
    """The enumerated monomial basis is not closed under the differential."""


class NoSolutionInTruncation(CdgaError):
    """No solution found within the truncated basis.

    This certifies failure at the given truncation only; it is not a proof
    that no solution exists in the untruncated algebra.
    """


class SourceNotFiniteType(CdgaError):
    pass


# --- factorization ---

class WindowTooSmall(CdgaError):
    pass


class StageBudgetExhausted(CdgaError):
    pass


# --- augmentation tools ---

class RequiresIntegerGrading(CdgaError):
    pass


class GridTooLarge(CdgaError):
    pass


# --- contact front end ---

class NonPositiveDegree(CdgaError):
    pass


class InputError(CdgaError):
    """Input-file error carrying a source location."""

    def __init__(self, msg, line=None, col=None):
        super().__init__(msg)
        self.msg = msg
        self.line = line
        self.col = col

    def __str__(self):
        if self.line is None:
            return self.msg
        if self.col is None:
            return "line %d: %s" % (self.line, self.msg)
        return "line %d, col %d: %s" % (self.line, self.col, self.msg)


class DslSyntaxError(InputError):
    pass


class DuplicateName(InputError):
    pass


class UndeclaredGenerator(InputError):
    pass


class ActionIncreaseViolation(InputError):
    pass


class LabelLeak(InputError):
    pass


class D2Violation(InputError):
    pass
