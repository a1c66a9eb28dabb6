"""Exception hierarchy for ffmzv.

Every failure mode that callers are expected to handle gets its own class so
that tests and the CLI can dispatch on type rather than on message text.
"""


class FfmzvError(Exception):
    """Base class for all ffmzv errors."""


# --- field construction ---

class NonPrimeP(FfmzvError):
    pass


class ReducibleModulus(FfmzvError):
    pass


class DegreeMismatch(FfmzvError):
    pass


# --- polynomial / rational arithmetic ---

class VariableMismatch(FfmzvError):
    pass


class FieldMismatch(FfmzvError):
    pass


class DivisionByZero(FfmzvError, ZeroDivisionError):
    pass


class NotTwistDivisible(FfmzvError):
    """The element has no q-th root in F_q[u][t] at this root depth."""


# --- Laurent series ---

class UnknownLeadingTerm(FfmzvError):
    """Series is zero to its precision; inversion is impossible."""


class EmptyOverlap(FfmzvError):
    """No known coefficient in the common exponent range; raise precision."""


# --- Carlitz quantities ---

class BracketZeroIndex(FfmzvError):
    """[0] is undefined."""


class NonpositiveIndex(FfmzvError):
    pass


class WeightNotEven(FfmzvError):
    """(q-1) does not divide the requested weight."""


class WeightEven(FfmzvError):
    """(q-1) divides the weight; the linear-relation display does not apply."""


# --- enumeration / recurrences ---

class BudgetExceeded(FfmzvError):
    pass


class DenominatorNotCleared(FfmzvError):
    """Internal consistency failure: a denominator that must cancel did not."""


# --- CPY systems ---

class DepthTooSmall(FfmzvError):
    pass


class RootDepthMismatch(FfmzvError):
    pass


class BadPPower(FfmzvError):
    pass


class QTooSmall(FfmzvError):
    pass


class ConditionViolated(FfmzvError):
    """A stated hypothesis on the parameters fails."""


class DigitSumTooLarge(FfmzvError):
    pass


class DegenerateA(FfmzvError):
    """a = 0: no ratio can be extracted."""


# --- verification ---

class NotCharTwo(FfmzvError):
    pass


class UnsupportedParams(FfmzvError):
    pass
