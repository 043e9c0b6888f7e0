"""Exception hierarchy shared by every workbench module.

All errors are value-level facts about exact computations: either an input
violates a contract, or the requested answer is not determined by the data
available at the current precision / horizon.  Nothing here is recoverable
by retrying; callers either raise their own budget or report the verdict.
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class PrecisionExhausted(WorkbenchError):
    """The answer is not determined by the coefficients known at this precision."""


class RamifiedInput(WorkbenchError):
    """A ramification-one series was required but ram > 1 was supplied."""


class NegativeSupport(WorkbenchError):
    """The series has support below 0 where a polynomial part was required."""


class NegativeValuation(WorkbenchError):
    """Residue requested of an element with negative valuation."""


class NotARoot(WorkbenchError):
    """Certificate attachment failed: the evaluation has decidable nonzero valuation."""


class Uncertified(WorkbenchError):
    """A degree or conjugation certificate was required but is absent."""


class NoRootOfUnity(WorkbenchError):
    """The base field lacks the primitive root of unity needed for a twist."""


class NotPcs(WorkbenchError):
    """A sequence prefix violates the pseudo-Cauchy condition.

    Attribute ``index`` points at the first offending position.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"pseudo-Cauchy condition fails at index {index}")


class HorizonExceeded(WorkbenchError):
    """No verdict fired within the materialized horizon; raise it or accept a bound."""


class ZeroPolynomial(WorkbenchError):
    """The zero polynomial was passed where a nonzero one is required."""


class DeltaTooLarge(WorkbenchError):
    """Precondition delta(f) < alpha fails for an approximation request."""


class UnsupportedKind(WorkbenchError):
    """The operation is provably impossible for this extension kind.

    Carries a ``citation`` tag naming the obstruction so reports can teach it.
    """

    def __init__(self, message, citation):
        self.citation = citation
        super().__init__(message)


class ParseError(WorkbenchError):
    """Malformed textual input; message carries position information."""
