"""Exception types raised on invalid states, parameters, and files."""


class CohboundError(ValueError):
    """Base class for every validation error raised by this package."""


class NonPowerOfTwoLength(CohboundError):
    """Amplitude vector length is not 2**n for integer n >= 1."""


class ZeroNorm(CohboundError):
    """Amplitude vector has zero norm."""


class NormTooFarFromOne(CohboundError):
    """Amplitude vector norm deviates from 1 beyond the input tolerance."""


class NonFiniteEntry(CohboundError):
    """NaN or Inf found where a finite number is required."""


class DimensionOverflow(CohboundError):
    """Qubit count exceeds the configured dense-storage cap."""


class EmptyKeepSet(CohboundError):
    """Partial trace asked to keep no qubits."""


class IndexOutOfRange(CohboundError):
    """Qubit index outside [0, n_qubits)."""


class NormalizationViolation(CohboundError):
    """Schmidt coefficients do not satisfy sum of squares = 1."""


class InvalidPermutation(CohboundError):
    """Ordering is not a permutation of range(n_qubits)."""


class DomainError(CohboundError):
    """Scalar argument outside the stated domain."""


class InvalidM(CohboundError):
    """Split index m outside its valid range for the bound."""


class WrongArity(CohboundError):
    """Bound applied to a qubit count it is not defined for."""


class ArityMismatch(CohboundError):
    """Per-index parameter list has the wrong length."""


class NoValidParams(CohboundError):
    """No parameter choice makes the bound's conditions hold."""


class TooManyQubits(CohboundError):
    """Exhaustive ordering search refused above the configured cap."""


class UnsupportedPattern(CohboundError):
    """Condition-pattern descriptor outside the implemented families."""


class StateFormatError(CohboundError):
    """State file does not match the documented JSON layout."""
