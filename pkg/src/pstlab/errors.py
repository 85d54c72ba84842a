"""Exception hierarchy for pstlab."""


class PstLabError(Exception):
    """Base class for all pstlab errors."""


class NonSimpleSpectrum(PstLabError):
    """Spectrum contains duplicate (or nearly duplicate) eigenvalues."""


class NotSymmetric(PstLabError):
    """Spectrum is not symmetric about zero."""


class NotAdmissible(PstLabError):
    """Spectrum does not satisfy the perfect-state-transfer gap condition."""


class IncommensurableGaps(PstLabError):
    """No rational rescaling of the spectrum exists within tolerance."""


class BreakdownError(PstLabError):
    """Orthogonal-polynomial recurrence broke down (norm underflow)."""


class DomainError(PstLabError):
    """Arguments outside the domain of a closed-form expression."""


class ConvergenceError(PstLabError):
    """Iterative eigensolver failed to converge within the sweep cap."""


class NonIntegerFrequency(PstLabError):
    """Cosine series has a non-integer frequency; no polynomial form exists."""


class NonIntegerSpectrum(PstLabError):
    """Operation requires an exact integer spectrum."""


class InvalidPolynomial(PstLabError):
    """Degenerate polynomial (identically zero) where a nonzero one is required."""


class NotIsolating(PstLabError):
    """Interval does not isolate exactly one root."""


class NumericUncertain(PstLabError):
    """Numeric scan found a near-tangency it cannot certify either way."""
