"""Exception hierarchy.

Every failure mode that can invalidate a certificate is a distinct exception;
nothing is ever signalled through NaN/inf propagation or sentinel values.
"""


class FhitError(Exception):
    """Base class for all library errors."""


# --- interval layer ---------------------------------------------------------

class EmptyInterval(FhitError):
    """Attempt to construct an interval with lo > hi."""


class NonFinite(FhitError):
    """An interval endpoint overflowed or an input was NaN/inf."""


class DivisionByZeroInterval(FhitError):
    """Division by an interval that contains zero."""


class DomainError(FhitError):
    """Argument outside the domain of an elementary function (sqrt, log)."""


# --- transforms and series --------------------------------------------------

class SizeNotPowerOfTwo(FhitError):
    """Grid size is not a power of two (radix-2 requirement)."""


class BadSize(FhitError):
    """Invalid grid size for pad/truncate (not larger, not a power of two)."""


class SymmetryViolation(FhitError):
    """Conjugate symmetry of a real-analytic series fails beyond interval overlap."""


class ExponentOverflow(FhitError):
    """e^{2*pi*|k|*width} exceeds the double range; the strip is too wide for this N."""


class InsufficientDecay(FhitError):
    """Too few usable Fourier modes above the noise floor for a decay fit."""


# --- matrices ---------------------------------------------------------------

class DimensionMismatch(FhitError):
    """Incompatible matrix shapes or grid sizes."""


class SingularGridPoint(FhitError):
    """A pivot interval contains zero while inverting a grid-point matrix."""


class GammaNotContracting(FhitError):
    """The inverse-enclosure residual norm is >= 1; no certified inverse."""


# --- error constants --------------------------------------------------------

class BadStrip(FhitError):
    """Strip pair violates 0 <= rho < rho_hat."""


class OddSize(FhitError):
    """Even grid size required by the simplified 1-d error constant."""


# --- validation -------------------------------------------------------------

class NotContracting(FhitError):
    """Claimed hyperbolic normal form has lambda_s >= 1 or |Lambda_u^-1| >= 1."""


class GapClosed(FhitError):
    """lambda + eps_1 + eps_2 >= 1; the hyperbolicity gap cannot be certified."""


class NoValidRadius(FhitError):
    """No radius satisfies both Newton-Kantorovich inequalities below R."""


class DomainEscape(FhitError):
    """Image enclosure leaves the map's domain."""


# --- solver -----------------------------------------------------------------

class NoConvergence(FhitError):
    """Newton iteration failed to reach the residual tolerance."""


class SmallDivisor(FhitError):
    """A cohomological-equation denominator fell below threshold (near bundle collapse)."""


class ResidualTooLarge(FhitError):
    """Solver state is too rough to export as a validation candidate."""


# --- file formats -----------------------------------------------------------

class ParseError(FhitError):
    """Malformed coefficient file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SizeMismatch(FhitError):
    """Coefficient file body inconsistent with its declared sizes."""
