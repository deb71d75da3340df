"""Exception types shared across the package."""


class BC1Error(Exception):
    """Base class for all errors raised by this package."""


class VariableMismatch(BC1Error):
    """Polynomials over different variables were mixed."""


class NonDivisible(BC1Error):
    """Exact division failed; the quotient is not a Laurent polynomial."""


class DomainError(BC1Error):
    """An argument is outside the declared domain of the operation."""


class DegenerateSpectrum(BC1Error):
    """Eigenvalue collision on the monomial flag and no usable pairing."""


class PochhammerZero(BC1Error):
    """A Pochhammer symbol in a normalization factor vanished."""


class UnknownName(BC1Error):
    """Operator name not in the registry."""


class BadCone(BC1Error):
    """Shift not in the cone required for a raising/lowering operator."""


class OutOfDomain(BC1Error):
    """Label outside the domain of an action table (the action is zero)."""


class LeadingFormMismatch(BC1Error):
    """Top coefficient does not have the leading form of a shift operator."""


class BlockFormulaMismatch(BC1Error):
    """Composite matrix shift operator disagrees with its block formula."""


class NotTransmuting(BC1Error):
    """Operator fails the transmutation identity for the claimed shift."""


class NotAShiftOperator(BC1Error):
    """Order reduction left a nonzero residual; input is not a shift operator."""


class NotInCommutant(BC1Error):
    """Operator does not commute with the invariant second-order operator."""


class PoleAtInfinity(BC1Error):
    """A coefficient has no finite value at z = infinity."""


class IncompatibleConstantTerm(BC1Error):
    """Constant term is not in the image of the commutant."""


class GammaPole(BC1Error):
    """A telescoped Gamma ratio hit a pole."""
