"""Exception hierarchy shared across the package."""


class ExactCouplesError(Exception):
    """Base class for all package errors."""


class BackendError(ExactCouplesError):
    """A backend produced data violating its own contract (internal bug)."""


class MorphismError(ExactCouplesError):
    """Invalid morphism data (shape mismatch, filtration violation, ...)."""


class MediationError(ExactCouplesError):
    """A universal-property mediation failed or was not unique."""


class NotStrictError(ExactCouplesError):
    """An operation required a strict morphism and got a non-strict one."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotKernelError(ExactCouplesError):
    """Semistability was asked of a morphism that is not a kernel."""


class CoupleValidationError(ExactCouplesError):
    """An alleged exact couple fails one of the exactness equalities."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(v["message"] for v in self.violations))


class NotDifferentialError(ExactCouplesError):
    """Cohomology was asked of an endomorphism with nonzero square."""


class GenerationError(ExactCouplesError):
    """A random generator failed to produce a valid instance."""


class DecorationError(ExactCouplesError):
    """A filtration decoration broke strictness of a couple morphism."""

    def __init__(self, message, morphism_name=None, level=None):
        super().__init__(message)
        self.morphism_name = morphism_name
        self.level = level


class DocumentError(ExactCouplesError):
    """Malformed interchange document."""
