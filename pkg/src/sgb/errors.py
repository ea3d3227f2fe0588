"""Exception types shared across the package."""


class SgbError(Exception):
    """Base class for all package errors."""


class ValidationError(SgbError):
    """An input violates a documented invariant."""


class DomainError(SgbError):
    """An argument lies outside the domain of a formula."""


class DegenerateError(SgbError):
    """Totally geodesic input (S = 0) fed to a formula that divides by sqrt(S)."""


class NotApplicableError(SgbError):
    """A check's precondition fails, so the inequality says nothing."""


class StepError(SgbError):
    """ODE step size too coarse for the requested interval."""


class GeometryError(SgbError):
    """Degenerate triangle geometry (non-positive Heron area)."""


class FitError(SgbError):
    """Too few one-ring neighbors for a quadratic surface fit."""


class OrientationError(SgbError):
    """Mesh normals cannot be oriented consistently."""


class ConvergenceError(SgbError):
    """Iterative eigensolver exceeded its iteration cap."""


class IllConditionedError(SgbError):
    """Mass matrix dynamic range too large for reliable iteration."""


class SizeError(SgbError):
    """Problem dimension exceeds the dense-solver cap."""


class DeflationError(SgbError):
    """Constant mode leaked through deflation; returned eigenvalue is spurious."""
