"""Exception types shared across the package.

Each class names one failure mode of the numerical contracts; callers can
catch the narrow type or the builtin base (ValueError / RuntimeError /
IndexError).
"""


class AsymmetricInputError(ValueError):
    """A matrix that must be symmetric is not, beyond tolerance."""


class NoConvergenceError(RuntimeError):
    """An iterative routine exhausted its iteration budget."""


class NotPositiveDefiniteError(ValueError):
    """A matrix that must be positive definite has a non-positive eigenvalue."""


class UnpairedSpectrumError(RuntimeError):
    """Symplectic eigenvalues failed to group into the expected pairs."""


class InvalidModelError(ValueError):
    """Model parameters or a model file violate the model's constraints."""


class UnstableSystemError(ValueError):
    """The potential-minus-squared-coupling matrix is not positive definite."""


class DegenerateParametersError(ValueError):
    """Closed-form angle formulas are undefined for these parameters."""


class IndexOutOfRangeError(IndexError):
    """An oscillator index lies outside the system."""


class EmptySubsystemError(ValueError):
    """A subsystem selection contains no oscillators."""


class CrossBlockNotZeroError(ValueError):
    """The position-momentum cross block must vanish for this operation."""


class DimensionTooLargeError(ValueError):
    """The requested brute-force computation is too large to be exact."""


class SubHeisenbergError(ValueError):
    """A normalized symplectic eigenvalue lies below the 1/2 floor."""


class AlphaOutOfDomainError(ValueError):
    """An entropy order alpha lies outside (0, inf) \\ {1}."""


class SingularMatrixError(ValueError):
    """A determinant-based formula received a singular matrix."""


class ComplexEigenvalueError(RuntimeError):
    """Eigenvalues expected on the real or imaginary axis have drifted off it."""


class OverlappingGroupsError(ValueError):
    """The two groups of a bipartition share an oscillator."""


class DegenerateDesignError(ValueError):
    """A regression abscissa carries no variance; the fit is unidentifiable."""
