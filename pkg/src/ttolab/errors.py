"""Exception types raised across the library.

Every error that callers are expected to catch derives from
:class:`TtoLabError`, so ``except TtoLabError`` is the catch-all for
"this input or computation is bad, but the process is fine".
"""


class TtoLabError(Exception):
    """Base class for all library errors."""


# ---- finite Blaschke products -------------------------------------------

class ZeroOutsideDisk(TtoLabError):
    """A prescribed zero lies outside (or numerically on) the unit circle."""


class BadPhase(TtoLabError):
    """The unimodular phase constant is not of modulus one."""


class EmptyProduct(TtoLabError):
    """A Blaschke product needs at least one zero."""


class PoleHit(TtoLabError):
    """Evaluation point coincides with a pole 1/conj(a)."""


class BadRate(TtoLabError):
    """Family rate must lie strictly between 0 and 1."""


class BadPoint(TtoLabError):
    """Accumulation point must lie on the unit circle."""


# ---- model-space quadrature ----------------------------------------------

class QuadratureStall(TtoLabError):
    """Grid doubling hit its cap before the Gram defect certified.

    Signals zeros clustered too close to the circle for a uniform grid
    of at most 2**20 points to resolve.
    """


class BasePointOutside(TtoLabError):
    """Reproducing-kernel base point lies outside the closed disk."""


class BasePointOnCircle(TtoLabError):
    """Kernel density requires an interior base point."""


class GridMismatch(TtoLabError):
    """Inner product of grid vectors with different lengths."""


# ---- symbols ---------------------------------------------------------------

class BadDegree(TtoLabError):
    """Fourier/Cesaro order must be at least one."""


class WrongJumpSet(TtoLabError):
    """Piecewise reduction needs exactly one jump, located at 1."""


# ---- operators -------------------------------------------------------------

class MethodMismatch(TtoLabError):
    """Functional calculus requested for a non-polynomial symbol."""


class BadAlpha(TtoLabError):
    """Clark parameter must be unimodular."""


class TruncationTooSmall(TtoLabError):
    """Hankel truncation order below the required floor."""


# ---- spectral --------------------------------------------------------------

class NoConvergence(TtoLabError):
    """Dense eigenvalue/singular value iteration failed to converge."""


class UnknownIdentity(TtoLabError):
    """verify_identity called with an unrecognized identity name."""


# ---- reporting / CLI --------------------------------------------------------

class EmptyReport(TtoLabError):
    """Plot requested from a report that carries no plottable rows."""
