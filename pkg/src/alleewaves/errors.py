"""Exception types shared across the package."""


class AlleeWavesError(Exception):
    """Base class for all package-specific errors."""


class PoleError(AlleeWavesError):
    """Evaluation requested too close to a zero of the denominator G.

    Attributes:
        xi: the offending evaluation point
        xi_pole: nearest pole location (None if not located)
    """

    def __init__(self, xi, xi_pole=None):
        self.xi = xi
        self.xi_pole = xi_pole
        near = f", nearest pole at xi={xi_pole:.6g}" if xi_pole is not None else ""
        super().__init__(f"denominator vanishes near xi={xi:.6g}{near}")


class SingularParameterError(AlleeWavesError, ValueError):
    """A parameter sits on a removable-structure boundary (e.g. alpha0=0 in Set B)."""


class CaseMismatchError(AlleeWavesError, ValueError):
    """The requested case tag is inconsistent with the sign of lambda^2 - 4*mu."""


class StabilityError(AlleeWavesError):
    """Time step violates the explicit diffusion stability bound."""


class BlowUpError(AlleeWavesError):
    """Integration produced a non-finite value."""

    def __init__(self, t, x):
        self.t = t
        self.x = x
        super().__init__(f"non-finite field value at t={t:.6g}, x={x:.6g}")


class TrackingError(AlleeWavesError):
    """Level-crossing tracker failed on a snapshot."""


class NoConvergenceError(AlleeWavesError):
    """Root finding failed from every start; carries the best residual seen."""

    def __init__(self, best_residual):
        self.best_residual = best_residual
        super().__init__(f"no root converged; best residual norm {best_residual:.3e}")
