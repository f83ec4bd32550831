"""Exception types and warning categories shared across the package."""


class SpinSyncError(Exception):
    """Base class for all simulator errors."""


class ConfigError(SpinSyncError):
    """Bad run configuration (unknown key, malformed value, invariant violation)."""


class SingularCoupling(SpinSyncError):
    """|X| fell below x_eps: the 1/X interaction prefactor diverges.

    The coupling denominator crosses zero when the weighted mode occupations
    reach the chain sizes; this is a hard error by design (regularizing it
    silently would change the dynamics).
    """

    def __init__(self, t, beta1, beta2, x_value):
        self.t = t
        self.beta1 = beta1
        self.beta2 = beta2
        self.x_value = x_value
        super().__init__(
            f"coupling denominator X={x_value:.3e} at t={t:.6g} "
            f"(beta1={beta1:.6g}, beta2={beta2:.6g})"
        )


class NonFinite(SpinSyncError):
    """A drift term or state entry became non-finite (integrator blow-up)."""

    def __init__(self, t, detail=""):
        self.t = t
        super().__init__(f"non-finite value at t={t:.6g}" + (f": {detail}" if detail else ""))


class PSDViolation(SpinSyncError):
    """Covariance matrix lost positive semidefiniteness beyond tolerance."""

    def __init__(self, t, min_eigenvalue):
        self.t = t
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"covariance min eigenvalue {min_eigenvalue:.3e} at t={t:.6g}"
        )


class DegenerateOrbit(SpinSyncError):
    """Orbit radius below threshold; phase is undefined."""


class DegenerateCovariance(SpinSyncError):
    """Synchronization bracket non-positive (unphysical covariance)."""


class EmptyWindow(SpinSyncError):
    """Requested averaging/extraction window contains no samples."""


class HPBreakdownWarning(UserWarning):
    """|beta_j|^2 reached the validity bound of the bosonic truncation."""
