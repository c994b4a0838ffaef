"""Exception hierarchy shared by all modules."""


class SpinlabError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(SpinlabError, ValueError):
    pass


class NumericalFailure(SpinlabError, ArithmeticError):
    pass


class PoleProximityError(NumericalFailure):
    """Trial energy sits on a pole of the spin-down Green function."""

    def __init__(self, energy, pole, tol):
        self.energy = energy
        self.pole = pole
        self.tol = tol
        super().__init__(
            f"E={energy!r} lies within {tol:g} of Green-function pole {pole!r}"
        )


class PerturbationBreakdown(NumericalFailure):
    """Vanishing unperturbed gap between ``sigma`` and ``sigma_prime``."""

    def __init__(self, sigma, sigma_prime, gap, branch):
        self.sigma = sigma
        self.sigma_prime = sigma_prime
        self.gap = gap
        self.branch = branch
        super().__init__(
            f"degenerate zeroth-order levels sigma={sigma}, sigma'={sigma_prime} "
            f"on branch {branch:+d} (gap {gap:.3e})"
        )


class DegenerateExtremum(NumericalFailure):
    """Stationary point whose curvature is below the classification tolerance."""

    def __init__(self, theta, curvature):
        self.theta = theta
        self.curvature = curvature
        super().__init__(f"degenerate extremum at theta={theta!r} (curvature {curvature:.3e})")


class NoBrokenPhase(NumericalFailure):
    pass


class DimensionGuardError(SpinlabError):
    def __init__(self, spin, max_spin):
        self.spin = spin
        self.max_spin = max_spin
        super().__init__(f"spin {spin} exceeds dimension guard; use spin <= {max_spin}")
