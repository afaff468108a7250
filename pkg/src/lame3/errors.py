"""Exception hierarchy shared by all modules."""


class Lame3Error(Exception):
    """Base class for every error raised by the package."""


class DomainError(Lame3Error, ValueError):
    """Input outside the mathematical domain of an operation."""


class DegenerateLattice(Lame3Error):
    """The discriminant g2^3 - 27 g3^2 vanishes to working tolerance."""


class PoleProximity(Lame3Error):
    """Evaluation point is within the guard radius of a lattice point."""


class ConvergenceFailure(Lame3Error):
    """An iterative method did not reach its tolerance."""


class RegimeError(Lame3Error, ValueError):
    """Parity regime of (n, l) does not admit the requested object."""


class NumericalInstability(Lame3Error):
    """Coefficient growth exceeded the overflow guard."""


class NotApparent(Lame3Error):
    """B is not a root of the apparent-singularity polynomial."""


class CaseDegeneracy(Lame3Error):
    """Both candidate normalizations of a half-basis solution vanish."""


class NonzeroRemainder(Lame3Error):
    """Exact polynomial division left a remainder."""


class StepUnderflow(Lame3Error):
    """Adaptive integrator step size collapsed."""


class ToleranceNotMet(Lame3Error):
    """Integrator exhausted its step budget before reaching the endpoint."""


class PathBlocked(Lame3Error):
    """No admissible detour clears the singular points at the required margin."""
