"""Exception hierarchy shared by the library and the command-line tool."""


class GeometryError(ValueError):
    """The three circle radii violate one of the admissibility inequalities."""

    condition = ""


class OrderingError(GeometryError):
    condition = "r_d > r_a > r_s > 0"


class TriangleError(GeometryError):
    condition = "r_d < r_s + r_a"


class GeometricMeanError(GeometryError):
    condition = "r_a^2 > r_d*r_s"


class DeltaBoundError(ValueError):
    def __init__(self, message, delta=None, Delta=None):
        super().__init__(message)
        self.delta = delta
        self.Delta = Delta


class DomainError(ValueError):
    """A function was evaluated outside its domain (e.g. range below r_a)."""


class BarrierBreachError(RuntimeError):
    """eta reached delta, so the barrier function is undefined.

    From an admissible start this cannot happen in exact arithmetic; seeing
    it means an inadmissible initial condition or an integration fault.
    """

    def __init__(self, message, eta=None, delta=None, t=None):
        super().__init__(message)
        self.eta = eta
        self.delta = delta
        self.t = t

    def __str__(self):
        base = super().__str__()
        return base if self.t is None else f"{base} (t = {self.t:.6f} s)"


class InitialConditionError(ValueError):
    """Initial state lies outside the admissible set."""


class DoomedStartError(InitialConditionError):
    """Start inside the auxiliary circle already aimed into the safety circle."""


class NonFiniteStateError(RuntimeError):
    pass
