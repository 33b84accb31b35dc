"""Exception types shared across the package."""


class EvomixError(Exception):
    """Base class for all errors raised by this package."""


class VertexWithNoOutEdge(EvomixError):
    """A walk was requested on a graph with a sink vertex."""


class NotStronglyConnected(EvomixError):
    """The support digraph is not strongly connected."""


class NotEulerian(EvomixError):
    """In-degree differs from out-degree at some vertex."""


class DegreeBoundTooSmall(EvomixError):
    """Hold-probability walk requested with d below the max out-degree."""


class InvalidParameters(EvomixError):
    """Generator parameters outside their valid range."""


class NotIrreducible(EvomixError):
    """Operation requires an irreducible kernel."""


class NoConvergence(EvomixError):
    """Eigenvalue iteration failed to converge; partial data attached."""


class NotReached(EvomixError):
    """Mixing target not reached within the step budget.

    Carries ``t_max`` and the distance at the final step so the caller
    can decide whether to extend the horizon.
    """

    def __init__(self, t_max, last_distance):
        super().__init__(f"distance {last_distance:.6g} after t_max={t_max} steps")
        self.t_max = t_max
        self.last_distance = last_distance


class ZeroStationaryMass(EvomixError):
    """Distance computation against a distribution with a zero entry."""


class EmptyOrFullSet(EvomixError):
    """Set quantity is degenerate on the empty set or the full space."""


class StateSpaceTooLarge(EvomixError):
    """Exhaustive subset enumeration capped at 20 states."""


class ZeroDenominator(EvomixError):
    """Congestion ratio undefined because f(pi(A)) = 0."""


class InvalidProfileParameters(EvomixError):
    """Worst-case profile parameters outside their feasible region."""


class ProfileTouchesOne(EvomixError):
    """Congestion profile reaches 1 inside an integration range."""


class MismatchedChain(EvomixError):
    """Simulation trace and exact curve come from different chains/starts."""
