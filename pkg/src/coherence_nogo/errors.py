"""Exception hierarchy shared by every module of the package."""


class CoherenceError(Exception):
    """Base class for all errors raised by coherence_nogo."""


class InvalidState(CoherenceError, ValueError):
    """Input is not a valid density matrix."""


class NotHermitian(InvalidState):
    pass


class NotUnitTrace(InvalidState):
    pass


class NotPositive(InvalidState):
    pass


class WrongDimension(InvalidState):
    pass


class Unphysical(InvalidState):
    """Bloch vector outside the unit ball."""


class NotConverged(CoherenceError, RuntimeError):
    """An iterative solver ran out of its iteration budget."""


class NoConvergence(NotConverged):
    """The Jacobi eigensolver exceeded its sweep cap."""


class InvalidKraus(CoherenceError, ValueError):
    """Kraus operators are not strictly incoherent or not sub-normalized."""


class IncoherentInput(CoherenceError, ValueError):
    """Operation needs a coherent state but got an incoherent one."""


class ZeroPopulation(CoherenceError, ValueError):
    """A basis state with zero population carries off-diagonal weight."""


class ZeroProbability(CoherenceError, ValueError):
    """Post-selection never succeeds on the given state."""


class NotFullRank(CoherenceError, ValueError):
    pass


class VerdictMismatch(CoherenceError, RuntimeError):
    """The diagonal condition and the eigenvalue test disagree.

    Both tests are mathematically equivalent, so a mismatch means the
    numerics failed, never the theory.
    """
