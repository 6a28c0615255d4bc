"""Exception types raised by binomlcc."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class BracketError(RuntimeError):
    """The root-finding function does not change sign on its bracket."""


class NonConvergenceError(RuntimeError):
    """An iterative routine exhausted its iteration budget."""


class DegenerateGapError(DomainError):
    """Two consecutive spikes coincide, so an average over the gap is undefined."""
