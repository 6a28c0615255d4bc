"""Bracketed bisection with the package's error types."""

from scipy import optimize

from .exceptions import BracketError, NonConvergenceError


def bisect_root(func, lo, hi, *, xtol=1e-12, maxiter=200, f_lo=None, f_hi=None, what="root"):
    """Root of ``func`` on ``[lo, hi]`` by bisection.

    Returns ``(root, iterations)``. ``f_lo``/``f_hi`` may be passed when the
    caller already knows the end values (e.g. a one-sided limit at ``hi``).
    """
    f_lo = func(lo) if f_lo is None else f_lo
    f_hi = func(hi) if f_hi is None else f_hi
    if f_lo == 0.0:
        return lo, 0
    if f_hi == 0.0:
        return hi, 0
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(
            f"{what}: no sign change on [{lo!r}, {hi!r}] (f={f_lo!r}, {f_hi!r})"
        )

    # scipy re-evaluates the ends; feed it the known values so a limit at an
    # end point is respected.
    def wrapped(t):
        if t == lo:
            return f_lo
        if t == hi:
            return f_hi
        return func(t)

    try:
        root, info = optimize.bisect(
            wrapped, lo, hi, xtol=xtol, maxiter=maxiter, full_output=True, disp=True
        )
    except RuntimeError as exc:
        raise NonConvergenceError(f"{what}: {exc}") from exc
    return root, info.iterations
