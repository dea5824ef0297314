"""Numerical kernels: segment averages, bracketed roots and ODE integration.

These are the building blocks used by the liquid Roe matrix (segment
averages of a rational function) and by the exact Riemann solutions
(Hugoniot roots and rarefaction curves).
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import BracketError, DomainError, IntegrationError

DEFAULT_ORDER = 16
DEFAULT_PANELS = 4


@dataclass(frozen=True)
class Quadrature:
    """Composite Gauss-Legendre rule on [0, 1].

    ``nodes`` and ``weights`` hold all ``order * panels`` points; the
    weights sum to one.
    """

    order: int = DEFAULT_ORDER
    panels: int = DEFAULT_PANELS
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.order < 1 or self.panels < 1:
            raise ValueError("order and panels must be positive")
        x, w = _gauss_legendre(self.order)
        # map [-1, 1] onto each of the panels [k/P, (k+1)/P]
        h = 1.0 / self.panels
        left = np.arange(self.panels)[:, None] * h
        nodes = (left + 0.5 * h * (x + 1.0)).ravel()
        weights = np.tile(0.5 * h * w, self.panels)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)


@lru_cache(maxsize=None)
def _gauss_legendre(order):
    return np.polynomial.legendre.leggauss(order)


@lru_cache(maxsize=None)
def get_quadrature(order=DEFAULT_ORDER, panels=DEFAULT_PANELS):
    return Quadrature(order, panels)


def line_average(h, zL, zR, quadrature=None):
    """Average of ``h`` over the straight segment from ``zL`` to ``zR``.

    Computes ``int_0^1 h(zL + (zR - zL) xi) dxi``.  ``zL`` and ``zR`` may be
    arrays of equal shape, in which case ``h`` is called once with an array
    of shape ``zL.shape + (n_nodes,)`` and one average per segment is
    returned.  Degenerate segments return ``h(zL)`` exactly.

    Raises
    ------
    DomainError
        If ``h`` is not finite at some quadrature node.
    """
    quad = quadrature if quadrature is not None else get_quadrature()
    zL = np.asarray(zL, dtype=float)
    zR = np.asarray(zR, dtype=float)
    dz = zR - zL
    z = zL[..., None] + dz[..., None] * quad.nodes
    # the first column is overwritten so that degenerate segments see zL exactly
    z = np.concatenate([zL[..., None], z], axis=-1)
    with np.errstate(all="ignore"):
        values = np.asarray(h(z), dtype=float)
    values = np.broadcast_to(values, z.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        idx = np.argwhere(bad)[0]
        k = idx[-1]
        xi = 0.0 if k == 0 else float(quad.nodes[k - 1])
        raise DomainError(f"integrand is not finite at xi={xi:.6g} "
                          f"(z={float(z[tuple(idx)]):.6g})")
    avg = values[..., 1:] @ quad.weights
    result = np.where(dz == 0.0, values[..., 0], avg)
    if result.ndim == 0:
        return float(result)
    return result


def bracketed_root(f, lo, hi, tol=1e-12):
    """Root of the scalar function ``f`` inside ``[lo, hi]``.

    Uses Brent's method, which combines bisection with interpolation steps
    and never leaves the bracket.

    Raises
    ------
    BracketError
        If ``f(lo)`` and ``f(hi)`` have the same strict sign.
    """
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]")
    flo = f(lo)
    fhi = f(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)):
        raise BracketError(f"f is not finite at the bracket ends [{lo}, {hi}]")
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if flo * fhi > 0.0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: "
                           f"f(lo)={flo:.6g}, f(hi)={fhi:.6g}")
    rtol = max(tol, 4.0 * np.finfo(float).eps)
    x = brentq(f, lo, hi, xtol=tol, rtol=rtol, maxiter=500)
    return float(min(max(x, lo), hi))


@dataclass
class DenseTrajectory:
    """States sampled along a curve parameterized by ``xi``.

    ``xi`` is strictly monotone.  Calling the trajectory at a parameter
    value returns the interpolated state; stored parameters return the
    stored state exactly.
    """

    xi: np.ndarray
    states: np.ndarray
    interpolant: object = field(default=None, repr=False)
    order: int = 7

    def __post_init__(self):
        self.xi = np.asarray(self.xi, dtype=float)
        self.states = np.atleast_2d(np.asarray(self.states, dtype=float))
        if len(self.xi) != len(self.states):
            raise ValueError("xi and states differ in length")
        if len(self.xi) > 1:
            d = np.diff(self.xi)
            if not (np.all(d > 0) or np.all(d < 0)):
                raise ValueError("xi must be strictly monotone")

    @property
    def start(self):
        return float(self.xi[0])

    @property
    def end(self):
        return float(self.xi[-1])

    def __call__(self, xi):
        xi = float(xi)
        lo, hi = min(self.start, self.end), max(self.start, self.end)
        if not lo <= xi <= hi:
            raise ValueError(f"xi={xi} outside trajectory range [{lo}, {hi}]")
        hit = np.flatnonzero(self.xi == xi)
        if hit.size:
            return self.states[hit[0]].copy()
        if self.interpolant is not None:
            return np.asarray(self.interpolant(xi), dtype=float)
        # piecewise linear fallback for hand-built trajectories
        order = np.argsort(self.xi)
        return np.array([np.interp(xi, self.xi[order], col[order])
                         for col in self.states.T])


def integrate_ode(rhs, y0, xi0, xi1, tol=1e-12, stop=None):
    """Integrate ``dy/dxi = rhs(xi, y)`` from ``xi0`` to ``xi1``.

    Uses the adaptive Dormand-Prince 8(5,3) pair with its continuous
    extension for dense output.  ``stop`` is an optional scalar function
    ``stop(xi, y)``; integration ends early at its first zero crossing and
    the returned trajectory ends exactly there.

    Raises
    ------
    IntegrationError
        If the step size collapses before ``xi1`` (or the stop event) is
        reached.
    """
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    if xi0 == xi1:
        return DenseTrajectory(np.array([xi0]), y0[None, :])
    events = None
    if stop is not None:
        def event(xi, y):
            return stop(xi, y)
        event.terminal = True
        events = [event]
    sol = solve_ivp(rhs, (xi0, xi1), y0, method="DOP853", rtol=tol, atol=tol,
                    dense_output=True, events=events)
    if sol.status == -1:
        raise IntegrationError(f"integration failed: {sol.message}",
                               last_xi=float(sol.t[-1]))
    if stop is not None and sol.status != 1:
        raise IntegrationError("stop condition not reached before "
                               f"xi={xi1}", last_xi=float(sol.t[-1]))
    xi = sol.t
    states = sol.y.T
    if len(xi) > 1 and xi[-1] == xi[-2]:
        xi, states = xi[:-1], states[:-1]
    return DenseTrajectory(xi, states, interpolant=sol.sol)
