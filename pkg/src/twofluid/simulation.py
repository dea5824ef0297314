"""Staggered-grid time stepping for the coupled gas/liquid system.

Gas states live on the ``N + 1`` nodes ``x_j = a + j dx`` and are advanced
with the Roe scheme.  Liquid states live on the ``N`` midpoints
``x_{j+1/2}`` and are advanced either with the Roe scheme (interfaces sit on
nodes, where the gas state is single-valued) or with the nonstaggered
Nessyahu-Tadmor scheme.  Both phases are updated from the same time level.
"""
import csv
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import model, nt, roe
from .errors import DegenerateEigenvalueError, DomainError, SolverAbort

_STEP_ERRORS = (DomainError, DegenerateEigenvalueError)
from .model import FullState, ModelParams

GHOSTS = nt.NT_GHOSTS
CSV_HEADER = ["x", "m_G", "v_G", "m_L", "v_L",
              "exact_m_G", "exact_v_G", "exact_m_L", "exact_v_L"]


class CFLWarning(UserWarning):
    """Time step exceeds the CFL limit of the fastest wave."""


@dataclass(frozen=True)
class StaggeredGrid:
    a: float
    b: float
    N: int

    def __post_init__(self):
        if self.N < 4:
            raise ValueError("need at least 4 cells")
        if not self.b > self.a:
            raise ValueError("empty domain")

    @property
    def dx(self):
        return (self.b - self.a) / self.N

    @property
    def nodes(self):
        return self.a + np.arange(self.N + 1) * self.dx

    @property
    def midpoints(self):
        return self.a + (np.arange(self.N) + 0.5) * self.dx


@dataclass
class SimState:
    """Gas on nodes (``u``, shape ``(N+1, 2)``), liquid on midpoints (``w``)."""

    time: float
    u: np.ndarray
    w: np.ndarray

    def copy(self):
        return SimState(self.time, self.u.copy(), self.w.copy())

    def gas_primitive(self):
        return self.u[:, 0], model.velocity(self.u[:, 0], self.u[:, 1])

    def liquid_primitive(self):
        return self.w[:, 0], model.velocity(self.w[:, 0], self.w[:, 1])


@dataclass
class RunConfig:
    """Everything needed to run one simulation.

    Exactly one time-step policy is used: ``dt`` (fixed step), ``ratio``
    (fixed ``dt/dx``) or ``cfl`` (adaptive, ``dt = cfl dx / max speed``).
    ``initial`` is either a ``(left, right)`` pair of :class:`FullState` or a
    callable returning ``(u, w)`` arrays for the grid.
    """

    grid: StaggeredGrid
    T: float
    initial: object
    params: ModelParams = field(default_factory=ModelParams)
    scheme: str = "roe"
    boundary: str = "open"
    dt: Optional[float] = None
    ratio: Optional[float] = None
    cfl: Optional[float] = None
    harten_delta: float = 0.0
    quadrature: object = None
    dissipation: str = "roe"

    def __post_init__(self):
        if self.scheme not in ("roe", "nt"):
            raise ValueError(f"unknown liquid scheme {self.scheme!r}")
        if self.boundary not in ("open", "periodic"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if self.dissipation not in roe.DISSIPATIONS:
            raise ValueError(f"unknown dissipation {self.dissipation!r}")
        policies = [p for p in (self.dt, self.ratio, self.cfl) if p is not None]
        if len(policies) != 1:
            raise ValueError("set exactly one of dt, ratio, cfl")
        if self.dt is not None and not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.ratio is not None and not self.ratio > 0:
            raise ValueError("ratio must be positive")
        if self.cfl is not None and not 0 < self.cfl <= 1:
            raise ValueError("cfl must lie in (0, 1]")
        if self.T < 0:
            raise ValueError("T must be nonnegative")


def init_riemann(grid, left, right):
    """Piecewise-constant data with a jump at ``x = 0``.

    A node exactly at the jump takes the right state.
    """
    xg, xl = grid.nodes, grid.midpoints
    u = np.where((xg < 0)[:, None], np.asarray(left.gas, float),
                 np.asarray(right.gas, float))
    w = np.where((xl < 0)[:, None], np.asarray(left.liquid, float),
                 np.asarray(right.liquid, float))
    return SimState(0.0, u, w)


def initial_state(config):
    if callable(config.initial):
        u, w = config.initial(config.grid)
        state = SimState(0.0, np.array(u, dtype=float), np.array(w, dtype=float))
    else:
        left, right = config.initial
        state = init_riemann(config.grid, left, right)
    if config.boundary == "periodic":
        state.u[-1] = state.u[0]
    return state


def boundary_extend(state, config, ghosts=GHOSTS):
    """Ghost-augmented copies of the gas and liquid arrays.

    ``open`` repeats the outermost values; ``periodic`` wraps around with
    node ``N`` identified with node ``0``.  Returns ``(u_ext, w_ext)`` with
    ``u_ext[ghosts + j]`` the node ``j`` and ``w_ext[ghosts + k]`` the
    midpoint ``k``.
    """
    u, w = state.u, state.w
    N = len(w)
    if config.boundary == "open":
        u_ext = np.pad(u, ((ghosts, ghosts), (0, 0)), mode="edge")
        w_ext = np.pad(w, ((ghosts, ghosts), (0, 0)), mode="edge")
    else:
        u_ext = u[np.arange(-ghosts, N + 1 + ghosts) % N]
        w_ext = w[np.arange(-ghosts, N + ghosts) % N]
    return u_ext, w_ext


def max_speed(state, params):
    l1, l2 = model.eigen_gas(state.u, params)
    speed = max(np.max(np.abs(l1)), np.max(np.abs(l2)))
    for m_G in (state.u[:-1, 0], state.u[1:, 0]):
        m1, m2 = model.eigen_liquid(state.w, m_G, params)
        speed = max(speed, np.max(np.abs(m1)), np.max(np.abs(m2)))
    return float(speed)


def _first_bad(func, n):
    for i in range(n):
        try:
            func(i)
        except _STEP_ERRORS:
            return i
    return None


def step(state, dt, config):
    """Advance both phases by ``dt`` from the same time level.

    Raises
    ------
    SolverAbort
        With the index of the first failing interface or cell.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    params = config.params
    dx = config.grid.dx
    lam = dt / dx
    N = len(state.w)
    u_ext, w_ext = boundary_extend(state, config)
    g = GHOSTS

    # gas: interfaces between consecutive nodes, -1/2 .. N+1/2
    uL, uR = u_ext[g - 1:g + N + 1], u_ext[g:g + N + 2]
    try:
        F = roe.roe_flux_gas(uL, uR, params, config.harten_delta,
                             config.dissipation)
    except _STEP_ERRORS as exc:
        i = _first_bad(lambda k: roe.roe_flux_gas(uL[k], uR[k], params), len(uL))
        raise SolverAbort(f"gas Roe flux failed at interface {i}: {exc}",
                          index=i, time=state.time) from exc
    u_new = state.u - lam * (F[1:] - F[:-1])

    if config.scheme == "roe":
        # liquid interfaces at nodes 0..N, gas mass taken at the node
        wL, wR = w_ext[g - 1:g + N], w_ext[g:g + N + 1]
        m_G = state.u[:, 0]
        try:
            Fl = roe.roe_flux_liquid(wL, wR, m_G, params, config.quadrature,
                                     config.harten_delta, config.dissipation)
        except _STEP_ERRORS as exc:
            i = _first_bad(lambda k: roe.roe_flux_liquid(
                wL[k], wR[k], m_G[k], params, config.quadrature), len(wL))
            raise SolverAbort(f"liquid Roe flux failed at node {i}: {exc}",
                              index=i, time=state.time) from exc
        w_new = state.w - lam * (Fl[1:] - Fl[:-1])
    else:
        try:
            w_new = nt.nt_step(w_ext, u_ext, lam, params)
        except SolverAbort as exc:
            exc.time = state.time
            raise

    if config.boundary == "periodic":
        u_new[-1] = u_new[0]
    for name, arr in (("gas", u_new), ("liquid", w_new)):
        bad = np.flatnonzero(~(arr[:, 0] > 0) | ~np.isfinite(arr).all(axis=1))
        if bad.size:
            raise SolverAbort(f"{name} mass lost positivity at index {bad[0]} "
                              f"(t={state.time + dt:.6g})", index=int(bad[0]),
                              time=state.time + dt)
    return SimState(state.time + dt, u_new, w_new)


def _speed(state, config):
    try:
        return max_speed(state, config.params)
    except DomainError as exc:
        raise SolverAbort(f"characteristic speeds undefined: {exc}",
                          time=state.time) from exc


def _step_size(state, config):
    dx = config.grid.dx
    if config.dt is not None:
        dt = config.dt
    elif config.ratio is not None:
        dt = config.ratio * dx
    else:
        return config.cfl * dx / _speed(state, config)
    courant = dt * _speed(state, config) / dx
    if courant > 1.0:
        warnings.warn(f"Courant number {courant:.3f} exceeds 1", CFLWarning,
                      stacklevel=3)
    return dt


def run(config, snapshot_times=None):
    """Advance from ``t = 0`` to ``config.T``.

    With a fixed step the number of steps is ``ceil(T / dt)`` (a step count
    within round-off of an integer is taken as exact) and the last step is
    shortened to land on ``T``.

    Returns
    -------
    SimState or (SimState, list of SimState)
        The second form when ``snapshot_times`` is given; a snapshot is
        taken at the first time level at or after each requested time.
    """
    state = initial_state(config)
    T = config.T
    pending = sorted(snapshot_times) if snapshot_times is not None else None
    snaps = []

    def record(s):
        while pending and s.time >= pending[0] - 1e-12:
            snaps.append(s.copy())
            pending.pop(0)

    if pending is not None:
        record(state)
    fixed = config.dt is not None or config.ratio is not None
    if fixed and T > 0:
        dt = _step_size(state, config)
        n = T / dt
        n_steps = round(n) if abs(n - round(n)) < 1e-9 * max(1.0, n) \
            else math.ceil(n)
        for k in range(n_steps):
            t_next = T if k == n_steps - 1 else (k + 1) * dt
            h = t_next - state.time
            if k:
                _step_size(state, config)  # CFL check only
            state = step(state, h, config)
            state.time = t_next
            if pending is not None:
                record(state)
    else:
        while state.time < T:
            dt = min(_step_size(state, config), T - state.time)
            state = step(state, dt, config)
            if T - state.time < 1e-14 * max(1.0, T):
                state.time = T
            if pending is not None:
                record(state)
    if pending is not None:
        return state, snaps
    return state


def exact_on_grid(exact, grid, t):
    """Exact primitive variables on nodes and midpoints, shape ``(n, 4)`` each."""
    return (exact.sample_array(grid.nodes, t),
            exact.sample_array(grid.midpoints, t))


def rel_l1_error(state, exact, grid, variables=("m_L", "v_L", "m_G", "v_G")):
    """Percent relative L1 error against an exact solution at ``state.time``.

    Each variable is compared on its own grid: gas on nodes, liquid on
    midpoints.  Velocities are recovered as ``q / m``.
    """
    if not state.time > 0:
        raise ValueError("error is measured at positive times only")
    ex_nodes, ex_mid = exact_on_grid(exact, grid, state.time)
    m_G, v_G = state.gas_primitive()
    m_L, v_L = state.liquid_primitive()
    approx = {"m_G": (m_G, ex_nodes[:, 0]), "v_G": (v_G, ex_nodes[:, 1]),
              "m_L": (m_L, ex_mid[:, 2]), "v_L": (v_L, ex_mid[:, 3])}
    out = {}
    for name in variables:
        a, e = approx[name]
        out[name] = 100.0 * np.sum(np.abs(a - e)) / np.sum(np.abs(e))
    return out


def _fmt(x):
    return "" if x is None else f"{x:.15g}"


def write_csv(state, grid, node_path, midpoint_path, exact=None):
    """Write the node (gas) and midpoint (liquid) profiles.

    Both files share the header ``x,m_G,v_G,m_L,v_L,exact_...``; variables
    not stored on a file's grid are left empty.  Exact columns are filled
    only when ``exact`` is given.
    """
    m_G, v_G = state.gas_primitive()
    m_L, v_L = state.liquid_primitive()
    t = state.time
    for path, xs, cols in ((node_path, grid.nodes, (m_G, v_G, None, None)),
                           (midpoint_path, grid.midpoints, (None, None, m_L, v_L))):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            header = CSV_HEADER if exact is not None else CSV_HEADER[:5]
            writer.writerow(header)
            for i, x in enumerate(xs):
                row = [_fmt(x)] + [_fmt(c[i]) if c is not None else "" for c in cols]
                if exact is not None:
                    row += [_fmt(v) for v in exact.sample(float(x), t).primitive()]
                writer.writerow(row)


def riemann_config(solution, N, scheme="roe", a=-5.0, b=5.0, T=1.0, **policy):
    """Run configuration for a constructed Riemann problem on ``[a, b]``."""
    return RunConfig(grid=StaggeredGrid(a, b, N), T=T,
                     initial=(solution.left, solution.right),
                     params=solution.params, scheme=scheme, **policy)


__all__ = [
    "CFLWarning", "RunConfig", "SimState", "StaggeredGrid", "boundary_extend",
    "exact_on_grid", "init_riemann", "initial_state", "max_speed",
    "rel_l1_error", "riemann_config", "run", "step", "write_csv",
]
