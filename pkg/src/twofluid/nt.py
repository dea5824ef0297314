"""Nonstaggered Nessyahu-Tadmor scheme for the liquid subsystem.

The staggered NT predictor/corrector is evolved from the midpoint averages
``w_{j+1/2}`` to node-centred averages ``w_j^{n+1}`` and then averaged back
onto the midpoints through a limited piecewise-linear reconstruction.  The
liquid flux at a midpoint is evaluated with the gas state ``u_{j+1/2}``
obtained from the linearized gas Riemann problem between the two
neighbouring nodes.

Array layout used throughout: ``w`` has shape ``(K, 2)`` with ``w[k]`` at
midpoint ``k + 1/2``, and ``u`` has shape ``(K + 1, 2)`` with ``u[k]`` at the
node to the left of midpoint ``k``.
"""
from dataclasses import dataclass

import numpy as np

from . import model
from .errors import DegenerateEigenvalueError, DomainError, SolverAbort
from .roe import roe_data_gas

#: ghost layers needed on each side by :func:`nt_step`
NT_GHOSTS = 3


def minmod(values):
    """Minmod of a sequence: common-sign smallest magnitude, else 0."""
    values = [float(v) for v in values]
    if not values:
        raise ValueError("minmod needs at least one value")
    if all(v > 0 for v in values):
        return min(values)
    if all(v < 0 for v in values):
        return max(values)
    return 0.0


def minmod2(a, b):
    """Elementwise two-argument minmod."""
    return np.where(a * b > 0, np.sign(a) * np.minimum(np.abs(a), np.abs(b)), 0.0)


def minmod3(a, b, c):
    """Elementwise three-argument minmod."""
    same = ((a > 0) & (b > 0) & (c > 0)) | ((a < 0) & (b < 0) & (c < 0))
    smallest = np.minimum(np.minimum(np.abs(a), np.abs(b)), np.abs(c))
    return np.where(same, np.sign(a) * smallest, 0.0)


def interface_gas_state(uL, uR, params):
    """Gas state at the interface of the linearized (Roe) Riemann problem.

    Returns ``uL`` if both Roe eigenvalues are positive, ``uR`` if both are
    negative, and the middle state of the linear problem otherwise.  An
    eigenvalue exactly zero selects the adjacent one-sided state.
    Vectorized over leading axes.

    Raises
    ------
    DomainError
        If the middle state has nonpositive mass.
    """
    uL = np.asarray(uL, dtype=float)
    uR = np.asarray(uR, dtype=float)
    data = roe_data_gas(uL, uR, params)
    l1, l2 = data.eigenvalues
    sqC = np.sqrt(params.C_G)
    a1 = (l2 * uR[..., 0] - uR[..., 1]) * sqC / 2
    a2 = (-l1 * uL[..., 0] + uL[..., 1]) * sqC / 2
    middle = np.stack([a1 + a2, a1 * l1 + a2 * l2], axis=-1)
    straddle = (l1 < 0) & (l2 > 0)
    if np.any(straddle & ~(middle[..., 0] > 0)):
        raise DomainError("interface middle state has nonpositive gas mass")
    left = (l1 >= 0)[..., None]
    out = np.where(left, uL, np.where(straddle[..., None], middle, uR))
    return out


def flux_slope(wm, w0, wp, u_left_node, u_right_node, params):
    """Limited flux slope ``g'`` at midpoint ``w0``.

    Componentwise minmod of the forward difference (evaluated with the right
    node's gas state) and the backward difference (left node's gas state).
    """
    g = model.flux_liquid
    forward = (g(wp, u_right_node[..., 0], params)
               - g(w0, u_right_node[..., 0], params))
    backward = (g(w0, u_left_node[..., 0], params)
                - g(wm, u_left_node[..., 0], params))
    return minmod2(forward, backward)


@dataclass
class NtWorkspace:
    """Intermediate arrays of one NT step (useful for inspection and tests)."""

    slopes: np.ndarray          # w'_{k}, staggered slopes at midpoints
    flux_slopes: np.ndarray     # g'_{k}
    predictor: np.ndarray       # w^{n+1/2}_{k}
    interface_gas: np.ndarray   # u_{k} at midpoints
    half_flux: np.ndarray       # g(w^{n+1/2}_k, u_k)
    delta_new: np.ndarray       # Delta w^{n+1}_{k}
    node_slopes: np.ndarray     # w'_j of the node-centred reconstruction


def nt_step(w, u, lam, params, return_workspace=False):
    """One nonstaggered NT step on ghost-extended arrays.

    Parameters
    ----------
    w : ndarray, shape (K, 2)
        Liquid midpoint averages including ``NT_GHOSTS`` ghost cells per side.
    u : ndarray, shape (K + 1, 2)
        Gas node values aligned with ``w`` (``u[k]`` left of ``w[k]``).
    lam : float
        Mesh ratio ``dt / dx``.

    Returns
    -------
    ndarray, shape (K - 2 * NT_GHOSTS, 2)
        Updated interior midpoint values.
    """
    w = np.asarray(w, dtype=float)
    u = np.asarray(u, dtype=float)
    K = len(w)
    G = NT_GHOSTS
    if len(u) != K + 1:
        raise ValueError("u must have one more entry than w")
    if K <= 2 * G:
        raise ValueError("not enough cells for the NT stencil")

    # staggered slopes w'_k on k = 1..K-2
    dw = np.diff(w, axis=0)                 # dw[k] = w[k+1] - w[k]
    fwd, bwd = dw[1:], dw[:-1]
    slopes = minmod3(fwd, 0.5 * (fwd + bwd), bwd)

    try:
        fs = flux_slope(w[:-2], w[1:-1], w[2:], u[1:-2], u[2:-1], params)
        pred = w[1:-1] - 0.5 * lam * fs
        ui = interface_gas_state(u[1:-2], u[2:-1], params)
        gh = model.flux_liquid(pred, ui[..., 0], params)
    except (DomainError, DegenerateEigenvalueError) as exc:
        raise SolverAbort(f"NT flux evaluation failed: {exc}") from exc

    # staggered differences Delta w^{n+1}_k on k = 2..K-3
    delta = (0.5 * (w[3:-1] - w[1:-3])
             - 0.125 * (slopes[2:] - 2.0 * slopes[1:-1] + slopes[:-2])
             - lam * (gh[2:] - 2.0 * gh[1:-1] + gh[:-2]))
    # node slopes w'_j for nodes j = 3..K-3
    node_slopes = minmod2(delta[1:], delta[:-1])

    k = slice(G, K - G)
    s_p = slopes[G:K - G]                  # w'_{k+1}
    s_m = slopes[G - 2:K - G - 2]          # w'_{k-1}
    g_p = gh[G:K - G]
    g_m = gh[G - 2:K - G - 2]
    new = (0.25 * (w[G + 1:K - G + 1] + 2.0 * w[k] + w[G - 1:K - G - 1])
           - (s_p - s_m) / 16.0
           - 0.5 * lam * (g_p - g_m)
           - 0.125 * (node_slopes[1:] - node_slopes[:-1]))
    if return_workspace:
        ws = NtWorkspace(slopes, fs, pred, ui, gh, delta, node_slopes)
        return new, ws
    return new
