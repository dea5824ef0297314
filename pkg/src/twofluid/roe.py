"""Roe linearizations and the Roe numerical flux for both 2x2 subsystems.

Both subsystems have the form ``u = (m, m v)``, ``f(u) = (m v, m v^2 + p(m))``.
In the parameter vector ``z = (sqrt(m), sqrt(m) v)`` the Roe matrix is

    A = [[0, 1], [pbar/zbar1 - uhat^2, 2 uhat]],   uhat = zbar2 / zbar1,

where ``zbar`` are arithmetic means of ``z`` and ``pbar`` is the segment
average of ``z1 p'(z1^2)``.  For the ideal gas ``pbar = zbar1 / C_G``; for the
liquid it is computed by quadrature with ``m_G`` frozen at the interface.

Every function is vectorized over leading axes: states may be ``(..., 2)``
arrays holding one interface per leading index.
"""
from dataclasses import dataclass

import numpy as np

from . import model
from .errors import (DegenerateEigenvalueError, DomainError,
                     HyperbolicityError, SingularityError)
from .numerics import get_quadrature, line_average


@dataclass(frozen=True)
class RoeData:
    """Roe matrix with its eigen-decomposition.

    Attributes
    ----------
    a_matrix : ndarray, shape (..., 2, 2)
    eigenvalues : tuple of ndarray
        ``(lambda1, lambda2)`` with ``lambda1 <= lambda2``.
    right_eigenvectors : ndarray, shape (..., 2, 2)
        Columns ``r_k = (1, lambda_k)``.
    zbar1, zbar2, pbar : ndarray
        Segment averages the matrix was assembled from.
    """

    a_matrix: np.ndarray
    eigenvalues: tuple
    right_eigenvectors: np.ndarray
    zbar1: np.ndarray
    zbar2: np.ndarray
    pbar: np.ndarray


def _z_means(uL, uR):
    uL = np.asarray(uL, dtype=float)
    uR = np.asarray(uR, dtype=float)
    mL, mR = uL[..., 0], uR[..., 0]
    if np.any(~(mL > 0)) or np.any(~(mR > 0)):
        raise DomainError("Roe average needs positive masses")
    sL, sR = np.sqrt(mL), np.sqrt(mR)
    zbar1 = 0.5 * (sL + sR)
    zbar2 = 0.5 * (uL[..., 1] / sL + uR[..., 1] / sR)
    return sL, sR, zbar1, zbar2


def _assemble(zbar1, zbar2, pbar):
    uhat = zbar2 / zbar1
    c2 = pbar / zbar1
    if np.any(~(c2 > 0)):
        raise HyperbolicityError("Roe matrix has complex eigenvalues "
                                 f"(pbar/zbar1 = {np.min(c2):.6g})")
    c = np.sqrt(c2)
    lam1, lam2 = uhat - c, uhat + c
    shape = np.shape(uhat)
    A = np.zeros(shape + (2, 2))
    A[..., 0, 1] = 1.0
    A[..., 1, 0] = c2 - uhat * uhat
    A[..., 1, 1] = 2.0 * uhat
    R = np.ones(shape + (2, 2))
    R[..., 1, 0] = lam1
    R[..., 1, 1] = lam2
    return RoeData(A, (lam1, lam2), R, zbar1, zbar2, pbar)


def roe_data_gas(uL, uR, params):
    """Roe matrix of the gas subsystem between ``uL`` and ``uR``."""
    _, _, zbar1, zbar2 = _z_means(uL, uR)
    return _assemble(zbar1, zbar2, zbar1 / params.C_G)


def roe_data_liquid(wL, wR, m_G, params, quadrature=None):
    """Roe matrix of the liquid subsystem at fixed gas mass ``m_G``.

    The average of ``z1 P_mL(m_G, z1^2)`` along the segment is computed with
    ``quadrature`` (composite Gauss-Legendre by default).

    Raises
    ------
    SingularityError
        If the segment between the two liquid masses touches ``rho_L``.
    HyperbolicityError
        If the averaged matrix has complex eigenvalues.
    """
    sL, sR, zbar1, zbar2 = _z_means(wL, wR)
    rho = params.rho_L
    if np.any((sL * sL - rho) * (sR * sR - rho) <= 0):
        raise SingularityError("liquid mass segment crosses rho_L")
    m_G = np.asarray(m_G, dtype=float)
    mg = m_G[..., None]

    def integrand(z):
        return z * model.dP_dmL(mg, z * z, params)

    quad = quadrature if quadrature is not None else get_quadrature()
    pbar = np.asarray(line_average(integrand, sL, sR, quad))
    return _assemble(zbar1, zbar2, pbar)


DISSIPATIONS = ("roe", "printed")


def abs_roe_matrix(data, harten_delta=0.0, dissipation="roe"):
    """``|A| = R diag(|lambda1|, |lambda2|) R^{-1}`` in closed form.

    ``harten_delta > 0`` replaces ``|lambda|`` by ``(lambda^2 + delta^2) /
    (2 delta)`` for ``|lambda| < delta``; zero reproduces plain Roe.

    ``dissipation="printed"`` selects a legacy variant whose second row is
    ``[l1 l2 (l1 - l2), l2^2 - l1^2] / (l2 - l1)``, i.e. the second row with
    signed instead of absolute eigenvalues.  It is not ``|A|`` unless both
    eigenvalues are positive, but it is kept because reference
    profiles were computed with it.
    """
    if dissipation not in DISSIPATIONS:
        raise ValueError(f"unknown dissipation {dissipation!r}")
    l1, l2 = (np.asarray(x, dtype=float) for x in data.eigenvalues)
    gap = l2 - l1
    scale = np.maximum(np.maximum(np.abs(l1), np.abs(l2)), 1.0)
    if np.any(np.abs(gap) < 1e-12 * scale):
        raise DegenerateEigenvalueError("Roe matrix eigenvalues coincide")
    a1, a2 = _abs(l1, harten_delta), _abs(l2, harten_delta)
    out = np.empty(np.shape(l1) + (2, 2))
    out[..., 0, 0] = l2 * a1 - l1 * a2
    out[..., 0, 1] = a2 - a1
    if dissipation == "printed":
        out[..., 1, 0] = l1 * l2 * (l1 - l2)
        out[..., 1, 1] = l2 * l2 - l1 * l1
    else:
        out[..., 1, 0] = l1 * l2 * (a1 - a2)
        out[..., 1, 1] = l2 * a2 - l1 * a1
    return out / gap[..., None, None]


def _abs(lam, delta):
    a = np.abs(lam)
    if delta > 0:
        a = np.where(a < delta, (lam * lam + delta * delta) / (2 * delta), a)
    return a


def roe_flux(fL, fR, data, uL, uR, harten_delta=0.0, dissipation="roe"):
    """Roe flux ``(fL + fR)/2 - |A| (uR - uL)/2``."""
    absA = abs_roe_matrix(data, harten_delta, dissipation)
    jump = np.asarray(uR, dtype=float) - np.asarray(uL, dtype=float)
    diss = np.einsum("...ij,...j->...i", absA, jump)
    return 0.5 * (np.asarray(fL) + np.asarray(fR)) - 0.5 * diss


def roe_flux_gas(uL, uR, params, harten_delta=0.0, dissipation="roe"):
    """Roe flux of the gas subsystem; vectorized over interfaces."""
    data = roe_data_gas(uL, uR, params)
    return roe_flux(model.flux_gas(uL, params), model.flux_gas(uR, params),
                    data, uL, uR, harten_delta, dissipation)


def roe_flux_liquid(wL, wR, m_G, params, quadrature=None, harten_delta=0.0,
                    dissipation="roe"):
    """Roe flux of the liquid subsystem with the gas mass ``m_G`` at the interface."""
    data = roe_data_liquid(wL, wR, m_G, params, quadrature)
    return roe_flux(model.flux_liquid(wL, m_G, params),
                    model.flux_liquid(wR, m_G, params),
                    data, wL, wR, harten_delta, dissipation)
