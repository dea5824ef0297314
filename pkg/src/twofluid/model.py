"""Pressure laws, fluxes and characteristic speeds of the two-fluid model.

The gas subsystem ``u = (m_G, q_G)`` and the liquid subsystem
``w = (m_L, q_L)`` are written in conserved variables, ``q = m v``.  The
gas flux depends on ``u`` only; the liquid flux depends on ``w`` and on the
gas mass ``m_G``.

All functions accept scalars or numpy arrays.  State-valued arguments are
array-likes whose last axis holds the two conserved components, so a
``GasState`` and an ``(n, 2)`` array are handled alike.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, HyperbolicityError, SingularityError

TINY_MASS = 1e-300


@dataclass(frozen=True)
class ModelParams:
    """Closure constants of the pressure laws.

    Parameters
    ----------
    C_G : float
        Gas compressibility, ``p_G = m_G / C_G``.
    rho_L : float
        Liquid density.
    strict_physical : bool
        Reject liquid masses ``m_L >= rho_L`` (volume fraction above one).
        Off by default; the reference experiments use ``m_L > rho_L``.
    """

    C_G: float = 1.0
    rho_L: float = 1.0
    strict_physical: bool = False

    def __post_init__(self):
        if not self.C_G > 0:
            raise DomainError(f"C_G must be positive, got {self.C_G}")
        if not self.rho_L > 0:
            raise DomainError(f"rho_L must be positive, got {self.rho_L}")

    @property
    def sound_speed(self):
        """Gas sound speed ``1/sqrt(C_G)``."""
        return 1.0 / np.sqrt(self.C_G)


class GasState(NamedTuple):
    m: float
    q: float

    @classmethod
    def from_velocity(cls, m, v):
        return cls(float(m), float(m) * float(v))

    @property
    def v(self):
        return velocity(self.m, self.q)


class LiquidState(NamedTuple):
    m: float
    q: float

    @classmethod
    def from_velocity(cls, m, v):
        return cls(float(m), float(m) * float(v))

    @property
    def v(self):
        return velocity(self.m, self.q)


class FullState(NamedTuple):
    gas: GasState
    liquid: LiquidState

    @classmethod
    def from_primitive(cls, m_G, v_G, m_L, v_L):
        return cls(GasState.from_velocity(m_G, v_G),
                   LiquidState.from_velocity(m_L, v_L))

    @classmethod
    def from_conserved(cls, y):
        m_G, q_G, m_L, q_L = (float(c) for c in y)
        return cls(GasState(m_G, q_G), LiquidState(m_L, q_L))

    def conserved(self):
        """``(m_G, q_G, m_L, q_L)`` as an array."""
        return np.array([*self.gas, *self.liquid], dtype=float)

    def primitive(self):
        """``(m_G, v_G, m_L, v_L)`` as an array."""
        return np.array([self.gas.m, self.gas.v, self.liquid.m, self.liquid.v])


def velocity(m, q):
    """Recover ``v = q / m``; masses below ``1e-300`` in magnitude are rejected."""
    m = np.asarray(m, dtype=float)
    if np.any(np.abs(m) < TINY_MASS):
        raise DomainError("cannot recover velocity from a vanishing mass")
    v = np.asarray(q, dtype=float) / m
    return float(v) if v.ndim == 0 else v


def _check_gas_mass(m_G):
    m_G = np.asarray(m_G, dtype=float)
    if np.any(~(m_G > 0)):
        raise DomainError(f"gas mass must be positive, got min {np.min(m_G):.6g}")
    return m_G


def _check_liquid_mass(m_L, params):
    m_L = np.asarray(m_L, dtype=float)
    if np.any(m_L == params.rho_L):
        raise SingularityError(f"liquid pressure is singular at m_L = rho_L = "
                               f"{params.rho_L}")
    if params.strict_physical and np.any(m_L >= params.rho_L):
        raise DomainError("m_L >= rho_L rejected in strict-physical mode")
    return m_L


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def p_gas(m_G, params):
    """Gas pressure ``m_G / C_G``."""
    m_G = _check_gas_mass(m_G)
    return _out(m_G / params.C_G)


def P_liquid(m_G, m_L, params):
    """Liquid pressure ``P(m_G, m_L)``.

    Only the singularity at ``m_L = rho_L`` is rejected, so the ``m_G -> 0``
    and ``m_L -> 0`` limits can be evaluated directly.
    """
    m_G = np.asarray(m_G, dtype=float)
    m_L = _check_liquid_mass(m_L, params)
    rho, C = params.rho_L, params.C_G
    return _out(m_L * m_G / ((rho - m_L) * C)
                + m_L * m_G / (2.0 * rho**2) * (rho - m_L)
                + m_L**3 / (2.0 * rho**2))


def dP_dmL(m_G, m_L, params):
    """Partial derivative of the liquid pressure with respect to ``m_L``."""
    m_G = np.asarray(m_G, dtype=float)
    m_L = _check_liquid_mass(m_L, params)
    rho, C = params.rho_L, params.C_G
    return _out(m_G * rho / ((rho - m_L) ** 2 * C)
                + m_G / (2.0 * rho)
                - m_L * m_G / rho**2
                + 3.0 * m_L**2 / (2.0 * rho**2))


def dP_dmG(m_G, m_L, params):
    """Partial derivative of the liquid pressure with respect to ``m_G``.

    ``P`` is linear in ``m_G``, so this does not depend on ``m_G``; the
    argument is kept for a uniform signature.
    """
    m_L = _check_liquid_mass(m_L, params)
    rho, C = params.rho_L, params.C_G
    out = m_L / ((rho - m_L) * C) + m_L / (2.0 * rho**2) * (rho - m_L)
    return _out(out * np.ones_like(np.asarray(m_G, dtype=float)))


def flux_gas(u, params):
    """Gas flux ``(q_G, q_G^2/m_G + m_G/C_G)``."""
    u = np.asarray(u, dtype=float)
    m, q = u[..., 0], u[..., 1]
    _check_gas_mass(m)
    return np.stack([q, q * q / m + m / params.C_G], axis=-1)


def flux_liquid(w, m_G, params):
    """Liquid flux ``(q_L, q_L^2/m_L + P(m_G, m_L))``."""
    w = np.asarray(w, dtype=float)
    m, q = w[..., 0], w[..., 1]
    if np.any(~(m > 0)):
        raise DomainError(f"liquid mass must be positive, got min {np.min(m):.6g}")
    return np.stack([q, q * q / m + P_liquid(m_G, m, params)], axis=-1)


def eigen_gas(u, params):
    """Gas characteristic speeds ``v_G -+ 1/sqrt(C_G)``."""
    u = np.asarray(u, dtype=float)
    m = _check_gas_mass(u[..., 0])
    v = u[..., 1] / m
    c = params.sound_speed
    return _out(v - c), _out(v + c)


def eigen_liquid(w, m_G, params):
    """Liquid characteristic speeds ``v_L -+ sqrt(P_mL(m_G, m_L))``.

    Raises
    ------
    HyperbolicityError
        If ``P_mL <= 0`` somewhere.
    """
    w = np.asarray(w, dtype=float)
    m = w[..., 0]
    if np.any(~(m > 0)):
        raise DomainError("liquid mass must be positive")
    d = np.asarray(dP_dmL(m_G, m, params))
    if np.any(~(d > 0)):
        raise HyperbolicityError(f"P_mL = {np.min(d):.6g} <= 0: liquid system "
                                 "is not hyperbolic")
    v = w[..., 1] / m
    c = np.sqrt(d)
    return _out(v - c), _out(v + c)


def jacobian(state, params):
    """Jacobian of the full 4x4 flux at ``(m_G, q_G, m_L, q_L)``."""
    m_G, q_G, m_L, q_L = (float(x) for x in state)
    v_G, v_L = q_G / m_G, q_L / m_L
    J = np.zeros((4, 4))
    J[0, 1] = 1.0
    J[1, 0] = 1.0 / params.C_G - v_G**2
    J[1, 1] = 2.0 * v_G
    J[2, 3] = 1.0
    J[3, 0] = dP_dmG(m_G, m_L, params)
    J[3, 2] = dP_dmL(m_G, m_L, params) - v_L**2
    J[3, 3] = 2.0 * v_L
    return J
