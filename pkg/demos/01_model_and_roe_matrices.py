"""Pressure laws, characteristic speeds and the Roe linearizations.

Run with ``python demos/01_model_and_roe_matrices.py``.
"""
import numpy as np

from twofluid import model, roe
from twofluid.model import FullState, ModelParams

params = ModelParams(C_G=1.0, rho_L=1.0)

# The gas pressure is linear in the gas mass; the liquid pressure depends on
# both masses and is singular at m_L = rho_L.
print("p_G(2)       =", model.p_gas(2.0, params))
print("P(2, 3)      =", model.P_liquid(2.0, 3.0, params))
print("P_mL(2, 3)   =", model.dP_dmL(2.0, 3.0, params))
print("P_mG(2, 3)   =", model.dP_dmG(2.0, 3.0, params))

# Characteristic speeds of the two subsystems.  The liquid speeds use the
# gas mass as a frozen coefficient.
state = FullState.from_primitive(2.0, 1.5, 3.0, 1.0)
print("lambda =", model.eigen_gas(state.conserved()[:2], params))
print("mu     =", model.eigen_liquid(state.conserved()[2:], state.gas.m, params))

# The full 4x4 Jacobian is block lower triangular, so its spectrum is the
# union of the gas and liquid speeds.
J = model.jacobian(state.conserved(), params)
print("eig(J) =", np.sort(np.linalg.eigvals(J).real))

# %% Roe matrices
# For the gas the parameter-vector average is available in closed form; for
# the liquid the segment average of z P_mL(m_G, z^2) is computed by
# composite Gauss-Legendre quadrature.
uL, uR = np.array([2.0, 3.0]), np.array([2.5, 3.191])
gas = roe.roe_data_gas(uL, uR, params)
print("\ngas Roe matrix\n", gas.a_matrix)
print("A (uR - uL) - (f(uR) - f(uL)) =",
      gas.a_matrix @ (uR - uL) - (model.flux_gas(uR, params) - model.flux_gas(uL, params)))

wL, wR = np.array([3.0, 3.0]), np.array([3.25, 2.4333])
liq = roe.roe_data_liquid(wL, wR, 2.0, params)
res = liq.a_matrix @ (wR - wL) - (model.flux_liquid(wR, 2.0, params)
                                  - model.flux_liquid(wL, 2.0, params))
print("liquid Roe eigenvalues:", [float(x) for x in liq.eigenvalues])
print("liquid jump residual:", res)

# The same average has a closed form, (P(m_R) - P(m_L)) / (2 (sqrt m_R - sqrt m_L)),
# which is a handy independent check of the quadrature.
closed = (model.P_liquid(2.0, 3.25, params) - model.P_liquid(2.0, 3.0, params)) \
    / (2 * (np.sqrt(3.25) - np.sqrt(3.0)))
print("pbar quadrature vs closed form:", float(liq.pbar), closed)

# A very coarse rule breaks the Roe property, which is what the validation
# suite looks for.
from twofluid.numerics import get_quadrature
coarse = roe.roe_data_liquid([0.2, 0.0], [0.85, 0.3], 3.0, params, get_quadrature(2, 1))
fine = roe.roe_data_liquid([0.2, 0.0], [0.85, 0.3], 3.0, params)
print("pbar with 2-point rule vs default:", float(coarse.pbar), float(fine.pbar))

# |A| and the Roe flux
absA = roe.abs_roe_matrix(liq)
print("\n|A| =\n", absA)
print("Roe flux:", roe.roe_flux_liquid(wL, wR, 2.0, params))
