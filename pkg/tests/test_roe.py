import math

import numpy as np
import pytest

from twofluid import model, roe
from twofluid.errors import DegenerateEigenvalueError, SingularityError
from twofluid.model import ModelParams
from twofluid.numerics import get_quadrature

P = ModelParams()


def _pbar_closed_form(mG, mL, mR, p):
    # z P_mL(m_G, z^2) is the z-derivative of P(m_G, z^2) / 2
    return ((model.P_liquid(mG, mR, p) - model.P_liquid(mG, mL, p))
            / (2.0 * (math.sqrt(mR) - math.sqrt(mL))))


def test_gas_consistency():
    u = np.array([2.0, 3.0])
    d = roe.roe_data_gas(u, u, P)
    assert np.allclose(d.a_matrix, model.jacobian((2.0, 3.0, 3.0, 0.0), P)[:2, :2])
    assert np.allclose(d.eigenvalues, (0.5, 2.5))
    d = roe.roe_data_gas([1.0, 0.0], [1.0, 0.0], P)
    assert np.allclose(d.eigenvalues, (-1.0, 1.0))


def test_gas_roe_property_experiment1():
    uL, uR = np.array([2.0, 3.0]), np.array([2.5, 3.191])
    d = roe.roe_data_gas(uL, uR, P)
    jump = d.a_matrix @ (uR - uL)
    assert np.allclose(jump, model.flux_gas(uR, P) - model.flux_gas(uL, P), atol=1e-10)


def test_liquid_pbar_matches_closed_form():
    for mG, mL, mR in [(2.0, 3.0, 3.25), (0.4, 0.7, 0.5), (1.0, 0.2, 0.85), (3.0, 1.2, 4.0)]:
        d = roe.roe_data_liquid([mL, 0.0], [mR, 0.0], mG, P)
        assert float(d.pbar) == pytest.approx(_pbar_closed_form(mG, mL, mR, P), rel=1e-12)


def test_liquid_consistency():
    w = np.array([3.0, 3.0])
    d = roe.roe_data_liquid(w, w, 2.0, P)
    assert np.allclose(d.eigenvalues, model.eigen_liquid(w, 2.0, P), atol=1e-10)


def test_liquid_roe_property_experiment1():
    wL, wR = np.array([3.0, 3.0]), np.array([3.25, 2.4333])
    d = roe.roe_data_liquid(wL, wR, 2.0, P)
    jump = d.a_matrix @ (wR - wL)
    ref = model.flux_liquid(wR, 2.0, P) - model.flux_liquid(wL, 2.0, P)
    assert np.allclose(jump, ref, atol=1e-8)
    # mean eigenvalue = sqrt(m)-weighted velocity
    mean = 0.5 * (d.eigenvalues[0] + d.eigenvalues[1])
    ref_mean = ((math.sqrt(3.0) * 1.0 + math.sqrt(3.25) * 2.4333 / 3.25)
                / (math.sqrt(3.0) + math.sqrt(3.25)))
    assert float(mean) == pytest.approx(ref_mean, abs=1e-12)
    assert float(mean) == pytest.approx(0.87184, abs=1e-5)


def test_liquid_segment_across_rho_is_rejected():
    with pytest.raises(SingularityError):
        roe.roe_data_liquid([0.5, 0.0], [1.5, 0.0], 1.0, P)


def test_vectorized_roe_data(rng):
    n = 50
    m = rng.uniform(0.1, 5.0, (2, n))
    v = rng.uniform(-3, 3, (2, n))
    uL = np.stack([m[0], m[0] * v[0]], -1)
    uR = np.stack([m[1], m[1] * v[1]], -1)
    d = roe.roe_data_gas(uL, uR, P)
    for k in range(0, n, 7):
        dk = roe.roe_data_gas(uL[k], uR[k], P)
        assert np.allclose(d.a_matrix[k], dk.a_matrix, rtol=0, atol=1e-15)


def _data(l1, l2):
    # A with eigenvalues l1, l2 in the companion form used by the Roe matrices
    uhat, c = 0.5 * (l1 + l2), 0.5 * (l2 - l1)
    return roe._assemble(np.float64(1.0), np.float64(uhat), np.float64(c * c))


def test_abs_matrix_identity():
    assert np.allclose(roe.abs_roe_matrix(_data(-1.0, 1.0)), np.eye(2), atol=1e-15)


def test_abs_matrix_positive_eigenvalues_equals_A():
    d = _data(0.5, 2.5)
    assert np.allclose(roe.abs_roe_matrix(d), d.a_matrix, atol=1e-14)


@pytest.mark.parametrize("l1, l2", [(-2.0, 3.0), (-4.0, -0.5), (-0.1, 0.2)])
def test_abs_matrix_eigenvectors(l1, l2):
    d = _data(l1, l2)
    absA = roe.abs_roe_matrix(d)
    R = d.right_eigenvectors
    for k, lam in enumerate((l1, l2)):
        assert np.allclose(absA @ R[:, k], abs(lam) * R[:, k], atol=1e-12)


def test_printed_dissipation_variant():
    # coincides with |A| when both eigenvalues are positive, differs otherwise
    d = _data(0.5, 2.5)
    assert np.allclose(roe.abs_roe_matrix(d, dissipation="printed"),
                       roe.abs_roe_matrix(d), atol=1e-14)
    d = _data(-2.0, 3.0)
    printed = roe.abs_roe_matrix(d, dissipation="printed")
    assert np.allclose(printed[0], roe.abs_roe_matrix(d)[0])
    assert np.allclose(printed[1], [-2.0 * 3.0 * (-5.0) / 5.0, (9.0 - 4.0) / 5.0])
    with pytest.raises(ValueError):
        roe.abs_roe_matrix(d, dissipation="other")


def test_degenerate_eigenvalues():
    d = roe._assemble(np.float64(1.0), np.float64(0.0), np.float64(0.0) + 1e-40)
    with pytest.raises(DegenerateEigenvalueError):
        roe.abs_roe_matrix(d)


def test_harten_fix_only_touches_small_eigenvalues():
    d = _data(-2.0, 3.0)
    assert np.allclose(roe.abs_roe_matrix(d, 0.5), roe.abs_roe_matrix(d))
    d = _data(-0.01, 3.0)
    fixed = roe.abs_roe_matrix(d, 0.5)
    R = d.right_eigenvectors
    a1 = (0.01**2 + 0.25) / 1.0
    assert np.allclose(fixed @ R[:, 0], a1 * R[:, 0], atol=1e-12)


def test_flux_zero_jump_is_exact():
    u = np.array([2.0, 3.0])
    assert np.array_equal(roe.roe_flux_gas(u, u, P), model.flux_gas(u, P))
    w = np.array([3.0, 3.0])
    assert np.allclose(roe.roe_flux_liquid(w, w, 2.0, P), model.flux_liquid(w, 2.0, P),
                       rtol=0, atol=1e-14)


def test_flux_supersonic_upwinds():
    uL, uR = np.array([2.0, 3.0]), np.array([2.5, 3.191])
    assert np.allclose(roe.roe_flux_gas(uL, uR, P), model.flux_gas(uL, P), atol=1e-12)


def test_flux_resolves_single_shock():
    # exact lambda1 shock of the first experiment, read off the jump conditions
    vR = 1.5 - math.sqrt(0.05)
    uL, uR = np.array([2.0, 3.0]), np.array([2.5, 2.5 * vR])
    s = (uR[1] - uL[1]) / (uR[0] - uL[0])
    F = roe.roe_flux_gas(uL, uR, P)
    # a Roe solver sees one wave of speed s, so F = f(uL) + min(s, 0) (uR - uL)
    assert np.allclose(F, model.flux_gas(uL, P) + min(s, 0.0) * (uR - uL), atol=1e-12)
    # and the full flux jump is s times the state jump
    assert np.allclose(model.flux_gas(uR, P) - model.flux_gas(uL, P), s * (uR - uL),
                       atol=1e-12)


def test_left_moving_shock_flux():
    # liquid mu1 shock of the first experiment moves left: F = f(wR) - s (wR - wL)
    # up to the second (unexcited) wave
    from twofluid import exact_riemann as E
    sol = E.build(E.EXPERIMENT1)
    wL = np.asarray(sol.states[0].liquid)
    wR = np.asarray(sol.states[1].liquid)
    s = sol.waves[0].speed
    F = roe.roe_flux_liquid(wL, wR, 2.0, P)
    assert np.allclose(F, model.flux_liquid(wL, 2.0, P) + s * (wR - wL), atol=1e-10)


def test_degraded_quadrature_breaks_roe_property():
    wL, wR = np.array([0.2, 0.0]), np.array([0.85, 0.3])
    good = roe.roe_data_liquid(wL, wR, 3.0, P)
    bad = roe.roe_data_liquid(wL, wR, 3.0, P, get_quadrature(2, 1))
    ref = model.flux_liquid(wR, 3.0, P) - model.flux_liquid(wL, 3.0, P)
    assert np.max(np.abs(good.a_matrix @ (wR - wL) - ref)) < 1e-10
    assert np.max(np.abs(bad.a_matrix @ (wR - wL) - ref)) > 1e-8
