"""Exact all-shock and all-rarefaction Riemann solutions.

The solutions are built backwards from chosen wave strengths rather than
solved for arbitrary data: a left-going liquid wave (mu1), a wave of the
first gas family that moves all four variables (lambda1), and a right-going
liquid wave (mu2), separating four constant states

    (m_G^L, v_G^L, m_L^L, v_L^L) -mu1-> (m_G^L, v_G^L, m_L', v_L')
        -lambda1-> (m_G^R, v_G^R, m_L'', v_L'') -mu2-> (m_G^R, v_G^R, m_L^R, v_L^R).

Every admissibility condition (Lax inequalities for shocks, increasing
characteristic speeds across fans, wave ordering) is checked and recorded;
a violated condition raises :class:`ConstructionError`.
"""
import json
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import model
from .errors import (ConstructionError, DomainError,
                     HyperbolicityError, ResonanceError)
from .model import FullState, GasState, LiquidState, ModelParams
from .numerics import (DenseTrajectory, bracketed_root, get_quadrature,
                       integrate_ode, line_average)

FAMILIES = ("mu1", "lambda1", "lambda2", "mu2")
RESONANCE_TOL = 1e-8


# ---------------------------------------------------------------------------
# jump conditions

def rh_velocity_jump(mL, mR, pL, pR):
    """Magnitude of the velocity jump across a shock, ``|[[v]]|``.

    From ``[[v]]^2 = [[m]] [[p]] / (m^L m^R)``.  The sign is chosen by the
    caller according to the wave family.

    Raises
    ------
    ConstructionError
        If ``[[m]] [[p]] < 0`` (no shock connects the two masses).
    """
    if not (mL > 0 and mR > 0):
        raise DomainError("shock masses must be positive")
    radicand = (mR - mL) * (pR - pL) / (mR * mL)
    if radicand < 0:
        raise ConstructionError(f"no Hugoniot connection: [[m]][[p]] = "
                                f"{(mR - mL) * (pR - pL):.6g} < 0",
                                check="hugoniot")
    return float(np.sqrt(radicand))


def shock_speed(mL, vL, mR, vR):
    """Shock speed ``[[m v]] / [[m]]``."""
    if mR == mL:
        raise ConstructionError("shock speed undefined for equal masses",
                                check="degenerate-jump")
    return (mR * vR - mL * vL) / (mR - mL)


def _hugoniot_velocity(family_index, m_from, v_from, m_to, p_from, p_to):
    # family 1: velocity drops across a compressive shock (m increases)
    # family 2: velocity drops across an expansive-looking jump (m decreases)
    jump = rh_velocity_jump(m_from, m_to, p_from, p_to)
    sign = np.sign(m_to - m_from)
    if family_index == 1:
        return v_from - sign * jump
    return v_from + sign * jump


def coupled_shock_residual(m_L_dprime, m_L_prime, m_G_L, m_G_R, v_L_prime, s,
                           params):
    """Residual of the liquid jump carried by a gas shock of speed ``s``.

    ``(m_L''/m_L') [[P]] - (m_L'' - m_L') (s - v_L')^2`` with
    ``[[P]] = P(m_G^R, m_L'') - P(m_G^L, m_L')``.
    """
    jump_P = (model.P_liquid(m_G_R, m_L_dprime, params)
              - model.P_liquid(m_G_L, m_L_prime, params))
    return (m_L_dprime / m_L_prime * jump_P
            - (m_L_dprime - m_L_prime) * (s - v_L_prime) ** 2)


def solve_coupled_shock(m_L_prime, v_L_prime, m_G_L, m_G_R, s, params,
                        tol=1e-13):
    """Liquid state behind a gas shock that travels at the same speed ``s``.

    Returns ``(m_L'', v_L'')``.  The root is searched on the same side of
    ``rho_L`` as ``m_L'``, expanding the bracket geometrically in both
    directions up to a factor of ten.

    Raises
    ------
    ConstructionError
        If no sign change of the residual is found.
    """
    if m_G_L == m_G_R:
        return float(m_L_prime), float(v_L_prime)

    def H(m):
        return coupled_shock_residual(m, m_L_prime, m_G_L, m_G_R, v_L_prime,
                                      s, params)

    m0 = float(m_L_prime)
    rho = params.rho_L
    h0 = H(m0)
    if h0 == 0.0:
        return m0, float(v_L_prime)
    # upper and lower limits that keep the bracket away from the pole
    pole_gap = 1e-9 * rho
    up_limit = min(10.0 * m0, rho - pole_gap) if m0 < rho else 10.0 * m0
    low_limit = max(m0 / 10.0, rho + pole_gap) if m0 > rho else m0 / 10.0
    root = None
    for limit in (up_limit, low_limit):
        delta = 1e-3
        prev = m0
        while True:
            cand = m0 * (1.0 + delta) if limit > m0 else m0 / (1.0 + delta)
            cand = min(cand, limit) if limit > m0 else max(cand, limit)
            if H(cand) * h0 <= 0:
                lo, hi = sorted((prev, cand))
                root = bracketed_root(H, lo, hi, tol)
                break
            if cand == limit:
                break
            prev = cand
            delta *= 2.0
        if root is not None:
            break
    if root is None:
        raise ConstructionError("no root of the coupled-shock residual within "
                                "a factor 10 of m_L'", check="coupled-shock")
    v = v_L_prime + (s - v_L_prime) * (root - m0) / root
    return float(root), float(v)


def rh_residuals(left, right, s, pressure_left, pressure_right):
    """Residuals of both Rankine-Hugoniot conditions for one phase.

    ``left`` and ``right`` are ``(m, v)`` pairs.  Returns
    ``(s[[m]] - [[m v]], s[[m v]] - [[m v^2]] - [[p]])``.
    """
    (mL, vL), (mR, vR) = left, right
    r1 = s * (mR - mL) - (mR * vR - mL * vL)
    r2 = (s * (mR * vR - mL * vL) - (mR * vR**2 - mL * vL**2)
          - (pressure_right - pressure_left))
    return r1, r2


# ---------------------------------------------------------------------------
# rarefaction curves

def _mu_sign(family):
    if family == "mu1":
        return -1.0
    if family == "mu2":
        return 1.0
    raise ValueError(f"not a liquid family: {family!r}")


def mu_rarefaction_velocity(m_from, v_from, m_to, m_G, family, params,
                            quadrature=None):
    """Velocity reached along a liquid (mu) integral curve.

    ``v_to = v_from -+ int_{m_from}^{m_to} sqrt(P_mL(m_G, m)) / m dm`` with
    the minus sign for ``mu1`` and the plus sign for ``mu2``.

    Raises
    ------
    HyperbolicityError
        If ``P_mL <= 0`` somewhere on the mass interval.
    """
    sign = _mu_sign(family)
    if m_to == m_from:
        return float(v_from)
    if not (m_from > 0 and m_to > 0):
        raise DomainError("liquid masses must be positive")
    if (m_from - params.rho_L) * (m_to - params.rho_L) <= 0:
        raise HyperbolicityError("mass interval crosses rho_L")

    def integrand(m):
        d = model.dP_dmL(m_G, m, params)
        if np.any(~(d > 0)):
            raise HyperbolicityError("P_mL <= 0 on the rarefaction interval")
        return np.sqrt(d) / m

    quad = quadrature if quadrature is not None else get_quadrature(16, 8)
    integral = (m_to - m_from) * line_average(integrand, m_from, m_to, quad)
    return float(v_from + sign * integral)


def _mu_speed(m_L, v_L, m_G, family, params):
    c = np.sqrt(model.dP_dmL(m_G, m_L, params))
    return v_L + _mu_sign(family) * c


def _lambda_rhs(family, params):
    c = params.sound_speed
    sgn = -1.0 if family == "lambda1" else 1.0

    def rhs(xi, y):
        m_G, q_G, m_L, q_L = y
        v_G, v_L = q_G / m_G, q_L / m_L
        lam = v_G + sgn * c
        P_mL = model.dP_dmL(m_G, m_L, params)
        denom = (lam - v_L) ** 2 - P_mL
        if abs(denom) < RESONANCE_TOL:
            raise ResonanceError(f"gas and liquid speeds resonate at xi={xi:.8g}",
                                 last_xi=float(xi))
        coef = model.dP_dmG(m_G, m_L, params) / denom
        # grad(lambda) . (1, lam, coef, coef*lam) = (lam - v_G) / m_G
        scale = m_G / (lam - v_G)
        return scale * np.array([1.0, lam, coef, coef * lam])

    return rhs


def lambda_rarefaction_curve(left, params, m_G_target=None, xi_end=None,
                             family="lambda1", tol=1e-12):
    """Integral curve of a gas family through ``left`` in all four variables.

    ``left`` is a :class:`FullState` or a conserved vector
    ``(m_G, q_G, m_L, q_L)``.

    The curve is parameterized by the characteristic speed ``xi`` of the
    family (the eigenvector is normalized so that its directional
    derivative of the speed is one).  Give either the final gas mass
    ``m_G_target`` or the final speed ``xi_end``.

    Returns
    -------
    DenseTrajectory
        Conserved states ``(m_G, q_G, m_L, q_L)`` as a function of ``xi``.

    Raises
    ------
    ResonanceError
        If ``(lambda - v_L)^2 - P_mL`` comes within ``1e-8`` of zero.
    IntegrationError
        If the target cannot be reached.
    """
    if family not in ("lambda1", "lambda2"):
        raise ValueError(f"not a gas family: {family!r}")
    if (m_G_target is None) == (xi_end is None):
        raise ValueError("give exactly one of m_G_target and xi_end")
    y0 = left.conserved() if isinstance(left, FullState) \
        else np.asarray(left, dtype=float)
    l1, l2 = model.eigen_gas(y0[:2], params)
    xi0 = l1 if family == "lambda1" else l2
    rhs = _lambda_rhs(family, params)
    if xi_end is not None:
        return integrate_ode(rhs, y0, xi0, float(xi_end), tol)
    if m_G_target == y0[0]:
        return DenseTrajectory(np.array([xi0]), y0[None, :])
    # the gas part is exactly m_G = m_G^L exp(-+(xi - xi0) sqrt(C_G)); use it
    # only to size the integration window
    sgn = -1.0 if family == "lambda1" else 1.0
    guess = xi0 + sgn * np.log(m_G_target / y0[0]) * np.sqrt(params.C_G)
    bound = xi0 + 2.0 * (guess - xi0)
    return integrate_ode(rhs, y0, xi0, bound, tol,
                         stop=lambda xi, y: y[0] - m_G_target)


# ---------------------------------------------------------------------------
# solution objects

@dataclass
class Check:
    """One admissibility condition, ``lhs op rhs``."""

    name: str
    expression: str
    values: tuple
    passed: bool

    def __str__(self):
        vals = " ".join(f"{v:.6g}" for v in self.values)
        flag = "ok" if self.passed else "FAILED"
        return f"{self.name}: {self.expression} [{vals}] {flag}"


@dataclass
class MuFan:
    """Liquid rarefaction fan at fixed gas state."""

    family: str
    m_G: float
    m_from: float
    v_from: float
    m_to: float
    params: ModelParams

    def velocity(self, m_L):
        return mu_rarefaction_velocity(self.m_from, self.v_from, m_L, self.m_G,
                                       self.family, self.params)

    def speed(self, m_L):
        return _mu_speed(m_L, self.velocity(m_L), self.m_G, self.family,
                         self.params)

    def mass_at(self, xi, tol=1e-13):
        """Liquid mass where the family speed equals ``xi``."""
        lo, hi = sorted((self.m_from, self.m_to))
        return bracketed_root(lambda m: self.speed(m) - xi, lo, hi, tol)


@dataclass
class Wave:
    """A shock (``speed``) or a rarefaction fan (``head < tail``)."""

    family: str
    kind: str
    speed: Optional[float] = None
    head: Optional[float] = None
    tail: Optional[float] = None
    trajectory: Optional[DenseTrajectory] = field(default=None, repr=False)
    mu_fan: Optional[MuFan] = field(default=None, repr=False)

    @property
    def left_speed(self):
        return self.speed if self.kind == "shock" else self.head

    @property
    def right_speed(self):
        return self.speed if self.kind == "shock" else self.tail


@dataclass
class RiemannSolution:
    """Constant states separated by waves, sampled self-similarly."""

    states: List[FullState]
    waves: List[Wave]
    params: ModelParams
    checks: List[Check] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.states) != len(self.waves) + 1:
            raise ValueError("need exactly one more state than waves")

    @property
    def left(self):
        return self.states[0]

    @property
    def right(self):
        return self.states[-1]

    def sample(self, x, t):
        """State at ``(x, t)``.

        At ``t = 0`` the initial jump is returned (left state at ``x = 0``).
        Exactly on a shock the left limit is returned.
        """
        if t == 0:
            return self.left if x <= 0 else self.right
        if t < 0:
            raise ValueError("t must be nonnegative")
        return self.sample_xi(x / t)

    def sample_xi(self, xi):
        for i, wave in enumerate(self.waves):
            if xi <= wave.left_speed:
                return self.states[i]
            if wave.kind == "rarefaction" and xi < wave.tail:
                return self._fan_state(i, wave, xi)
        return self.states[-1]

    def _fan_state(self, i, wave, xi):
        if wave.trajectory is not None:
            return FullState.from_conserved(wave.trajectory(xi))
        fan = wave.mu_fan
        m = fan.mass_at(xi)
        gas = self.states[i].gas
        return FullState(gas, LiquidState.from_velocity(m, fan.velocity(m)))

    def sample_array(self, x, t, primitive=True):
        """Sample at an array of positions; returns shape ``(len(x), 4)``."""
        rows = [self.sample(float(xx), t) for xx in np.ravel(x)]
        if primitive:
            return np.array([r.primitive() for r in rows])
        return np.array([r.conserved() for r in rows])

    def wave_speeds(self):
        """All shock speeds and fan edges, left to right."""
        out = []
        for w in self.waves:
            out.extend([w.speed] if w.kind == "shock" else [w.head, w.tail])
        return out

    def to_dict(self, fan_samples=21):
        def prim(s):
            m_G, v_G, m_L, v_L = s.primitive()
            return {"m_G": m_G, "v_G": v_G, "m_L": m_L, "v_L": v_L}

        waves = []
        for i, w in enumerate(self.waves):
            d = {"family": w.family, "kind": w.kind}
            if w.kind == "shock":
                d["speed"] = w.speed
            else:
                d["head"], d["tail"] = w.head, w.tail
                xs = np.linspace(w.head, w.tail, fan_samples)
                d["table"] = [[float(xi), *map(float, self.sample_xi(xi).primitive())]
                              for xi in xs] if w.head < w.tail else []
            waves.append(d)
        return {
            "params": {"C_G": self.params.C_G, "rho_L": self.params.rho_L},
            "labels": list(self.labels),
            "states": [prim(s) for s in self.states],
            "waves": waves,
            "checks": [{"name": c.name, "expression": c.expression,
                        "values": list(c.values), "passed": c.passed}
                       for c in self.checks],
        }

    def dump(self, path, fan_samples=21):
        """Write states, waves, checks and fan tables as JSON."""
        with open(path, "w") as fh:
            json.dump(self.to_dict(fan_samples), fh, indent=2)
            fh.write("\n")

    def report(self):
        lines = []
        for label, s in zip(self.labels or [""] * len(self.states), self.states):
            m_G, v_G, m_L, v_L = s.primitive()
            lines.append(f"state {label:>4}: m_G={m_G:.6f} v_G={v_G:.6f} "
                         f"m_L={m_L:.6f} v_L={v_L:.6f}")
        for w in self.waves:
            if w.kind == "shock":
                lines.append(f"{w.family:>7} shock  s={w.speed:.6f}")
            else:
                lines.append(f"{w.family:>7} fan    [{w.head:.6f}, {w.tail:.6f}]")
        lines.extend(str(c) for c in self.checks)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# construction algorithms

@dataclass(frozen=True)
class ShockProblemSpec:
    """Free parameters of the all-shock construction.

    The liquid velocity on the far left, ``v_L_L``, fixes the liquid
    velocities; every other velocity follows from the jump conditions.
    """

    m_G_L: float
    v_G_L: float
    m_G_R: float
    m_L_L: float
    v_L_L: float
    m_L_prime: float
    m_L_R: float


@dataclass(frozen=True)
class RarefactionProblemSpec:
    """Free parameters of the all-rarefaction construction.

    The end of the gas fan is given either by ``v_G_R`` or by ``m_G_R``.
    """

    m_G_L: float
    v_G_L: float
    m_L_prime: float
    v_L_prime: float
    m_L_L: float
    m_L_R: float
    v_G_R: Optional[float] = None
    m_G_R: Optional[float] = None


EXPERIMENT1 = ShockProblemSpec(m_G_L=2.0, v_G_L=1.5, m_G_R=2.5, m_L_L=3.0,
                               v_L_L=1.0, m_L_prime=3.25, m_L_R=3.0)
EXPERIMENT2 = RarefactionProblemSpec(m_G_L=0.4, v_G_L=1.5, m_L_prime=0.5,
                                     v_L_prime=1.0, m_L_L=0.7, m_L_R=0.7,
                                     v_G_R=1.8)
REFERENCE_PARAMS = ModelParams(C_G=1.0, rho_L=1.0)


class _Checker:
    def __init__(self):
        self.checks = []

    def require(self, name, expression, values, passed):
        check = Check(name, expression, tuple(float(v) for v in values),
                      bool(passed))
        self.checks.append(check)
        if not check.passed:
            raise ConstructionError(f"admissibility check failed: {check}",
                                    check=name)


def build_all_shock(spec, params=REFERENCE_PARAMS):
    """Build the mu1-shock / lambda1-shock / mu2-shock solution.

    Raises
    ------
    ConstructionError
        Naming the first violated Lax or ordering condition.
    """
    chk = _Checker()
    P = model.P_liquid
    m_G_L, v_G_L, m_G_R = spec.m_G_L, spec.v_G_L, spec.m_G_R
    if m_G_R == m_G_L:
        raise ConstructionError("zero gas jump: no lambda1 shock exists",
                                check="gas-jump")

    # gas lambda1 shock
    v_G_R = _hugoniot_velocity(1, m_G_L, v_G_L, m_G_R,
                               model.p_gas(m_G_L, params),
                               model.p_gas(m_G_R, params))
    s = shock_speed(m_G_L, v_G_L, m_G_R, v_G_R)
    lamL = model.eigen_gas((m_G_L, m_G_L * v_G_L), params)[0]
    lamR = model.eigen_gas((m_G_R, m_G_R * v_G_R), params)[0]
    chk.require("lax:lambda1", "lambda1(L) > s > lambda1(R)",
                (lamL, s, lamR), lamL > s > lamR)

    # liquid mu1 shock at gas state L
    m_L_L, v_L_L, m1 = spec.m_L_L, spec.v_L_L, spec.m_L_prime
    v1 = _hugoniot_velocity(1, m_L_L, v_L_L, m1, P(m_G_L, m_L_L, params),
                            P(m_G_L, m1, params))
    s_LL = shock_speed(m_L_L, v_L_L, m1, v1)
    muL = _mu_speed(m_L_L, v_L_L, m_G_L, "mu1", params)
    mu1 = _mu_speed(m1, v1, m_G_L, "mu1", params)
    chk.require("lax:mu1", "mu1(L) > s_L^L > mu1(')", (muL, s_LL, mu1),
                muL > s_LL > mu1)
    chk.require("order:mu1<lambda1", "s_L^L < s", (s_LL, s), s_LL < s)

    # liquid jump carried by the gas shock
    m2, v2 = solve_coupled_shock(m1, v1, m_G_L, m_G_R, s, params)
    mu2_mid = _mu_speed(m2, v2, m_G_R, "mu2", params)
    chk.require("order:lambda1<mu2", "s < mu2('')", (s, mu2_mid), s < mu2_mid)

    # liquid mu2 shock at gas state R
    m_L_R = spec.m_L_R
    v_L_R = _hugoniot_velocity(2, m2, v2, m_L_R, P(m_G_R, m2, params),
                               P(m_G_R, m_L_R, params))
    s_LR = shock_speed(m2, v2, m_L_R, v_L_R)
    muR = _mu_speed(m_L_R, v_L_R, m_G_R, "mu2", params)
    chk.require("lax:mu2", "mu2('') > s_L^R > mu2(R)", (mu2_mid, s_LR, muR),
                mu2_mid > s_LR > muR)
    chk.require("order:s<s_L^R", "s < s_L^R", (s, s_LR), s < s_LR)

    states = [
        FullState.from_primitive(m_G_L, v_G_L, m_L_L, v_L_L),
        FullState.from_primitive(m_G_L, v_G_L, m1, v1),
        FullState.from_primitive(m_G_R, v_G_R, m2, v2),
        FullState.from_primitive(m_G_R, v_G_R, m_L_R, v_L_R),
    ]
    waves = [Wave("mu1", "shock", speed=s_LL),
             Wave("lambda1", "shock", speed=s),
             Wave("mu2", "shock", speed=s_LR)]
    return RiemannSolution(states, waves, params, chk.checks,
                           labels=["L", "'", "''", "R"])


def build_all_rarefaction(spec, params=REFERENCE_PARAMS, tol=1e-12):
    """Build the mu1-fan / lambda1-fan / mu2-fan solution.

    Raises
    ------
    ConstructionError
        If the fans are not ordered or a characteristic speed does not
        increase across its own fan.
    """
    chk = _Checker()
    mid_left = FullState.from_primitive(spec.m_G_L, spec.v_G_L,
                                        spec.m_L_prime, spec.v_L_prime)
    if spec.v_G_R is not None:
        xi_end = spec.v_G_R - params.sound_speed
        traj = lambda_rarefaction_curve(mid_left, params, xi_end=xi_end, tol=tol)
    elif spec.m_G_R is not None:
        traj = lambda_rarefaction_curve(mid_left, params,
                                        m_G_target=spec.m_G_R, tol=tol)
    else:
        raise ValueError("spec needs v_G_R or m_G_R")
    mid_right = FullState.from_conserved(traj.states[-1])
    if spec.v_G_R is not None:
        # pin the gas velocity to the requested value exactly
        mid_right = FullState(GasState.from_velocity(mid_right.gas.m, spec.v_G_R),
                              mid_right.liquid)
    m_G_L, m_G_R = spec.m_G_L, mid_right.gas.m
    m2, v2 = mid_right.liquid.m, mid_right.liquid.v

    v_L_L = mu_rarefaction_velocity(spec.m_L_prime, spec.v_L_prime, spec.m_L_L,
                                    m_G_L, "mu1", params)
    v_L_R = mu_rarefaction_velocity(m2, v2, spec.m_L_R, m_G_R, "mu2", params)

    mu1_head = _mu_speed(spec.m_L_L, v_L_L, m_G_L, "mu1", params)
    mu1_tail = _mu_speed(spec.m_L_prime, spec.v_L_prime, m_G_L, "mu1", params)
    lam_head, lam_tail = traj.start, traj.end
    mu2_head = _mu_speed(m2, v2, m_G_R, "mu2", params)
    mu2_tail = _mu_speed(spec.m_L_R, v_L_R, m_G_R, "mu2", params)
    chk.require("fan:mu1", "mu1(L) <= mu1(')", (mu1_head, mu1_tail),
                mu1_head <= mu1_tail)
    chk.require("fan:lambda1", "lambda1(L) <= lambda1(R)", (lam_head, lam_tail),
                lam_head <= lam_tail)
    chk.require("fan:mu2", "mu2('') <= mu2(R)", (mu2_head, mu2_tail),
                mu2_head <= mu2_tail)
    chk.require("order:mu1<lambda1", "mu1(') < lambda1(L)",
                (mu1_tail, lam_head), mu1_tail < lam_head)
    chk.require("order:lambda1<mu2", "lambda1(R) < mu2('')",
                (lam_tail, mu2_head), lam_tail < mu2_head)

    states = [
        FullState.from_primitive(m_G_L, spec.v_G_L, spec.m_L_L, v_L_L),
        mid_left,
        mid_right,
        FullState(mid_right.gas, LiquidState.from_velocity(spec.m_L_R, v_L_R)),
    ]
    waves = [
        Wave("mu1", "rarefaction", head=mu1_head, tail=mu1_tail,
             mu_fan=MuFan("mu1", m_G_L, spec.m_L_prime, spec.v_L_prime,
                          spec.m_L_L, params)),
        Wave("lambda1", "rarefaction", head=lam_head, tail=lam_tail,
             trajectory=traj),
        Wave("mu2", "rarefaction", head=mu2_head, tail=mu2_tail,
             mu_fan=MuFan("mu2", m_G_R, m2, v2, spec.m_L_R, params)),
    ]
    return RiemannSolution(states, waves, params, chk.checks,
                           labels=["L", "'", "''", "R"])


def build(spec, params=REFERENCE_PARAMS):
    """Dispatch on the spec type."""
    if isinstance(spec, ShockProblemSpec):
        return build_all_shock(spec, params)
    if isinstance(spec, RarefactionProblemSpec):
        return build_all_rarefaction(spec, params)
    raise TypeError(f"unknown problem spec {type(spec).__name__}")


__all__ = [
    "Check", "EXPERIMENT1", "EXPERIMENT2", "MuFan", "REFERENCE_PARAMS",
    "RarefactionProblemSpec", "RiemannSolution", "ShockProblemSpec", "Wave",
    "build", "build_all_rarefaction", "build_all_shock",
    "coupled_shock_residual", "lambda_rarefaction_curve",
    "mu_rarefaction_velocity", "rh_residuals", "rh_velocity_jump",
    "shock_speed", "solve_coupled_shock",
]
