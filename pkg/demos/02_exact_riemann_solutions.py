"""Exact all-shock and all-rarefaction Riemann solutions.

The solutions are built backwards from the wave strengths, so every
intermediate state comes with the admissibility conditions it satisfies.
"""
import numpy as np

from twofluid import exact_riemann as E
from twofluid.errors import ConstructionError

# %% all shocks: mu1 shock, lambda1 shock carrying a liquid jump, mu2 shock
shock = E.build_all_shock(E.EXPERIMENT1)
print(shock.report())

# %% all rarefactions: the lambda1 fan moves all four variables and is
# integrated as an ODE in the characteristic speed
fan = E.build_all_rarefaction(E.EXPERIMENT2)
print()
print(fan.report())
print("wave speeds:", np.round(fan.wave_speeds(), 4))

# Within the gas fan the parameter equals the first gas speed.
st = fan.sample_xi(0.65)
print("lambda1 = v_G - 1/sqrt(C_G) at xi = 0.65:", st.gas.v - 1.0)

# %% sampling is self-similar
xs = np.linspace(-4, 4, 9)
for t in (0.5, 1.0, 2.0):
    prof = shock.sample_array(xs * t, t)
    print(f"t = {t}: m_L =", np.round(prof[:, 2], 4))

# %% failure modes are reported with the violated condition
try:
    E.build_all_shock(E.ShockProblemSpec(2.0, 1.5, 2.0, 3.0, 1.0, 3.25, 3.0))
except ConstructionError as exc:
    print("\nconstruction failed:", exc.check, "-", exc)

# Solutions serialize to JSON (states, waves, checks and fan tables).
fan.dump("exact_experiment2.json")
print("wrote exact_experiment2.json")
