"""Two-fluid pipe-flow model: Roe and Nessyahu-Tadmor solvers on a staggered
grid, and exact all-shock / all-rarefaction Riemann solutions."""
from .errors import (BracketError, ConstructionError, DegenerateEigenvalueError,
                     DomainError, HyperbolicityError, IntegrationError,
                     ResonanceError, SingularityError, SolverAbort, TwoFluidError)
from .exact_riemann import (EXPERIMENT1, EXPERIMENT2, REFERENCE_PARAMS,
                            RarefactionProblemSpec, RiemannSolution,
                            ShockProblemSpec, build, build_all_rarefaction,
                            build_all_shock)
from .model import FullState, GasState, LiquidState, ModelParams
from .simulation import RunConfig, SimState, StaggeredGrid, rel_l1_error, run

__version__ = "0.1.0"
