"""Command-line front end.

Subcommands::

    twofluid exact        build an exact Riemann solution and sample it
    twofluid solve        run a simulation and write node/midpoint CSVs
    twofluid error-table  relative L1 errors for N = 16 ... 256
    twofluid validate     Roe-property, conservation and construction checks

Settings come from built-in defaults, then an optional ``--config`` file,
then command-line flags (later sources win).  The config file is a flat list
of ``key = value`` lines (an optional ``[experiment]`` header is accepted).
Numbers may be written as fractions, e.g. ``dt = 1/150``.

Exit codes: 0 success, 2 construction failure, 3 solver abort,
4 validation failure.
"""
import argparse
import configparser
import csv
import json
import os
import sys
import time
import warnings
from dataclasses import MISSING, dataclass, field, fields
from fractions import Fraction
from typing import Optional

import numpy as np

from . import exact_riemann, model, roe, simulation
from .errors import ConstructionError, SolverAbort, TwoFluidError
from .exact_riemann import RarefactionProblemSpec, ShockProblemSpec
from .model import FullState, ModelParams
from .numerics import get_quadrature

EXIT_OK = 0
EXIT_CONSTRUCTION = 2
EXIT_ABORT = 3
EXIT_VALIDATION = 4

PRESETS = {
    "experiment1": exact_riemann.EXPERIMENT1,
    "experiment2": exact_riemann.EXPERIMENT2,
}
TABLE_SIZES = (16, 32, 64, 128, 256)
# the two readings of the tables' time step: dx/dt = 4, and a CFL number
TABLE_POLICIES = (("ratio", 0.25), ("cfl", 0.45))

_SPEC_TYPES = {"shock": ShockProblemSpec, "rarefaction": RarefactionProblemSpec}


def parse_number(text):
    """Parse a float, accepting fractions such as ``1/150``."""
    text = str(text).strip()
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return float(text)


def parse_state(text):
    """Parse ``"m_G, v_G, m_L, v_L"`` into a :class:`FullState`."""
    parts = [parse_number(p) for p in str(text).split(",")]
    if len(parts) != 4:
        raise ValueError(f"a state needs four numbers, got {text!r}")
    return FullState.from_primitive(*parts)


def _state_text(state):
    return ", ".join(f"{x!r}" for x in map(float, state.primitive()))


@dataclass
class ExperimentConfig:
    """Resolved settings of one CLI invocation."""

    preset: Optional[str] = None
    spec: object = None
    left: Optional[FullState] = None
    right: Optional[FullState] = None
    C_G: float = 1.0
    rho_L: float = 1.0
    a: float = -5.0
    b: float = 5.0
    n: int = 54
    T: float = 1.0
    dt: Optional[float] = None
    ratio: Optional[float] = None
    cfl: Optional[float] = None
    scheme: str = "roe"
    boundary: str = "open"
    dissipation: str = "roe"
    harten_delta: float = 0.0
    quad_order: int = 16
    quad_panels: int = 4
    t: float = 1.0
    samples: int = 201
    out: str = "."
    extra: dict = field(default_factory=dict)

    @property
    def params(self):
        return ModelParams(C_G=self.C_G, rho_L=self.rho_L)

    @property
    def quadrature(self):
        return get_quadrature(self.quad_order, self.quad_panels)

    def policy(self):
        """The time-step policy as keyword arguments for ``RunConfig``."""
        given = {k: getattr(self, k) for k in ("dt", "ratio", "cfl")
                 if getattr(self, k) is not None}
        if len(given) > 1:
            raise ValueError("set only one of dt, ratio, cfl")
        return given or {"dt": 1.0 / 150.0}

    def build_solution(self):
        if self.spec is None:
            return None
        return exact_riemann.build(self.spec, self.params)

    def to_lines(self):
        """``key = value`` lines that reproduce this configuration."""
        lines = []
        if self.preset:
            lines.append(f"preset = {self.preset}")
        elif self.spec is not None:
            kind = "shock" if isinstance(self.spec, ShockProblemSpec) else "rarefaction"
            lines.append(f"problem = {kind}")
            for f in fields(self.spec):
                value = getattr(self.spec, f.name)
                if value is not None:
                    lines.append(f"{f.name} = {value!r}")
        if self.left is not None:
            lines.append(f"left = {_state_text(self.left)}")
            lines.append(f"right = {_state_text(self.right)}")
        for key in ("C_G", "rho_L", "a", "b", "n", "T", "dt", "ratio", "cfl",
                    "scheme", "boundary", "dissipation", "harten_delta",
                    "quad_order", "quad_panels", "t", "samples"):
            value = getattr(self, key)
            if value is not None:
                lines.append(f"{key} = {value!r}" if isinstance(value, float)
                             else f"{key} = {value}")
        return lines


_FLOAT_KEYS = ("C_G", "rho_L", "a", "b", "T", "dt", "ratio", "cfl",
               "harten_delta", "t")
_INT_KEYS = ("n", "quad_order", "quad_panels", "samples")
_STR_KEYS = ("scheme", "boundary", "dissipation", "out")


def read_config_file(path):
    """Read a flat ``key = value`` file into a dict of strings."""
    with open(path) as fh:
        text = fh.read()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # keys are case sensitive (C_G, T, ...)
    if not text.lstrip().startswith("["):
        text = "[experiment]\n" + text
    parser.read_string(text)
    out = {}
    for section in parser.sections():
        out.update(parser[section])
    return out


def resolve_config(values):
    """Turn a dict of raw settings into an :class:`ExperimentConfig`."""
    values = {k: v for k, v in values.items() if v is not None}
    cfg = ExperimentConfig()
    for key in _FLOAT_KEYS:
        if key in values:
            setattr(cfg, key, parse_number(values.pop(key)))
    for key in _INT_KEYS:
        if key in values:
            setattr(cfg, key, int(parse_number(values.pop(key))))
    for key in _STR_KEYS:
        if key in values:
            setattr(cfg, key, str(values.pop(key)))

    preset = values.pop("preset", None)
    problem = values.pop("problem", None)
    if preset is not None:
        if preset not in PRESETS:
            raise ValueError(f"unknown preset {preset!r}; choose from "
                             f"{', '.join(PRESETS)}")
        cfg.preset, cfg.spec = preset, PRESETS[preset]
    elif problem is not None:
        if problem not in _SPEC_TYPES:
            raise ValueError(f"problem must be 'shock' or 'rarefaction', got {problem!r}")
        spec_type = _SPEC_TYPES[problem]
        kwargs = {}
        for f in fields(spec_type):
            if f.name in values:
                kwargs[f.name] = parse_number(values.pop(f.name))
        missing = [f.name for f in fields(spec_type)
                   if f.name not in kwargs and f.default is MISSING]
        if missing:
            raise ValueError(f"problem = {problem} needs {', '.join(missing)}")
        cfg.spec = spec_type(**kwargs)
    if "left" in values or "right" in values:
        cfg.left = parse_state(values.pop("left"))
        cfg.right = parse_state(values.pop("right"))
    cfg.extra = values
    return cfg


# ---------------------------------------------------------------------------
# commands

def _outpath(cfg, name):
    os.makedirs(cfg.out, exist_ok=True)
    return os.path.join(cfg.out, name)


def _run_config(cfg, solution, N=None, **policy):
    grid = simulation.StaggeredGrid(cfg.a, cfg.b, N or cfg.n)
    if solution is not None:
        initial = (solution.left, solution.right)
    elif cfg.left is not None:
        initial = (cfg.left, cfg.right)
    else:
        raise ValueError("no initial data: give a preset, a problem spec, "
                         "or left/right states")
    return simulation.RunConfig(
        grid=grid, T=cfg.T, initial=initial, params=cfg.params,
        scheme=cfg.scheme, boundary=cfg.boundary,
        harten_delta=cfg.harten_delta, quadrature=cfg.quadrature,
        dissipation=cfg.dissipation, **(policy or cfg.policy()))


def cmd_exact(cfg):
    """Build the exact solution; write chain, report and a sampled profile."""
    if cfg.spec is None:
        raise ValueError("exact needs a preset or a problem spec")
    sol = cfg.build_solution()
    sol.dump(_outpath(cfg, "exact_chain.json"))
    report = sol.report()
    with open(_outpath(cfg, "exact_report.txt"), "w") as fh:
        fh.write(report + "\n")
    xs = np.linspace(cfg.a, cfg.b, cfg.samples)
    prof = sol.sample_array(xs, cfg.t)
    with open(_outpath(cfg, "exact_profile.csv"), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(simulation.CSV_HEADER[:5])
        for x, row in zip(xs, prof):
            writer.writerow([f"{x:.15g}"] + [f"{v:.15g}" for v in row])
    print(report)
    return EXIT_OK


def cmd_solve(cfg):
    """Run one simulation and write the node and midpoint CSVs."""
    sol = cfg.build_solution()
    run_cfg = _run_config(cfg, sol)
    state = simulation.run(run_cfg)
    nodes, mids = _outpath(cfg, "solve_nodes.csv"), _outpath(cfg, "solve_midpoints.csv")
    simulation.write_csv(state, run_cfg.grid, nodes, mids, exact=sol)
    print(f"t = {state.time:.15g}, N = {run_cfg.grid.N}, scheme = {cfg.scheme}")
    if sol is not None and state.time > 0:
        err = simulation.rel_l1_error(state, sol, run_cfg.grid)
        print("rel. L1 error [%]: " + ", ".join(f"{k} {v:.4f}" for k, v in err.items()))
    print(f"wrote {nodes} and {mids}")
    return EXIT_OK


def _policy_label(kind, value):
    if kind == "ratio":
        return f"dt = {value:g} dx"
    if kind == "dt":
        return f"dt = {value:.6g}"
    return f"CFL {value:g}"


def error_table(solution, cfg, policies=TABLE_POLICIES, sizes=TABLE_SIZES):
    """Relative L1 errors of ``m_L`` and ``v_L``.

    Returns a dict ``{(policy_kind, value): {(scheme, N): {var: err}}}``;
    runs that abort are stored as ``None``.
    """
    out = {}
    for kind, value in policies:
        cells = {}
        for scheme in ("roe", "nt"):
            for N in sizes:
                local = ExperimentConfig(**{**cfg.__dict__, "scheme": scheme})
                run_cfg = _run_config(local, solution, N=N, **{kind: value})
                try:
                    with warnings.catch_warnings():
                        warnings.simplefilter("ignore", simulation.CFLWarning)
                        state = simulation.run(run_cfg)
                    cells[scheme, N] = simulation.rel_l1_error(
                        state, solution, run_cfg.grid, ("m_L", "v_L"))
                except SolverAbort:
                    cells[scheme, N] = None
        out[kind, value] = cells
    return out


def format_table(title, cells, sizes=TABLE_SIZES):
    """Two tables (liquid mass, liquid velocity) with two decimals."""
    lines = [title]
    for var, name in (("m_L", "Liquid mass"), ("v_L", "Liquid velocity")):
        lines += ["", name, f"{'N':>5}  {'rel. L1 error (Roe)':>20}  {'rel. L1 error (NT)':>20}"]
        for N in sizes:
            row = []
            for scheme in ("roe", "nt"):
                e = cells[scheme, N]
                row.append(f"{e[var]:20.2f}" if e is not None else f"{'abort':>20}")
            lines.append(f"{N:>5}  " + "  ".join(row))
    return "\n".join(lines)


def cmd_error_table(cfg):
    """Error tables for the configured experiment(s) under both dt readings."""
    if cfg.spec is not None:
        runs = [(cfg.preset or "custom", cfg.spec)]
    else:
        runs = list(PRESETS.items())
    given = [(k, getattr(cfg, k)) for k in ("dt", "ratio", "cfl")
             if getattr(cfg, k) is not None]
    policies = given or TABLE_POLICIES
    text = []
    rows = []
    for name, spec in runs:
        sol = exact_riemann.build(spec, cfg.params)
        tables = error_table(sol, cfg, policies)
        for (kind, value), cells in tables.items():
            text.append(format_table(f"{name} ({_policy_label(kind, value)}, T = {cfg.T:g})",
                                     cells))
            for (scheme, N), e in sorted(cells.items()):
                for var in ("m_L", "v_L"):
                    rows.append([name, kind, f"{value:.15g}", scheme, N, var,
                                 "" if e is None else f"{e[var]:.15g}"])
    body = "\n\n".join(text) + "\n"
    with open(_outpath(cfg, "error_table.txt"), "w") as fh:
        fh.write(body)
    with open(_outpath(cfg, "error_table.csv"), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["experiment", "policy", "value", "scheme", "N",
                         "variable", "rel_l1_percent"])
        writer.writerows(rows)
    print(body, end="")
    return EXIT_OK


# ---------------------------------------------------------------------------
# validation suite

def roe_property_check(phase, params, n=2000, seed=0, quadrature=None):
    """Largest Roe-property and consistency residuals over random pairs.

    Returns ``(jump_residual, consistency_residual)``: the sup norm of
    ``A (uR - uL) - (f(uR) - f(uL))`` and of ``A(u, u) - df/du``.
    """
    rng = np.random.default_rng(seed)
    mG = rng.uniform(0.1, 5.0, n)
    if phase == "gas":
        mL, mR = rng.uniform(0.1, 5.0, (2, n))
    else:
        rho = params.rho_L
        upper = rng.random(n) < 0.5
        lo = np.where(upper, 1.1 * rho, 0.1)
        hi = np.where(upper, 4.0 * rho, 0.9 * rho)
        mL, mR = lo + (hi - lo) * rng.random((2, n))
    vL, vR = rng.uniform(-3.0, 3.0, (2, n))
    uL = np.stack([mL, mL * vL], axis=-1)
    uR = np.stack([mR, mR * vR], axis=-1)
    if phase == "gas":
        data = roe.roe_data_gas(uL, uR, params)
        same = roe.roe_data_gas(uL, uL, params)
        df = model.flux_gas(uR, params) - model.flux_gas(uL, params)
        jac = np.zeros((n, 2, 2))
        jac[:, 0, 1] = 1.0
        jac[:, 1, 0] = 1.0 / params.C_G - vL**2
        jac[:, 1, 1] = 2.0 * vL
    else:
        data = roe.roe_data_liquid(uL, uR, mG, params, quadrature)
        same = roe.roe_data_liquid(uL, uL, mG, params, quadrature)
        df = model.flux_liquid(uR, mG, params) - model.flux_liquid(uL, mG, params)
        jac = np.zeros((n, 2, 2))
        jac[:, 0, 1] = 1.0
        jac[:, 1, 0] = model.dP_dmL(mG, mL, params) - vL**2
        jac[:, 1, 1] = 2.0 * vL
    jump = np.einsum("nij,nj->ni", data.a_matrix, uR - uL) - df
    return float(np.max(np.abs(jump))), float(np.max(np.abs(same.a_matrix - jac)))


def periodic_pair_initial(left, right, width=2.5):
    """Initial-data callable: ``right`` on ``|x| < width``, ``left`` elsewhere."""
    def init(grid):
        def fill(x, part):
            inner = (np.abs(x) < width)[:, None]
            return np.where(inner, np.asarray(getattr(right, part), float),
                            np.asarray(getattr(left, part), float))
        return fill(grid.nodes, "gas"), fill(grid.midpoints, "liquid")
    return init


def conservation_check(scheme, params, steps=100, N=64, quadrature=None,
                       dissipation="roe"):
    """Relative drift of total gas and liquid mass on a periodic domain."""
    sol = exact_riemann.build(exact_riemann.EXPERIMENT1, params)
    grid = simulation.StaggeredGrid(-5.0, 5.0, N)
    run_cfg = simulation.RunConfig(
        grid=grid, T=1.0, initial=periodic_pair_initial(sol.left, sol.right),
        params=params, scheme=scheme, boundary="periodic", cfl=0.45,
        quadrature=quadrature, dissipation=dissipation)
    state = simulation.initial_state(run_cfg)
    dx = grid.dx
    gas0, liq0 = np.sum(state.u[:-1, 0]) * dx, np.sum(state.w[:, 0]) * dx
    dt = 0.45 * dx / simulation.max_speed(state, params)
    for _ in range(steps):
        state = simulation.step(state, dt, run_cfg)
    gas1, liq1 = np.sum(state.u[:-1, 0]) * dx, np.sum(state.w[:, 0]) * dx
    return abs(gas1 - gas0) / gas0, abs(liq1 - liq0) / liq0


CONSTRUCTION_TARGETS = {
    "experiment1": (5e-4, {
        ("R", "v_G"): 1.2764, ("'", "v_L"): 0.7487, ("''", "m_L"): 3.4995,
        ("''", "v_L"): 0.7226, ("R", "v_L"): 0.2475,
        ("shock", "lambda1"): 0.3820, ("shock", "mu1"): -2.2667,
        ("shock", "mu2"): 3.5761}),
    "experiment2": (1e-3, {
        ("R", "m_G"): 0.2963, ("R", "v_G"): 1.8, ("''", "m_L"): 0.5695,
        ("''", "v_L"): 0.9566, ("L", "v_L"): 0.4141, ("R", "v_L"): 1.3021}),
}
_VAR = {"m_G": 0, "v_G": 1, "m_L": 2, "v_L": 3}


def construction_check(name, params=exact_riemann.REFERENCE_PARAMS):
    """Largest deviation from the reference values of a preset."""
    tol, targets = CONSTRUCTION_TARGETS[name]
    sol = exact_riemann.build(PRESETS[name], params)
    states = dict(zip(sol.labels, sol.states))
    speeds = {w.family: w.speed for w in sol.waves if w.kind == "shock"}
    worst = 0.0
    for (where, what), ref in targets.items():
        got = speeds[what] if where == "shock" else states[where].primitive()[_VAR[what]]
        worst = max(worst, abs(got - ref))
    return worst, tol


def run_validation(cfg):
    """Run every check; returns a list of result dicts."""
    params, quad = cfg.params, cfg.quadrature
    results = []

    def record(name, value, limit, detail=""):
        passed = bool(np.isfinite(value) and value <= limit)
        results.append({"check": name, "value": value, "limit": limit,
                        "passed": passed, "detail": detail})

    for phase in ("gas", "liquid"):
        try:
            jump, cons = roe_property_check(phase, params, quadrature=quad)
            record(f"roe-property:{phase}", jump, 1e-8)
            record(f"roe-consistency:{phase}", cons, 1e-10)
        except TwoFluidError as exc:
            record(f"roe-property:{phase}", float("inf"), 1e-8, str(exc))
    for scheme in ("roe", "nt"):
        try:
            gas, liq = conservation_check(scheme, params, quadrature=quad,
                                          dissipation=cfg.dissipation)
            record(f"conservation:{scheme}", max(gas, liq), 1e-12)
        except TwoFluidError as exc:
            record(f"conservation:{scheme}", float("inf"), 1e-12, str(exc))
    for name in CONSTRUCTION_TARGETS:
        try:
            worst, tol = construction_check(name)
            record(f"construction:{name}", worst, tol)
        except TwoFluidError as exc:
            record(f"construction:{name}", float("inf"),
                   CONSTRUCTION_TARGETS[name][0], str(exc))
    return results


def cmd_validate(cfg):
    results = run_validation(cfg)
    ok = all(r["passed"] for r in results)
    report = {"passed": ok, "results": results}
    with open(_outpath(cfg, "validate.json"), "w") as fh:
        json.dump(report, fh, indent=2, default=float)
        fh.write("\n")
    for r in results:
        flag = "PASS" if r["passed"] else "FAIL"
        print(f"{flag}  {r['check']:<28} {r['value']:.3e} (limit {r['limit']:.0e})"
              + (f"  {r['detail']}" if r["detail"] else ""))
    return EXIT_OK if ok else EXIT_VALIDATION


COMMANDS = {"exact": cmd_exact, "solve": cmd_solve,
            "error-table": cmd_error_table, "validate": cmd_validate}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twofluid",
        description="Exact and numerical Riemann solutions of the two-fluid model.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("exact", "build and sample an exact solution"),
                            ("solve", "run a simulation"),
                            ("error-table", "L1 error tables for N = 16 ... 256"),
                            ("validate", "run the validation suite")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--preset", choices=sorted(PRESETS))
        p.add_argument("--config", help="flat key = value settings file")
        p.add_argument("--scheme", choices=("roe", "nt"))
        p.add_argument("--n", help="number of cells")
        p.add_argument("--dt", help="fixed time step (fractions allowed)")
        p.add_argument("--ratio", help="fixed dt/dx")
        p.add_argument("--cfl", help="CFL number")
        p.add_argument("--T", help="end time")
        p.add_argument("--boundary", choices=("open", "periodic"))
        p.add_argument("--dissipation", choices=roe.DISSIPATIONS)
        p.add_argument("--out", help="output directory")
        p.add_argument("--t", help="sampling time for exact")
        p.add_argument("--samples", help="number of sample points for exact")
        p.add_argument("--dump-config", metavar="PATH",
                       help="write the resolved settings and continue")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    values = read_config_file(args.config) if args.config else {}
    flags = {k: v for k, v in vars(args).items()
             if k not in ("command", "config", "dump_config") and v is not None}
    if "preset" in flags:
        for key in ("problem", "left", "right"):
            values.pop(key, None)
    if {"dt", "ratio", "cfl"} & flags.keys():
        for key in ("dt", "ratio", "cfl"):
            values.pop(key, None)
    values.update(flags)
    try:
        cfg = resolve_config(values)
        if cfg.extra:
            raise ValueError(f"unknown settings: {', '.join(sorted(cfg.extra))}")
        if args.dump_config:
            with open(args.dump_config, "w") as fh:
                fh.write("\n".join(cfg.to_lines()) + "\n")
        start = time.perf_counter()
        code = COMMANDS[args.command](cfg)
        print(f"[{args.command}] done in {time.perf_counter() - start:.2f} s",
              file=sys.stderr)
        return code
    except ConstructionError as exc:
        print(f"construction failed ({exc.check}): {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except SolverAbort as exc:
        print(f"solver aborted at index {exc.index}, t = {exc.time}: {exc}",
              file=sys.stderr)
        return EXIT_ABORT
    except (ValueError, TwoFluidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION if isinstance(exc, TwoFluidError) else 1


if __name__ == "__main__":
    sys.exit(main())
