"""Command-line front end: moments, dispersion tables, jump coefficients,
profiles, figure data and the direct-solver cross-check, all as CSV.

Exit status: 0 on success, 2 on usage or domain errors, 3 when a numerical
iteration does not converge.
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import dispersion, jump, profiles
from .direct_solver import DirectSolverConfig, relative_gap, solve_halfspace
from .errors import ConsistencyError, ConvergenceError, DomainError
from .kernels import GasStatistics, check_alpha, make_context
from .quadrature import DEFAULT_SPEC, QuadratureSpec

COMMANDS = ("moments", "dispersion", "jump", "profile", "figure", "oracle")
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3

# (label, statistics, fixed parameter) per figure
FIG_Q_CURVES = (("1", "bose", -0.5), ("2", "fermi", -0.5), ("3", "bose", -3.0))
FIG_ALPHA_CURVES = (("1", "bose", 0.5), ("2", "fermi", 0.5), ("3", "bose", 0.3), ("4", "bose", 0.2))


@dataclass
class RunConfig:
    command: str
    alpha: list = field(default_factory=lambda: [-1.0])
    q: list = field(default_factory=lambda: [1.0])
    statistics: GasStatistics = GasStatistics.BOSE
    output_path: str = None
    figure: int = None
    x_max: float = None
    tol: float = None
    grid_n: int = None
    profile_out: str = None
    alpha_given: bool = False
    q_given: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        for q in self.q:
            if not (jump.Q_MIN_CLI <= q <= 1):
                raise DomainError(f"q must lie in [{jump.Q_MIN_CLI}, 1], got {q}")
        if self.command != "figure":
            for a in self.alpha:
                check_alpha(a, self.statistics)
        if self.command == "figure" and self.figure not in (1, 2, 3, 4, 5):
            raise DomainError("figure number must be 1..5")
        if self.grid_n is not None and self.grid_n < 2:
            raise DomainError("--grid-n must be at least 2")

    @property
    def quad(self):
        if self.tol is None:
            return DEFAULT_SPEC
        return QuadratureSpec(abs_tol=self.tol, rel_tol=self.tol)


def _fmt(v):
    if isinstance(v, str):
        return v
    return f"{float(v):.12g}"


class _Writer:
    def __init__(self, fh):
        self._w = csv.writer(fh, lineterminator="\n")

    def header(self, *cols):
        self._w.writerow(cols)

    def row(self, *vals):
        self._w.writerow([_fmt(v) for v in vals])


def _ctx(alpha, statistics, cfg, cache={}):
    key = (float(alpha), GasStatistics.parse(statistics), cfg.quad)
    if key not in cache:
        cache[key] = make_context(alpha, statistics, cfg.quad)
    return cache[key]


def _moments(cfg, out):
    out.header("alpha", "statistics", "f0", "l", "f2", "g2", "g3", "g4")
    for a in cfg.alpha:
        c = _ctx(a, cfg.statistics, cfg)
        out.row(a, c.statistics.value, c.f0, c.l, c.f2, c.g2, c.g3, c.g4)


def _dispersion(cfg, fh):
    c = _ctx(cfg.alpha[0], cfg.statistics, cfg)
    grid = None
    if cfg.grid_n is not None:
        grid = np.geomspace(1e-4, c.quad.tail_cutoff, cfg.grid_n)
    dispersion.build_dispersion_table(c, grid).write_csv(fh)


def _jump(cfg, out):
    out.header("alpha", "q", "V1", "B_over_G", "C", "K", "C_N")
    for a in cfg.alpha:
        c = _ctx(a, cfg.statistics, cfg)
        for q in cfg.q:
            j = jump.jump_coefficients(c, q)
            out.row(a, q, j.v1, j.b_over_G, j.c_coeff, j.k_coeff, j.c_n)


def _profile(cfg, fh):
    c = _ctx(cfg.alpha[0], cfg.statistics, cfg)
    grid = profiles.DEFAULT_X_GRID
    if cfg.x_max is not None:
        if cfg.grid_n is not None:
            grid = np.linspace(0.0, cfg.x_max, cfg.grid_n)
        else:
            grid = grid[grid <= cfg.x_max]
    elif cfg.grid_n is not None:
        grid = np.linspace(0.0, 30.0, cfg.grid_n)
    profiles.profile_table(c, cfg.q[0], grid).write_csv(fh)


def _figure(cfg, out):
    n = cfg.figure
    if n == 1:
        alpha = cfg.alpha[0] if cfg.alpha_given else -1.0
        grid = np.linspace(0.0, 5.0, cfg.grid_n or 201)
        cb, cf = _ctx(alpha, "bose", cfg), _ctx(alpha, "fermi", cfg)
        out.header("tau", "lambda_bose", "lambda_fermi")
        for t in grid:
            out.row(t, dispersion.lambda_real(t, cb), dispersion.lambda_real(t, cf))
        return
    value_col = "K" if n in (2, 3) else "C_N"
    if n in (2, 4):
        curves = FIG_Q_CURVES
        if cfg.alpha_given:
            curves = tuple((str(i + 1), "bose", a) for i, a in enumerate(cfg.alpha))
            curves += ((str(len(curves) + 1), "fermi", cfg.alpha[0]),)
        qs = cfg.q if cfg.q_given else np.linspace(0.1, 1.0, cfg.grid_n or 19)
        out.header("curve", "statistics", "alpha", "q", "C", value_col)
        for label, stat, a in curves:
            c = _ctx(a, stat, cfg)
            for q in qs:
                C = jump.c_coefficient(c, q)
                val = jump.k_coefficient(c, q) if n == 2 else C * c.g2
                out.row(label, stat, a, q, C, val)
        return
    curves = FIG_ALPHA_CURVES
    if cfg.q_given:
        curves = tuple((str(i + 1), "bose", q) for i, q in enumerate(cfg.q))
        curves += ((str(len(curves) + 1), "fermi", cfg.q[0]),)
    alphas = cfg.alpha if cfg.alpha_given else np.linspace(-5.0, -0.1, cfg.grid_n or 50)
    out.header("curve", "statistics", "q", "alpha", "C", value_col)
    for label, stat, q in curves:
        for a in alphas:
            c = _ctx(a, stat, cfg)
            C = jump.c_coefficient(c, q)
            val = jump.k_coefficient(c, q) if n == 3 else C * c.g2
            out.row(label, stat, q, a, C, val)


def _oracle(cfg, out):
    solver_cfg = DirectSolverConfig()
    if cfg.x_max is not None:
        solver_cfg = replace(solver_cfg, x_max=cfg.x_max)
    if cfg.grid_n is not None:
        solver_cfg = replace(solver_cfg, n_cells=cfg.grid_n)
    out.header("alpha", "q", "statistics", "C_analytic", "C_numeric", "rel_gap",
               "fit_residual", "iterations", "converged")
    all_ok = True
    for a in cfg.alpha:
        c = _ctx(a, cfg.statistics, cfg)
        for q in cfg.q:
            res = solve_halfspace(c, q, 1.0, solver_cfg)
            C = jump.c_coefficient(c, q)
            out.row(a, q, c.statistics.value, C, res.jump_over_G,
                    relative_gap(res.jump_over_G, C), res.fit_residual,
                    str(res.iterations), str(res.converged).lower())
            if cfg.profile_out:
                res.write_csv(cfg.profile_out)
            all_ok &= res.converged
    return EXIT_OK if all_ok else EXIT_NUMERIC


def run(cfg, stdout=None):
    """Execute ``cfg``; returns the exit status."""
    cfg.validate()
    fh = open(cfg.output_path, "w", newline="") if cfg.output_path else (stdout or sys.stdout)
    try:
        out = _Writer(fh)
        if cfg.command == "moments":
            _moments(cfg, out)
        elif cfg.command == "dispersion":
            _dispersion(cfg, fh)
        elif cfg.command == "jump":
            _jump(cfg, out)
        elif cfg.command == "profile":
            _profile(cfg, fh)
        elif cfg.command == "figure":
            _figure(cfg, out)
        else:
            return _oracle(cfg, out)
    finally:
        if cfg.output_path:
            fh.close()
    return EXIT_OK


def _float_list(text):
    try:
        return [float(v) for v in str(text).replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def read_config_file(path):
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


def build_parser():
    p = argparse.ArgumentParser(prog="bosejump", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("figure", nargs="?", type=int, help="figure number for the 'figure' command")
    p.add_argument("--alpha", type=_float_list, help="dimensionless chemical potential(s), comma-separated")
    p.add_argument("--q", type=_float_list, help="evaporation coefficient(s), comma-separated")
    p.add_argument("--statistics", choices=[s.value for s in GasStatistics])
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--x-max", type=float, help="profile range / direct-solver slab length")
    p.add_argument("--tol", type=float, help="quadrature abs and rel tolerance")
    p.add_argument("--grid-n", type=int, help="number of grid points (or solver cells)")
    p.add_argument("--profile-out", help="oracle: also dump the numerical a(x) profile")
    p.add_argument("--config", help="key=value file with defaults for the options above")
    return p


def _glue_negative_values(argv):
    # argparse takes "-1,-3" for an option; attach it to its flag instead
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--alpha", "--q", "--x-max", "--tol"):
            nxt = next(it, None)
            if nxt is not None and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def config_from_args(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    file_vals = read_config_file(args.config) if args.config else {}

    def pick(name, conv=lambda v: v):
        val = getattr(args, name)
        if val is None and name in file_vals:
            val = conv(file_vals[name])
        return val

    alpha = pick("alpha", _float_list)
    q = pick("q", _float_list)
    stats = pick("statistics") or "bose"
    cfg = RunConfig(
        command=args.command,
        alpha=alpha or [-1.0],
        q=q or [1.0],
        statistics=GasStatistics.parse(stats),
        output_path=pick("out"),
        figure=args.figure,
        x_max=pick("x_max", float),
        tol=pick("tol", float),
        grid_n=pick("grid_n", int),
        profile_out=pick("profile_out"),
        alpha_given=alpha is not None,
        q_given=q is not None,
    )
    return cfg


def main(argv=None):
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    except SystemExit as exc:  # argparse usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (DomainError, argparse.ArgumentTypeError, OSError) as exc:
        print(f"bosejump: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, ConsistencyError) as exc:
        print(f"bosejump: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
