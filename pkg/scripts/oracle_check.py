"""Compare the analytic jump coefficient with the discrete-ordinates solver.

Prints one line per (statistics, alpha, q) with both values, the relative
gap, the sweep count and the wall time.

    python scripts/oracle_check.py --alpha -1,-3 --q 0.5,1
"""

import argparse
import time
from dataclasses import replace

from bosejump import make_context
from bosejump.direct_solver import DirectSolverConfig, relative_gap, solve_halfspace
from bosejump.jump import c_coefficient


def parse_list(text):
    return [float(v) for v in text.split(",") if v]


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--alpha", type=parse_list, default=[-1.0, -3.0])
    p.add_argument("--q", type=parse_list, default=[0.5, 1.0])
    p.add_argument("--statistics", default="bose,fermi")
    p.add_argument("--n-cells", type=int, default=DirectSolverConfig.n_cells)
    p.add_argument("--x-max", type=float, default=DirectSolverConfig.x_max)
    args = p.parse_args()
    cfg = replace(DirectSolverConfig(), n_cells=args.n_cells, x_max=args.x_max)

    print(f"{'stat':9s} {'alpha':>6s} {'q':>5s} {'analytic':>12s} {'solver':>12s} {'flux':>12s} {'gap':>9s} {'sweeps':>7s} {'time':>6s}")
    for stat in args.statistics.split(","):
        for a in args.alpha:
            ctx = make_context(a, stat)
            for q in args.q:
                start = time.perf_counter()
                res = solve_halfspace(ctx, q, config=cfg)
                C = c_coefficient(ctx, q)
                print(f"{stat:9s} {a:6.2f} {q:5.2f} {C:12.8f} {res.jump_over_G:12.8f} "
                      f"{res.flux_jump_over_G:12.8f} {relative_gap(res.jump_over_G, C):9.2e} "
                      f"{res.iterations:7d} {time.perf_counter() - start:5.1f}s")


if __name__ == "__main__":
    main()
