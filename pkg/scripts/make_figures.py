"""Write the CSV data behind every figure, plus a dispersion table and a profile.

    python scripts/make_figures.py --out-dir figures
"""

import argparse
import pathlib
import time

from bosejump.cli import main


def build(out_dir):
    out_dir = pathlib.Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [(["figure", str(n)], f"figure{n}.csv") for n in range(1, 6)]
    jobs += [
        (["dispersion", "--alpha=-1"], "dispersion_bose_m1.csv"),
        (["dispersion", "--alpha=-1", "--statistics", "fermi"], "dispersion_fermi_m1.csv"),
        (["profile", "--alpha=-1", "--q", "0.5"], "profile_bose_m1_q05.csv"),
        (["jump", "--alpha=-5,-3,-1,-0.5,-0.1", "--q", "0.2,0.5,1"], "jump_bose.csv"),
    ]
    for args, name in jobs:
        start = time.perf_counter()
        code = main(args + ["--out", str(out_dir / name)])
        if code:
            raise SystemExit(f"{' '.join(args)} failed with exit status {code}")
        print(f"{name:28s} {time.perf_counter() - start:6.2f} s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--out-dir", default="figures")
    build(p.parse_args().out_dir)
