#!/usr/bin/env python3
"""Delta and separation d versus xi at zeta^2 = 3 (the data behind Fig. 1 a/b).

Writes results/fig1_sweep.csv plus results/sweep_meta.json and prints the
valid window with xi*.
"""

import sys
from pathlib import Path

from catqubit.cli import cmd_sweep, run_sweep
from catqubit.config import RunConfig

OUT = Path(__file__).resolve().parent.parent / "results"


def main():
    config = RunConfig(out=str(OUT / "fig1_sweep.csv"))
    meta = cmd_sweep(config)
    rows = run_sweep(config)
    print(f"{'xi':>8} {'delta':>12} {'d':>10}")
    for r in rows:
        if r.valid:
            label = "identity" if r.xi is None else f"{r.xi:.3f}"
            print(f"{label:>8} {r.delta:12.6e} {r.distance:10.6f}")
    first_bad = next(r for r in rows if not r.valid)
    print(f"first rejected xi={first_bad.xi:g} ({first_bad.reason} at n={first_bad.failing_n})")
    print(f"xi*={meta['xi_star']} delta={meta['delta_at_star']} d={meta['d_at_star']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
