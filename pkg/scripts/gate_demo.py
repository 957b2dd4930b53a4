#!/usr/bin/env python3
"""Hadamard-like rotation (exact vs split product) and the phase gate truth table."""

import math
import sys

import numpy as np

from catqubit import (
    CpsParams,
    DeformationSpec,
    FockSpace,
    RotationParams,
    build_logical_basis,
    cps_truth_table,
    logical_action,
    rotation_exact,
    rotation_split,
)

np.set_printoptions(precision=4, suppress=True)


def main(zeta_sq=3.0, xi=0.14):
    space = FockSpace(64)
    zeta = math.sqrt(zeta_sq)
    for spec in (DeformationSpec.identity(), DeformationSpec.laguerre(xi)):
        basis = build_logical_basis(zeta, spec, space)
        print(f"== {spec.label}")
        for theta in (math.pi / 4, math.pi / 8):
            params = RotationParams.from_theta(theta, zeta)
            exact = logical_action(rotation_exact(params, spec, space), basis)
            split = logical_action(rotation_split(params, spec, space), basis)
            print(f"theta={theta:.4f} beta*t={params.beta_t:.4f}")
            print("  exact M =\n", exact.matrix, f"\n  leakage {exact.leakage:.4f}")
            print("  split M =\n", split.matrix, f"\n  column norms {split.column_norms}")
        phases = cps_truth_table(basis, CpsParams(math.pi)).ordered()
        print("  CPS phases (00, 01, 10, 11):", np.round(phases, 12))
    return 0


if __name__ == "__main__":
    sys.exit(main())
