"""Compare the three Ricci readings on random deformations of a group-like Δ0.

For each instance prints whether each contraction vanishes and whether
solve_stress followed by the residual closes exactly.
"""

import argparse
import sys

from operadic import Field, ModuleSpace
from operadic import cogravity as cg
from operadic.errors import DegenerateTraceError
from operadic.exact import ExactTensor
from operadic.generators import (group_like, random_nonzero, random_scalars,
                                 random_symmetric_invertible, rng_for)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    Q = Field.rational()
    bad = 0
    print(f"{'d':>2} {'slot':>7} {'zero ricci':>10} {'closed':>7} {'refused':>8}")
    for d in args.dims:
        space = ModuleSpace(d, Q)
        for slot in ("first", "middle", "last"):
            zero = closed = refused = 0
            for t in range(args.instances):
                rng = rng_for(args.seed, d, t)
                gamma = cg.ConnectionCoefficients(
                    space, ExactTensor.from_scalars(Q, random_scalars(rng, space, (d,) * 3)))
                metric = cg.Metric.from_matrix(random_symmetric_invertible(space, rng))
                k = cg.Coupling(random_nonzero(space, rng))
                ricci = cg.ricci_coassociator(
                    cg.coassociator_components(cg.deformed(group_like(space), gamma)), slot)
                zero += ricci.is_zero()
                try:
                    stress = cg.solve_stress(ricci, metric, k)
                except DegenerateTraceError:
                    refused += 1
                    continue
                ok = cg.cogravity_residual(ricci, stress, metric, k).is_zero()
                closed += ok
                bad += not ok
            print(f"{d:>2} {slot:>7} {zero:>10} {closed:>7} {refused:>8}")
    return 0 if not bad else 1


if __name__ == "__main__":
    sys.exit(main())
