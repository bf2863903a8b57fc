"""Cohomology dimensions of the built-in coassociative fixtures over several fields."""

import argparse
import sys

from operadic import Field, ModuleSpace, cohomology_dimensions
from operadic.generators import (ALGEBRAS, dual_of_algebra, group_like, random_coassociative,
                                 rng_for, unit_comultiplication)


def fixtures(field):
    yield "unit d=1", unit_comultiplication(ModuleSpace(1, field))
    for d in (2, 3):
        yield f"group-like d={d}", group_like(ModuleSpace(d, field))
    for kind in ALGEBRAS:
        yield f"{kind} d=2", dual_of_algebra(ModuleSpace(2, field), ALGEBRAS[kind])
    yield "transported d=2", random_coassociative(ModuleSpace(2, field), rng_for(1))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--primes", type=int, nargs="*", default=[5, 7])
    args = ap.parse_args(argv)
    fields = [Field.rational()] + [Field.prime(p) for p in args.primes]
    tables = {}
    for field in fields:
        for name, d0 in fixtures(field):
            # d=3 beyond n=2 gets slow; keep the table quick
            n = args.max_n if d0.space.dimension < 3 else min(args.max_n, 2)
            tables.setdefault(name, []).append(cohomology_dimensions(d0, n).dims())
    print(f"{'fixture':<20} " + " ".join(f"{str(f):>12}" for f in fields) + "  agree")
    disagree = 0
    for name, rows in tables.items():
        same = all(r == rows[0] for r in rows)
        disagree += not same
        cells = " ".join(f"{' '.join(map(str, r)):>12}" for r in rows)
        print(f"{name:<20} {cells}  {'yes' if same else 'NO'}")
    return 1 if disagree else 0

if __name__ == "__main__":
    sys.exit(main())
