"""Run the identity suite over a grid of dimensions and fields.

    python scripts/verify_sweep.py --dims 1 2 3 --fields rational 5 --max-degree 4
"""

import argparse
import json
import sys
import time

from operadic.cli import parse_field
from operadic.verify import VerifyConfig, run_verification


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--fields", type=parse_field, nargs="+",
                    default=[parse_field("rational"), parse_field("5")])
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write every report to this file")
    args = ap.parse_args(argv)

    reports, ok = [], True
    print(f"{'d':>2} {'field':>6} {'seconds':>8} {'checks':>8}  result")
    for d in args.dims:
        for field in args.fields:
            cfg = VerifyConfig(dimension=d, field=field, max_degree=args.max_degree,
                               trials=args.trials, seed=args.seed)
            t0 = time.perf_counter()
            rep = run_verification(cfg)
            dt = time.perf_counter() - t0
            checks = sum(r.checks for r in rep.records)
            failing = [r.name for r in rep.records if r.failures]
            ok &= rep.passed
            print(f"{d:>2} {str(field):>6} {dt:8.2f} {checks:8d}  "
                  f"{'pass' if rep.passed else 'FAIL ' + ', '.join(failing)}")
            reports.append(rep.to_json())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=2)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
