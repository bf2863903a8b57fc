"""``operadic`` command line.

Exit status: 0 on success, 1 when an identity fails or a residual is nonzero,
2 on usage or input errors. Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import cogravity as cg
from .cohomology import cohomology_dimensions
from .deformation import associator
from .errors import OperadError
from .exact import ExactTensor
from .generators import ALGEBRAS, dual_of_algebra, group_like, random_coop, rng_for
from .preoperad import DegreeBound, ModuleSpace, bracket, partial_compose, total_compose
from .scalars import Field
from .serialize import (coop_to_json, dumps, load_coop, load_tensor, tensor_to_json,
                        write_text)
from .verify import VerifyConfig, run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def parse_field(text: str) -> Field:
    t = text.strip().lower()
    if t in ("rational", "q"):
        return Field.rational()
    if t.startswith("f_"):
        t = t[2:]
    try:
        return Field.prime(int(t))
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be 'rational' or a prime, got {text!r}")
    except OperadError as e:
        raise argparse.ArgumentTypeError(str(e))


def parse_seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _emit(text: str, path: str | None) -> None:
    if path:
        write_text(path, text)
    else:
        sys.stdout.write(text)


def _bound(args) -> DegreeBound:
    return DegreeBound(args.max_degree_guard, args.max_coeff_count)


def format_matrix(t, field: Field) -> str:
    cells = [[field.format(t[i, j]) for j in range(t.shape[1])] for i in range(t.shape[0])]
    w = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  ".join(c.rjust(w) for c in row) for row in cells)


# commands -----------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = VerifyConfig(dimension=args.dim, field=args.field, max_degree=args.max_degree,
                       trials=args.trials, seed=args.seed, density=args.density,
                       max_coeff_count=args.max_coeff_count)
    report = run_verification(cfg, args.only)
    _emit(dumps(report.to_json()), args.output)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_compose(args) -> int:
    f = load_coop(args.f, _bound(args))
    g = load_coop(args.g, _bound(args))
    if args.total:
        h = total_compose(f, g)
    else:
        h = partial_compose(f, g, args.slot)
    _emit(dumps(coop_to_json(h)), args.output)
    return EXIT_OK


def cmd_bracket(args) -> int:
    f = load_coop(args.f, _bound(args))
    g = load_coop(args.g, _bound(args))
    _emit(dumps(coop_to_json(bracket(f, g))), args.output)
    return EXIT_OK


def cmd_associator(args) -> int:
    delta = load_coop(args.delta, _bound(args))
    _emit(dumps(coop_to_json(associator(delta))), args.output)
    return EXIT_OK


def cmd_cohomology(args) -> int:
    delta0 = load_coop(args.delta0, _bound(args))
    report = cohomology_dimensions(delta0, args.max_n, label=str(args.delta0))
    if args.format == "json":
        _emit(dumps(report.to_json()), args.output)
    else:
        _emit(report.table() + "\n", args.output)
    return EXIT_OK


def _load_cogravity_inputs(args):
    delta0 = load_coop(args.delta0, _bound(args))
    space = delta0.space
    _, gamma = load_tensor(args.gamma, 3)
    _, g = load_tensor(args.metric, 2)
    for name, t in (("gamma", gamma), ("metric", g)):
        if t.field != space.field or t.shape[0] != space.dimension:
            raise OperadError(f"{name} does not match delta0 (d={space.dimension}, {space.field})")
    metric = cg.Metric.from_matrix(g)
    k = cg.Coupling(space.field.parse(args.k))
    delta = cg.deformed(delta0, cg.ConnectionCoefficients(space, gamma))
    ricci = cg.ricci_coassociator(cg.coassociator_components(delta), args.ricci_slot)
    return space, metric, k, ricci


def cmd_cogravity(args) -> int:
    space, metric, k, ricci = _load_cogravity_inputs(args)
    _, T = load_tensor(args.stress, 2)
    if T.field != space.field or T.shape[0] != space.dimension:
        raise OperadError("stress does not match delta0")
    stress = cg.StressTensor(T, metric)
    residual = cg.cogravity_residual(ricci, stress, metric, k)
    field = space.field
    if args.format == "json":
        _emit(dumps({
            "ricci": tensor_to_json(ricci, space.dimension),
            "stress_trace": field.format(stress.trace),
            "residual": tensor_to_json(residual, space.dimension),
            "zero": residual.is_zero(),
        }), args.output)
    else:
        text = (f"Ricci coassociator A_ij:\n{format_matrix(ricci, field)}\n"
                f"stress trace T = {field.format(stress.trace)}\n"
                f"residual A_ij - k(T_ij - 1/2 g_ij T):\n{format_matrix(residual, field)}\n")
        _emit(text, args.output)
    return EXIT_OK if residual.is_zero() else EXIT_FAIL


def cmd_solve_stress(args) -> int:
    space, metric, k, ricci = _load_cogravity_inputs(args)
    stress = cg.solve_stress(ricci, metric, k)
    _emit(dumps(tensor_to_json(stress.T, space.dimension)), args.output)
    return EXIT_OK


def cmd_random(args) -> int:
    space = ModuleSpace(args.dim, args.field, _bound(args))
    f = random_coop(space, args.degree, rng_for(args.seed), args.density)
    _emit(dumps(coop_to_json(f)), args.output)
    return EXIT_OK


def cmd_fixture(args) -> int:
    space = ModuleSpace(args.dim, args.field)
    if args.kind == "group-like":
        f = group_like(space)
    else:
        f = dual_of_algebra(space, ALGEBRAS[args.kind.replace("-", "_")])
    _emit(dumps(coop_to_json(f)), args.output)
    return EXIT_OK


def cmd_tensor(args) -> int:
    """Write a constant tensor: zero of a given rank or a scaled identity metric."""
    field = args.field
    d = args.dim
    if args.kind == "identity":
        t = cg.identity_metric(field, d).g.scale(field.parse(args.scale))
    else:
        t = ExactTensor.zeros(field, (d,) * args.rank)
    _emit(dumps(tensor_to_json(t, d)), args.output)
    return EXIT_OK


# parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="operadic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        if field:
            sp.add_argument("--field", type=parse_field, default=Field.rational(),
                            help="'rational' (default) or a prime p >= 5")
        sp.add_argument("--max-coeff-count", type=int, default=2**20,
                        help="refuse tensors with more coefficients than this")
        sp.add_argument("--max-degree-guard", type=int, default=32)
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    sp = sub.add_parser("verify", help="check every identity on seeded random inputs")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--max-degree", type=int, default=3)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=parse_seed, default=0)
    sp.add_argument("--density", type=float, default=1.0)
    sp.add_argument("--only", nargs="+", metavar="IDENTITY")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("compose", help="partial or total composition of two co-operations")
    sp.add_argument("f")
    sp.add_argument("g")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--slot", type=int)
    grp.add_argument("--total", action="store_true")
    common(sp, field=False)
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("bracket", help="Gerstenhaber bracket [f, g]")
    sp.add_argument("f")
    sp.add_argument("g")
    common(sp, field=False)
    sp.set_defaults(func=cmd_bracket)

    sp = sub.add_parser("associator", help="coassociator of a degree-2 co-operation")
    sp.add_argument("delta")
    common(sp, field=False)
    sp.set_defaults(func=cmd_associator)

    sp = sub.add_parser("cohomology", help="cohomology dimensions of a coassociative delta0")
    sp.add_argument("delta0")
    sp.add_argument("--max-n", type=int, default=3)
    sp.add_argument("--format", choices=("table", "json"), default="table")
    common(sp, field=False)
    sp.set_defaults(func=cmd_cohomology)

    for name, func, help_ in (
            ("cogravity", cmd_cogravity, "evaluate the cogravity residual"),
            ("solve-stress", cmd_solve_stress, "solve the cogravity equation for T_ij")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--gamma", required=True, help="connection coefficients (rank 3)")
        sp.add_argument("--delta0", required=True, help="base comultiplication")
        sp.add_argument("--metric", required=True, help="symmetric invertible metric")
        if name == "cogravity":
            sp.add_argument("--stress", required=True, help="energy-momentum tensor")
            sp.add_argument("--format", choices=("table", "json"), default="table")
        sp.add_argument("--k", default="1", help="coupling constant (exact scalar)")
        sp.add_argument("--ricci-slot", choices=("first", "middle", "last"), default="middle")
        common(sp, field=False)
        sp.set_defaults(func=func)

    sp = sub.add_parser("random", help="deterministic pseudo-random co-operation")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--seed", type=parse_seed, default=0)
    sp.add_argument("--density", type=float, default=1.0)
    common(sp)
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("fixture", help="named coassociative comultiplication")
    sp.add_argument("kind", choices=["group-like"] + [k.replace("_", "-") for k in ALGEBRAS])
    sp.add_argument("--dim", type=int, default=2)
    common(sp)
    sp.set_defaults(func=cmd_fixture)

    sp = sub.add_parser("tensor", help="zero tensor or scaled identity metric")
    sp.add_argument("kind", choices=("zero", "identity"))
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--scale", default="1")
    common(sp)
    sp.set_defaults(func=cmd_tensor)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OperadError, ZeroDivisionError) as e:
        print(f"operadic {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
