"""Randomised verification of every identity of the deformation calculus.

Each trial draws its inputs from a generator seeded by ``(seed, identity,
trial)``, so a report depends only on the configuration and individual
trials can be replayed in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator

import numpy as np

from . import deformation as dfm
from .errors import OperadError
from .preoperad import (CoOp, DegreeBound, ModuleSpace, bracket, identity_coop,
                        partial_compose, sign, total_compose)
from .generators import (ALGEBRAS, dual_of_algebra, group_like, random_coassociative,
                         random_coop, rng_for)
from .scalars import Field
from .serialize import coop_to_json


@dataclass(frozen=True)
class VerifyConfig:
    dimension: int = 2
    field: Field = dc_field(default_factory=Field.rational)
    max_degree: int = 3
    trials: int = 100
    seed: int = 0
    density: float = 1.0
    max_coeff_count: int = 2**20

    def __post_init__(self):
        if self.trials < 1:
            raise OperadError("trials must be >= 1")
        if self.max_degree < 1:
            raise OperadError("max_degree must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise OperadError("seed must be a 64-bit unsigned integer")
        if not 0.0 <= self.density <= 1.0:
            raise OperadError("density must lie in [0, 1]")

    @property
    def space(self) -> ModuleSpace:
        # compositions of three inputs reach degree 3 * max_degree - 2
        bound = DegreeBound(max(3 * self.max_degree, 4), self.max_coeff_count)
        return ModuleSpace(self.dimension, self.field, bound)

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "field": self.field.to_json(),
                "max_degree": self.max_degree, "trials": self.trials,
                "seed": self.seed, "density": self.density}


@dataclass
class IdentityRecord:
    name: str
    anchor: str
    trials: int = 0
    exercised: int = 0
    checks: int = 0
    failures: int = 0
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "trials": self.trials,
                "exercised": self.exercised, "checks": self.checks, "failures": self.failures,
                "counterexample": self.counterexample}


@dataclass
class VerificationReport:
    config: VerifyConfig
    records: list[IdentityRecord]

    @property
    def passed(self) -> bool:
        return all(r.failures == 0 for r in self.records)

    def to_json(self) -> dict:
        return {"config": self.config.to_json(),
                "identities": [r.to_json() for r in self.records],
                "passed": self.passed}

    def summary(self) -> str:
        w = max(len(r.name) for r in self.records)
        lines = [f"{'PASS' if r.failures == 0 else 'FAIL'}  {r.name.ljust(w)}  "
                 f"{r.checks} checks, {r.failures} failing trials" for r in self.records]
        lines.append("ALL PASS" if self.passed else "FAILURES PRESENT")
        return "\n".join(lines)


# A check yields (label, inputs, residual) for every equality it tests.
Check = Iterator[tuple[str, dict, CoOp]]


class Sampler:
    def __init__(self, config: VerifyConfig, rng: np.random.Generator, trial: int):
        self.config = config
        self.space = config.space
        self.rng = rng
        self.trial = trial

    def degree(self, lo: int = 1) -> int:
        return int(self.rng.integers(lo, self.config.max_degree + 1))

    def coop(self, degree: int | None = None, lo: int = 1) -> CoOp:
        if degree is None:
            degree = self.degree(lo)
        return random_coop(self.space, degree, self.rng, self.config.density)

    def context(self) -> dfm.DeformationContext:
        return dfm.DeformationContext(self.coop(2), self.coop(2))

    def coassociative(self) -> tuple[str, CoOp]:
        kinds = ["group_like", "transported"]
        if self.space.dimension == 2:
            kinds += ["dual_numbers", "left_unit"]
        kind = kinds[self.trial % len(kinds)]
        if kind == "group_like":
            delta0 = group_like(self.space)
        elif kind == "transported":
            delta0 = random_coassociative(self.space, self.rng)
        else:
            delta0 = dual_of_algebra(self.space, ALGEBRAS[kind])
        if not dfm.associator(delta0).is_zero():
            raise AssertionError(f"fixture {kind} is not coassociative")
        return kind, delta0


def _composition_relations(s: Sampler, case: int) -> Check:
    h = s.coop(lo=1)
    f = s.coop(lo=0)
    g = s.coop(lo=0)
    rf, rg, rh = f.reduced_degree, g.reduced_degree, h.reduced_degree
    eps = sign(rf * rg)
    inputs = {"h": h, "f": f, "g": g}
    hg = {}
    fg = {}
    for i in range(rh + 1):
        hf = partial_compose(h, f, i)
        if hf.degree < 1:
            continue
        for j in range(hf.reduced_degree + 1):
            if j <= i - 1:
                which = 1
            elif j <= i + rf:
                which = 2
            else:
                which = 3
            if which != case:
                continue
            left = partial_compose(hf, g, j)
            if case == 1:
                if j not in hg:
                    hg[j] = partial_compose(h, g, j)
                right = partial_compose(hg[j], f, i + rg).scale(eps)
            elif case == 2:
                if j - i not in fg:
                    fg[j - i] = partial_compose(f, g, j - i)
                right = partial_compose(h, fg[j - i], i)
            else:
                if j - rf not in hg:
                    hg[j - rf] = partial_compose(h, g, j - rf)
                right = partial_compose(hg[j - rf], f, i).scale(eps)
            yield f"i={i} j={j}", inputs, left - right


def _unit_laws(s: Sampler) -> Check:
    unit = identity_coop(s.space)
    f = s.coop(lo=0)
    yield "I o_0 f", {"f": f}, partial_compose(unit, f, 0) - f
    for i in range(f.degree):
        yield f"f o_{i} I", {"f": f}, partial_compose(f, unit, i) - f


def _antisymmetry(s: Sampler) -> Check:
    f, g = s.coop(), s.coop()
    r = bracket(f, g) + bracket(g, f).scale(sign(f.reduced_degree * g.reduced_degree))
    yield "", {"f": f, "g": g}, r


def _jacobi(s: Sampler) -> Check:
    f, g, h = s.coop(), s.coop(), s.coop()
    a, b, c = f.reduced_degree, g.reduced_degree, h.reduced_degree
    r = (bracket(bracket(f, g), h).scale(sign(a * c))
         + bracket(bracket(g, h), f).scale(sign(b * a))
         + bracket(bracket(h, f), g).scale(sign(c * b)))
    yield "", {"f": f, "g": g, "h": h}, r


def _derivation(s: Sampler) -> Check:
    ref, f, g = s.coop(), s.coop(), s.coop()
    yield "", {"delta": ref, "f": f, "g": g}, dfm.derivation_property_residual(ref, f, g)


def _commutation(s: Sampler) -> Check:
    f, g, h = s.coop(), s.coop(), s.coop()
    yield "", {"f": f, "g": g, "h": h}, dfm.commutation_relation_residual(f, g, h)


def _d_square(s: Sampler) -> Check:
    even = list(range(2, max(2, s.config.max_degree) + 1, 2))
    ref = s.coop(even[int(s.rng.integers(len(even)))])
    f = s.coop()
    yield "", {"delta": ref, "f": f}, dfm.d_square_residual(ref, f)


def _half_bracket(s: Sampler) -> Check:
    delta = s.coop(2)
    half = s.space.field(1) / s.space.field(2)
    yield "", {"delta": delta}, bracket(delta, delta).scale(half) - total_compose(delta, delta)


def _deformation(s: Sampler) -> Check:
    ctx = s.context()
    yield "", {"delta0": ctx.delta0, "delta": ctx.delta}, dfm.deformation_residual(ctx)


def _prolongation(s: Sampler) -> Check:
    ctx = s.context()
    yield "", {"delta0": ctx.delta0, "delta": ctx.delta}, dfm.prolongation_residual(ctx)


def _omega_cubed(s: Sampler) -> Check:
    w = s.coop(2)
    yield "", {"omega": w}, bracket(bracket(w, w), w)


def _nabla_square(s: Sampler) -> Check:
    ctx = s.context()
    f = s.coop()
    yield "", {"delta0": ctx.delta0, "delta": ctx.delta, "f": f}, dfm.nabla_square_residual(ctx, f)


def _covariant_split(s: Sampler) -> Check:
    ctx = s.context()
    f = s.coop()
    r = dfm.covariant_derivative(ctx, f) - dfm.coboundary(ctx.delta0, f) - bracket(f, ctx.omega)
    yield "", {"delta0": ctx.delta0, "delta": ctx.delta, "f": f}, r


def _coassociator(s: Sampler) -> Check:
    delta = s.coop(2)
    yield "", {"delta": delta}, dfm.associator(delta) - dfm.coassociator_direct(delta)


def _d_square_zero(s: Sampler) -> Check:
    kind, delta0 = s.coassociative()
    f = s.coop()
    yield kind, {"delta0": delta0, "f": f}, dfm.coboundary(delta0, dfm.coboundary(delta0, f))


def _bianchi(s: Sampler) -> Check:
    kind, delta0 = s.coassociative()
    ctx = dfm.DeformationContext.from_deformation(delta0, s.coop(2))
    inputs = {"delta0": delta0, "delta": ctx.delta}
    yield kind, inputs, dfm.bianchi_residual(ctx)
    yield kind + " covariant form", inputs, dfm.covariant_derivative(ctx, ctx.A)


IDENTITIES: list[tuple[str, str, Callable[[Sampler], Check]]] = [
    ("composition_relation_1",
     "(h o_i f) o_j g = (-1)^{|f||g|} (h o_j g) o_{i+|g|} f for 0 <= j <= i-1",
     lambda s: _composition_relations(s, 1)),
    ("composition_relation_2",
     "(h o_i f) o_j g = h o_i (f o_{j-i} g) for i <= j <= i+|f|",
     lambda s: _composition_relations(s, 2)),
    ("composition_relation_3",
     "(h o_i f) o_j g = (-1)^{|f||g|} (h o_{j-|f|} g) o_i f for i+f <= j <= |h|+|f|",
     lambda s: _composition_relations(s, 3)),
    ("unit_laws", "I o_0 f = f = f o_i I", _unit_laws),
    ("bracket_antisymmetry", "[f,g] = -(-1)^{|f||g|} [g,f]", _antisymmetry),
    ("jacobi", "graded Jacobi identity of the Gerstenhaber bracket", _jacobi),
    ("derivation_property",
     "d[f,g] = (-1)^{|D||g|} [df,g] + [f,dg] with d f = [f,D]", _derivation),
    ("commutation_relation", "[d_f, d_g] = d_{[g,f]}", _commutation),
    ("d_square", "d_D^2 = d_{D o D} for odd |D|", _d_square),
    ("associator_half_bracket", "D o D = 1/2 [D,D]", _half_bracket),
    ("deformation_equation", "A - A0 = d(omega) + 1/2 [omega,omega]", _deformation),
    ("prolongation", "d(A - A0) = d^2 omega - [A - A0, omega]", _prolongation),
    ("omega_triple_bracket", "[[omega,omega],omega] = 0", _omega_cubed),
    ("nabla_square", "nabla^2 f = [f, A]", _nabla_square),
    ("covariant_decomposition", "nabla f = d f + [f, omega]", _covariant_split),
    ("coassociator_direct", "D o D = (D x 1 - 1 x D) o D", _coassociator),
    ("d_square_zero", "d^2 = 0 when A0 = 0", _d_square_zero),
    ("bianchi", "d A = [omega, A] and nabla A = 0 when A0 = 0", _bianchi),
]


def _counterexample(trial: int, label: str, inputs: dict, residual: CoOp) -> dict:
    (idx, value) = residual.tensor.first_nonzero()
    field = residual.space.field
    return {
        "trial": trial,
        "case": label,
        "inputs": {k: coop_to_json(v) for k, v in inputs.items()},
        "residual_entry": {"in": idx[-1] + 1, "out": [j + 1 for j in idx[:-1]],
                           "value": field.format(value)},
    }


def run_verification(config: VerifyConfig, only: list[str] | None = None) -> VerificationReport:
    if only is not None:
        unknown = sorted(set(only) - {name for name, _, _ in IDENTITIES})
        if unknown:
            raise OperadError(f"unknown identity: {', '.join(unknown)}")
    records = []
    for k, (name, anchor, check) in enumerate(IDENTITIES):
        if only is not None and name not in only:
            continue
        rec = IdentityRecord(name, anchor)
        for t in range(config.trials):
            s = Sampler(config, rng_for(config.seed, k, t), t)
            rec.trials += 1
            failed = False
            n0 = rec.checks
            for label, inputs, residual in check(s):
                rec.checks += 1
                if not residual.is_zero() and not failed:
                    failed = True
                    if rec.counterexample is None:
                        rec.counterexample = _counterexample(t, label, inputs, residual)
            rec.exercised += rec.checks > n0
            rec.failures += failed
        records.append(rec)
    return VerificationReport(config, records)
