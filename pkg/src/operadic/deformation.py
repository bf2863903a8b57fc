"""Deformation calculus for degree-2 co-operations.

Every ``*_residual`` function returns the difference of the two sides of an
identity as a :class:`CoOp`. All of them are identities of the pre-operad, so
the result is the zero co-operation for every admissible input; a nonzero
entry pinpoints a sign or slot bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegreeError, NotCoassociativeError, OperadError
from .exact import ExactTensor
from .preoperad import CoOp, ModuleSpace, bracket, sign, total_compose


def _half(space: ModuleSpace):
    return space.field(Fraction(1, 2))


def _need_degree(f: CoOp, degree: int, what: str) -> None:
    if f.degree != degree:
        raise DegreeError(f"{what} must have degree {degree}, got {f.degree}")


def coboundary(reference: CoOp, f: CoOp) -> CoOp:
    """Pre-coboundary ``∂_ref f = [f, ref]``."""
    if reference.degree < 1:
        raise DegreeError("the reference co-operation must have degree >= 1")
    return bracket(f, reference)


def associator(delta: CoOp) -> CoOp:
    """Formal associator ``Δ • Δ``."""
    _need_degree(delta, 2, "delta")
    return total_compose(delta, delta)


def coassociator_direct(delta: CoOp) -> CoOp:
    """``(Δ ⊗ 1 - 1 ⊗ Δ) ∘ Δ`` evaluated index by index.

    Written as two explicit contractions so it does not share code with the
    slot-composition path of :func:`associator`.
    """
    _need_degree(delta, 2, "delta")
    field = delta.space.field
    D = delta.tensor.to_scalars()
    d = delta.space.dimension
    out = np.empty((d, d, d, d), dtype=object)
    for a in range(d):
        for b in range(d):
            for c in range(d):
                for i in range(d):
                    left = field(0)
                    right = field(0)
                    for j in range(d):
                        # (Δ⊗1)Δ: split the first tensor factor again
                        left += D[a, b, j] * D[j, c, i]
                        # (1⊗Δ)Δ: split the second tensor factor again
                        right += D[b, c, j] * D[a, j, i]
                    out[a, b, c, i] = left - right
    return CoOp(delta.space, 3, ExactTensor.from_scalars(field, out))


@dataclass(frozen=True, eq=False)
class DeformationContext:
    """A pair (Δ0, Δ) of degree-2 co-operations with ω, A0 and A precomputed."""

    delta0: CoOp
    delta: CoOp
    omega: CoOp = field(init=False, repr=False)
    A0: CoOp = field(init=False, repr=False)
    A: CoOp = field(init=False, repr=False)

    def __post_init__(self):
        _need_degree(self.delta0, 2, "delta0")
        _need_degree(self.delta, 2, "delta")
        if self.delta0.space != self.delta.space:
            raise OperadError("delta0 and delta live in different spaces")
        half = _half(self.space)
        A0 = associator(self.delta0)
        A = associator(self.delta)
        if bracket(self.delta0, self.delta0).scale(half) != A0 or \
                bracket(self.delta, self.delta).scale(half) != A:
            raise AssertionError("associator disagrees with half self-bracket")
        object.__setattr__(self, "omega", self.delta - self.delta0)
        object.__setattr__(self, "A0", A0)
        object.__setattr__(self, "A", A)

    @property
    def space(self) -> ModuleSpace:
        return self.delta0.space

    @classmethod
    def from_deformation(cls, delta0: CoOp, omega: CoOp) -> "DeformationContext":
        return cls(delta0, delta0 + omega)


def deformation_residual(ctx: DeformationContext) -> CoOp:
    """``(A - A0) - (∂ω + ½[ω, ω])``."""
    w = ctx.omega
    rhs = coboundary(ctx.delta0, w) + bracket(w, w).scale(_half(ctx.space))
    return (ctx.A - ctx.A0) - rhs


def maurer_cartan(delta0: CoOp, omega: CoOp) -> CoOp:
    """``∂ω + ½[ω, ω]``; vanishes iff Δ0 + ω has the same associator as Δ0."""
    return coboundary(delta0, omega) + bracket(omega, omega).scale(_half(omega.space))


def prolongation_residual(ctx: DeformationContext) -> CoOp:
    """``∂(A - A0) - ∂²ω + [A - A0, ω]``."""
    dA = ctx.A - ctx.A0
    d0 = ctx.delta0
    w = ctx.omega
    return coboundary(d0, dA) - coboundary(d0, coboundary(d0, w)) + bracket(dA, w)


def d_square_residual(delta0: CoOp, f: CoOp) -> CoOp:
    """``∂²f - [f, Δ0 • Δ0]`` for an odd reference Δ0."""
    if delta0.reduced_degree % 2 == 0:
        raise DegreeError("the reference must have odd reduced degree")
    if f.degree < 1:
        raise DegreeError("f must have degree >= 1")
    return coboundary(delta0, coboundary(delta0, f)) - bracket(f, total_compose(delta0, delta0))


def bianchi_residual(ctx: DeformationContext) -> CoOp:
    """``∂A - [ω, A]``; only defined when Δ0 is coassociative."""
    if not ctx.A0.is_zero():
        idx, value = ctx.A0.tensor.first_nonzero()
        raise NotCoassociativeError(
            f"Bianchi identity requires A0 = 0; A0{list(idx)} = {value}", entry=(idx, value))
    return coboundary(ctx.delta0, ctx.A) - bracket(ctx.omega, ctx.A)


def covariant_derivative(ctx: DeformationContext, f: CoOp) -> CoOp:
    """``∇f = [f, Δ]``."""
    return coboundary(ctx.delta, f)


def nabla_square_residual(ctx: DeformationContext, f: CoOp) -> CoOp:
    """``∇²f - [f, A]``."""
    return covariant_derivative(ctx, covariant_derivative(ctx, f)) - bracket(f, ctx.A)


def derivation_property_residual(reference: CoOp, f: CoOp, g: CoOp) -> CoOp:
    """``∂[f, g] - (-1)^{|ref||g|}[∂f, g] - [f, ∂g]`` with ``∂ = ∂_ref``."""
    lhs = coboundary(reference, bracket(f, g))
    first = bracket(coboundary(reference, f), g)
    if sign(reference.reduced_degree * g.reduced_degree) < 0:
        first = -first
    return lhs - first - bracket(f, coboundary(reference, g))


def commutation_relation_residual(f: CoOp, g: CoOp, h: CoOp) -> CoOp:
    """``(∂_f ∂_g - (-1)^{|f||g|} ∂_g ∂_f - ∂_{[g,f]}) h``."""
    fg = coboundary(f, coboundary(g, h))
    gf = coboundary(g, coboundary(f, h))
    if sign(f.reduced_degree * g.reduced_degree) < 0:
        gf = -gf
    return fg - gf - coboundary(bracket(g, f), h)
