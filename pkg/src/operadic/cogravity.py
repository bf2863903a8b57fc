"""Coordinate form of the cogravity equation ``A_ij = k (T_ij - ½ g_ij T)``.

Index conventions, fixed at this boundary only:

* ``gamma[i, j, k]`` is the coefficient of ``e_j ⊗ e_k`` in ``ω(e_i)``;
* ``comps[i, j, k, l]`` is the coefficient of ``e_j ⊗ e_k ⊗ e_l`` in ``A(e_i)``;
* the Ricci coassociator contracts the upper index against the middle lower
  one, ``A_ij = sum_s comps[s, i, s, j]``.

A co-operation tensor keeps its input index last, so both conversions are a
single axis rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .deformation import associator
from .errors import DegenerateTraceError, DegreeError, OperadError, SpaceMismatchError
from .exact import ExactTensor
from .linalg import inverse
from .preoperad import CoOp, ModuleSpace
from .scalars import Scalar


@dataclass(frozen=True, eq=False)
class ConnectionCoefficients:
    space: ModuleSpace
    gamma: ExactTensor

    def __post_init__(self):
        d = self.space.dimension
        if self.gamma.shape != (d, d, d):
            raise OperadError(f"connection coefficients need shape {(d, d, d)}")


@dataclass(frozen=True, eq=False)
class CoassociatorComponents:
    comps: ExactTensor

    def __post_init__(self):
        s = self.comps.shape
        if len(s) != 4 or len(set(s)) != 1:
            raise OperadError(f"coassociator components need shape (d, d, d, d), got {s}")


@dataclass(frozen=True, eq=False)
class Metric:
    g: ExactTensor
    g_inv: ExactTensor

    @classmethod
    def from_matrix(cls, g: ExactTensor) -> "Metric":
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise OperadError("metric must be a square matrix")
        if g != g.transpose((1, 0)):
            raise OperadError("metric must be symmetric")
        return cls(g, inverse(g))

    @property
    def dimension(self) -> int:
        return self.g.shape[0]


@dataclass(frozen=True, eq=False)
class StressTensor:
    T: ExactTensor
    metric: Metric

    @property
    def trace(self) -> Scalar:
        """``T = g^{ij} T_ij``, recomputed on every access."""
        return _contract2(self.metric.g_inv, self.T)


@dataclass(frozen=True)
class Coupling:
    k: Scalar

    def __post_init__(self):
        if not self.k:
            raise OperadError("coupling constant must be nonzero")


def _contract2(a: ExactTensor, b: ExactTensor) -> Scalar:
    # full contraction of two matrices: sum_ij a[i, j] b[i, j]
    return a.tensordot(b, ([0, 1], [0, 1]))[()]


def _eye(field, d: int) -> ExactTensor:
    return ExactTensor.from_scalars(field, np.eye(d, dtype=int).tolist())


def omega_from_gamma(gamma: ConnectionCoefficients) -> CoOp:
    return CoOp(gamma.space, 2, gamma.gamma.transpose((1, 2, 0)))


def gamma_from_omega(omega: CoOp) -> ConnectionCoefficients:
    if omega.degree != 2:
        raise DegreeError("omega must have degree 2")
    return ConnectionCoefficients(omega.space, omega.tensor.transpose((2, 0, 1)))


def components_from_coop(a: CoOp) -> CoassociatorComponents:
    if a.degree != 3:
        raise DegreeError("coassociator must have degree 3")
    return CoassociatorComponents(a.tensor.transpose((3, 0, 1, 2)))


def coop_from_components(space: ModuleSpace, a: CoassociatorComponents) -> CoOp:
    return CoOp(space, 3, a.comps.transpose((1, 2, 3, 0)))


def coassociator_components(delta: CoOp) -> CoassociatorComponents:
    if delta.degree != 2:
        raise DegreeError("delta must have degree 2")
    return components_from_coop(associator(delta))


_RICCI_SLOTS = {"first": (0, 1), "middle": (0, 2), "last": (0, 3)}


def ricci_coassociator(a: CoassociatorComponents, slot: str = "middle") -> ExactTensor:
    """``A_ij = sum_s A^s_{isj}``.

    ``slot`` picks which lower index is traced against the upper one; the
    default ``"middle"`` reads the subscript string ``isj`` literally.

    With ``A = (Δ⊗1 - 1⊗Δ)Δ`` the middle trace is
    ``Σ D[i,s,m] D[m,j,s] - Σ D[s,j,m] D[i,m,s]``, and swapping the dummy
    indices s and m turns one sum into the other, so it vanishes for every Δ.
    The ``"first"`` and ``"last"`` readings do not.
    """
    axis1, axis2 = _RICCI_SLOTS[slot]
    c = a.comps
    num = np.trace(c.num, axis1=axis1, axis2=axis2)
    if not c.field.is_rational:
        num = num % c.field.p
    return ExactTensor(c.field, num, c.den)


def _check_dims(ricci: ExactTensor, metric: Metric, T: ExactTensor | None = None):
    d = metric.dimension
    if ricci.shape != (d, d) or (T is not None and T.shape != (d, d)):
        raise SpaceMismatchError("ricci, metric and stress must all be d x d")
    if ricci.field != metric.g.field or (T is not None and T.field != ricci.field):
        raise SpaceMismatchError("ricci, metric and stress must share a field")


def cogravity_residual(ricci: ExactTensor, stress: StressTensor, metric: Metric,
                       k: Coupling) -> ExactTensor:
    """``A_ij - k (T_ij - ½ g_ij T)``; zero iff the equation holds."""
    _check_dims(ricci, metric, stress.T)
    field = ricci.field
    T = stress.trace
    source = stress.T - metric.g.scale(field(Fraction(1, 2)) * T)
    return ricci - source.scale(k.k)


def solve_stress(ricci: ExactTensor, metric: Metric, k: Coupling) -> StressTensor:
    """Invert the cogravity equation for ``T_ij``.

    Tracing gives ``T (1 - d/2) = g^{ij} A_ij / k``. When ``1 - d/2`` vanishes
    in the field (d = 2 over Q) a solution exists only for a traceless Ricci
    coassociator, and then ``T = 0`` is chosen.
    """
    _check_dims(ricci, metric)
    field = ricci.field
    d = metric.dimension
    half = field(Fraction(1, 2))
    factor = field(1) - field(d) * half
    trace_a = _contract2(metric.g_inv, ricci)
    kk = field(k.k)
    if factor == 0:
        if trace_a != 0:
            raise DegenerateTraceError(
                f"d = {d}: trace of the equation forces g^ij A_ij = 0, got {trace_a}")
        T = field(0)
    else:
        T = trace_a / (kk * factor)
    stress = ricci.scale(1 / kk) + metric.g.scale(half * T)
    return StressTensor(stress, metric)


def deformed(delta0: CoOp, gamma: ConnectionCoefficients) -> CoOp:
    """``Δ = Δ0 + ω`` with ``ω`` read off the connection coefficients."""
    return delta0 + omega_from_gamma(gamma)


def identity_metric(field, d: int) -> Metric:
    return Metric.from_matrix(_eye(field, d))

