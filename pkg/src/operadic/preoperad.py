"""The composition pre-operad of co-operations ``Hom(L, L^{⊗n})``.

A co-operation of degree ``n`` on a free module of dimension ``d`` is stored
densely as a tensor of shape ``(d,) * n + (d,)``: the leading ``n`` axes are
the output multi-index ``(j1, ..., jn)`` (``j1`` slowest) and the last axis is
the input basis index, so that ``f(e_i) = sum f[j1, ..., jn, i] e_j1 ⊗ ... ⊗ e_jn``.
Degree 0 co-operations are linear forms, one scalar per input index.

Slots are 0-based and every sign is computed from reduced degrees
``|f| = deg f - 1``, which is -1 in degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DegreeError, SizeGuardError, SlotError, SpaceMismatchError
from .exact import ExactTensor, signed_sum
from .scalars import Field, Scalar


@dataclass(frozen=True)
class DegreeBound:
    max_degree: int = 32
    max_coeff_count: int = 2**20


@dataclass(frozen=True)
class ModuleSpace:
    """A free module of rank ``dimension`` over ``field``."""

    dimension: int
    field: Field = dc_field(default_factory=Field.rational)
    bound: DegreeBound = dc_field(default_factory=DegreeBound, compare=False)

    def __post_init__(self):
        if int(self.dimension) < 1:
            raise ValueError("dimension must be >= 1")

    def check_degree(self, degree: int) -> None:
        if degree < 0:
            raise DegreeError(f"negative degree {degree}")
        if degree > self.bound.max_degree:
            raise SizeGuardError(
                f"degree {degree} exceeds max_degree {self.bound.max_degree}")
        count = self.dimension ** (degree + 1)
        if count > self.bound.max_coeff_count:
            raise SizeGuardError(
                f"degree {degree} on d={self.dimension} needs {count} coefficients "
                f"(limit {self.bound.max_coeff_count})")

    def shape(self, degree: int) -> tuple[int, ...]:
        return (self.dimension,) * (degree + 1)


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class CoOp:
    """A homogeneous co-operation; immutable, compared entry by entry."""

    __slots__ = ("space", "degree", "tensor")

    def __init__(self, space: ModuleSpace, degree: int, tensor: ExactTensor):
        space.check_degree(degree)
        if tensor.shape != space.shape(degree):
            raise DegreeError(
                f"tensor shape {tensor.shape} does not match degree {degree} on d={space.dimension}")
        if tensor.field != space.field:
            raise SpaceMismatchError(f"{tensor.field} tensor in a {space.field} space")
        self.space = space
        self.degree = degree
        self.tensor = tensor

    @classmethod
    def zeros(cls, space: ModuleSpace, degree: int) -> "CoOp":
        space.check_degree(degree)
        return cls(space, degree, ExactTensor.zeros(space.field, space.shape(degree)))

    @classmethod
    def from_array(cls, space: ModuleSpace, values) -> "CoOp":
        """Build from a nested array indexed ``[j1, ..., jn, i]``."""
        t = ExactTensor.from_scalars(space.field, values)
        if t.ndim < 1:
            raise DegreeError("a co-operation needs at least the input axis")
        return cls(space, t.ndim - 1, t)

    @classmethod
    def from_entries(cls, space: ModuleSpace, degree: int,
                     entries: Iterable[tuple[int, Sequence[int], object]]) -> "CoOp":
        """Build from ``(in, out, value)`` triples with 0-based indices."""
        space.check_degree(degree)
        arr = np.zeros(space.shape(degree), dtype=object)
        for i, out, value in entries:
            out = tuple(out)
            if len(out) != degree:
                raise DegreeError(f"output index {out} has wrong length for degree {degree}")
            arr[out + (i,)] += space.field(value)
        return cls(space, degree, ExactTensor.from_scalars(space.field, arr))

    @classmethod
    def elementary(cls, space: ModuleSpace, degree: int, k: int) -> "CoOp":
        """The k-th basis co-operation in the flattened canonical order."""
        space.check_degree(degree)
        dtype = object if space.field.is_rational else np.int64
        num = np.zeros(space.dimension ** (degree + 1), dtype=dtype)
        num[k] = 1
        return cls(space, degree, ExactTensor(space.field, num.reshape(space.shape(degree))))

    @property
    def reduced_degree(self) -> int:
        return self.degree - 1

    def __getitem__(self, idx) -> Scalar:
        return self.tensor[idx]

    def entries(self) -> Iterator[tuple[int, tuple[int, ...], Scalar]]:
        """Nonzero ``(in, out, value)`` triples, 0-based, sorted by (in, out)."""
        items = [(idx[-1], idx[:-1], v) for idx, v in self.tensor.nonzero()]
        items.sort(key=lambda t: (t[0], t[1]))
        return iter(items)

    def vector(self) -> ExactTensor:
        """Coefficients flattened in canonical order (input index fastest)."""
        return self.tensor.reshape((self.tensor.size,))

    def is_zero(self) -> bool:
        return self.tensor.is_zero()

    def _same(self, other: "CoOp") -> None:
        if self.space != other.space:
            raise SpaceMismatchError(f"{self.space} vs {other.space}")
        if self.degree != other.degree:
            raise DegreeError(f"degree {self.degree} vs {other.degree}")

    def __add__(self, other: "CoOp") -> "CoOp":
        self._same(other)
        return CoOp(self.space, self.degree, self.tensor + other.tensor)

    def __sub__(self, other: "CoOp") -> "CoOp":
        self._same(other)
        return CoOp(self.space, self.degree, self.tensor - other.tensor)

    def __neg__(self) -> "CoOp":
        return CoOp(self.space, self.degree, -self.tensor)

    def scale(self, c) -> "CoOp":
        return CoOp(self.space, self.degree, self.tensor.scale(c))

    def __rmul__(self, c) -> "CoOp":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoOp):
            return NotImplemented
        return (self.space == other.space and self.degree == other.degree
                and self.tensor == other.tensor)

    __hash__ = None

    def __repr__(self):
        return (f"CoOp(d={self.space.dimension}, field={self.space.field}, "
                f"degree={self.degree}, nnz={sum(1 for _ in self.tensor.nonzero())})")


def add(f: CoOp, g: CoOp) -> CoOp:
    return f + g


def sub(f: CoOp, g: CoOp) -> CoOp:
    return f - g


def scale(c, f: CoOp) -> CoOp:
    return f.scale(c)


def is_zero(f: CoOp) -> bool:
    return f.is_zero()


def identity_coop(space: ModuleSpace) -> CoOp:
    d = space.dimension
    return CoOp.from_array(space, np.eye(d, dtype=int).tolist())


def _check_space(f: CoOp, g: CoOp) -> None:
    if f.space != g.space:
        raise SpaceMismatchError(f"{f.space} vs {g.space}")


def _check_slot(f: CoOp, g: CoOp, i: int) -> int:
    _check_space(f, g)
    if f.degree < 1:
        raise SlotError("a degree-0 co-operation has no slots")
    if not 0 <= i <= f.reduced_degree:
        raise SlotError(f"slot {i} out of range 0 <= i <= |f| = {f.reduced_degree}")
    n = f.degree + g.degree - 1
    f.space.check_degree(n)
    return n


def _substitute(f: CoOp, g: CoOp, i: int) -> ExactTensor:
    # contract g's input axis with f's output axis i, then put g's outputs at i
    m = g.degree
    t = g.tensor.tensordot(f.tensor, ([m], [i]), normalize=False)
    if m and i:
        t = t.moveaxis(list(range(m)), list(range(i, i + m)))
    return t


def partial_compose(f: CoOp, g: CoOp, i: int) -> CoOp:
    """``f ∘_i g = (-1)^{i|g|} (1^{⊗i} ⊗ g ⊗ 1^{⊗(|f|-i)}) ∘ f``."""
    n = _check_slot(f, g, i)
    t = signed_sum([(sign(i * g.reduced_degree), _substitute(f, g, i))])
    return CoOp(f.space, n, t)


def _total_terms(f: CoOp, g: CoOp, outer: int = 1) -> list:
    terms = []
    for i in range(f.degree):
        _check_slot(f, g, i)
        terms.append((outer * sign(i * g.reduced_degree), _substitute(f, g, i)))
    return terms


def total_compose(f: CoOp, g: CoOp) -> CoOp:
    """``f • g``: sum of ``f ∘_i g`` over ``0 <= i <= |f|``; empty (zero) in degree 0."""
    _check_space(f, g)
    n = f.degree + g.degree - 1
    if n < 0:
        raise DegreeError("total composition of two degree-0 co-operations is undefined")
    if f.degree == 0:
        return CoOp.zeros(f.space, n)
    return CoOp(f.space, n, signed_sum(_total_terms(f, g)))


def bracket(f: CoOp, g: CoOp) -> CoOp:
    """Gerstenhaber bracket ``[f, g] = f • g - (-1)^{|f||g|} g • f``."""
    _check_space(f, g)
    n = f.degree + g.degree - 1
    if n < 0:
        raise DegreeError("bracket of two degree-0 co-operations is undefined")
    terms = _total_terms(f, g) + _total_terms(g, f, -sign(f.reduced_degree * g.reduced_degree))
    if not terms:
        return CoOp.zeros(f.space, n)
    return CoOp(f.space, n, signed_sum(terms))


def apply(f: CoOp, v) -> ExactTensor:
    """Evaluate ``f`` on the vector ``sum v_i e_i``; returns a rank-n tensor."""
    vec = ExactTensor.from_scalars(f.space.field, list(v))
    if vec.shape != (f.space.dimension,):
        raise SpaceMismatchError(f"vector of length {vec.shape} for d={f.space.dimension}")
    return f.tensor.tensordot(vec, ([f.degree], [0]))


def change_field(f: CoOp, field: Field) -> CoOp:
    """Reduce a rational co-operation into another field, e.g. F_p."""
    from .linalg import to_field

    space = ModuleSpace(f.space.dimension, field, f.space.bound)
    return CoOp(space, f.degree, to_field(f.tensor, field))
