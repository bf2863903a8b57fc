"""Dense exact tensors over a :class:`~operadic.scalars.Field`.

Over Q a tensor is stored as an integer numerator array together with one
positive common denominator, kept in lowest terms (gcd of all numerators and
the denominator is 1, the zero tensor has denominator 1). This canonical form
makes equality structural and lets contractions run through ``np.tensordot``
on integers instead of on ``Fraction`` objects.

Numerators live in an ``int64`` array while every entry is below 2**62 in
magnitude and are promoted to an object array of Python ints otherwise. Each
operation bounds its result from the operand magnitudes before choosing the
int64 path, so overflow can never occur silently.

Over F_p the numerators are residues in [0, p) and the denominator is 1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import FieldMismatchError, OperadError
from .scalars import Field, Residue, Scalar

_LIMIT = 2**62


def _prime_dtype(p: int):
    return np.int64 if p < 2**31 else object


def _max_abs(a: np.ndarray) -> int:
    if not a.size:
        return 0
    return max(int(a.max()), -int(a.min()))


def _compact(num: np.ndarray) -> np.ndarray:
    """int64 when every entry fits, otherwise object."""
    num = np.asarray(num)
    if num.dtype == np.int64:
        return num
    if num.dtype != object:
        return num.astype(np.int64)
    if _max_abs(num) < _LIMIT:
        return num.astype(np.int64)
    return num


def _wide(num: np.ndarray) -> np.ndarray:
    return num if num.dtype == object else num.astype(object)


def _content(num: np.ndarray, den: int) -> int:
    """gcd of ``den`` and all numerators, or 0 when every numerator is zero."""
    flat = num.ravel()
    # a short prefix usually already brings the gcd down to 1
    g = math.gcd(den, int(np.gcd.reduce(flat[:16])))
    if g == 1:
        return 1
    if flat.size > 16:
        g = math.gcd(g, int(np.gcd.reduce(flat[16:])))
    if g == den and not np.any(flat != 0):
        return 0
    return g


def _lin(terms: list[tuple[int, np.ndarray]]) -> np.ndarray:
    """``sum(c * a)`` for integer coefficients, int64 when provably safe."""
    bound = sum(abs(c) * _max_abs(a) for c, a in terms)
    if bound < _LIMIT and all(a.dtype == np.int64 for _, a in terms):
        out = terms[0][0] * terms[0][1]
        for c, a in terms[1:]:
            out = out + c * a
        return out
    out = terms[0][0] * _wide(terms[0][1])
    for c, a in terms[1:]:
        out = out + c * _wide(a)
    return out


class ExactTensor:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: Field, num: np.ndarray, den: int = 1):
        self.field = field
        num = np.asarray(num)
        if field.is_rational:
            den = int(den)
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                num, den = -_wide(num), -den
            num = _compact(num)
            if num.size:
                g = _content(num, den)
                if g == 0:
                    den = 1
                elif g != 1:
                    num = _compact(num // g)
                    den //= g
            self.num, self.den = num, den
        else:
            p = field.p
            if den != 1:
                num = _wide(num) * pow(int(den), -1, p)
            self.num = (num % p).astype(_prime_dtype(p))
            self.den = 1

    # construction ---------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, shape: Sequence[int]) -> "ExactTensor":
        dtype = np.int64 if field.is_rational else _prime_dtype(field.p)
        return cls(field, np.zeros(tuple(shape), dtype=dtype), 1)

    @classmethod
    def from_scalars(cls, field: Field, values) -> "ExactTensor":
        """Build from a nested sequence or array of ints, Fractions, Residues or strings."""
        arr = np.array(values, dtype=object)
        flat = [field(x) for x in arr.ravel()]
        if field.is_rational:
            den = math.lcm(*(x.denominator for x in flat)) if flat else 1
            num = np.array([x.numerator * (den // x.denominator) for x in flat],
                           dtype=object).reshape(arr.shape)
            return cls(field, num, den)
        num = np.array([x.value for x in flat], dtype=object).reshape(arr.shape)
        return cls(field, num, 1)

    # inspection -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        return self.num.shape

    @property
    def ndim(self) -> int:
        return self.num.ndim

    @property
    def size(self) -> int:
        return self.num.size

    def _scalar(self, n) -> Scalar:
        if self.field.is_rational:
            return Fraction(int(n), self.den)
        return Residue(int(n), self.field.p)

    def __getitem__(self, idx) -> Scalar:
        n = self.num[idx]
        if isinstance(n, np.ndarray):
            raise OperadError("index must address a single entry")
        return self._scalar(n)

    def to_scalars(self) -> np.ndarray:
        """Object array of field scalars."""
        out = np.empty(self.shape, dtype=object)
        for idx, n in np.ndenumerate(self.num):
            out[idx] = self._scalar(n)
        return out

    def nonzero(self) -> Iterator[tuple[tuple[int, ...], Scalar]]:
        """Nonzero entries in row-major index order."""
        if self.ndim == 0:
            if self.num != 0:
                yield (), self._scalar(self.num[()])
            return
        for idx in zip(*np.nonzero(self.num != 0)):
            idx = tuple(int(i) for i in idx)
            yield idx, self._scalar(self.num[idx])

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def first_nonzero(self):
        return next(self.nonzero(), None)

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "ExactTensor"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.shape != other.shape:
            raise OperadError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactTensor") -> "ExactTensor":
        self._check(other)
        return signed_sum([(1, self), (1, other)])

    def __sub__(self, other: "ExactTensor") -> "ExactTensor":
        self._check(other)
        return signed_sum([(1, self), (-1, other)])

    def __neg__(self) -> "ExactTensor":
        if self.field.is_rational:
            # magnitudes are below 2**62, so int64 negation is safe
            return _raw(self.field, -self.num, self.den)
        return ExactTensor(self.field, -self.num)

    def scale(self, c) -> "ExactTensor":
        c = self.field(c)
        if self.field.is_rational:
            return ExactTensor(self.field, _lin([(c.numerator, self.num)]),
                               self.den * c.denominator)
        return ExactTensor(self.field, self.num * c.value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactTensor):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.den == other.den and bool(np.array_equal(self.num, other.num)))

    __hash__ = None

    def tensordot(self, other: "ExactTensor", axes, normalize: bool = True) -> "ExactTensor":
        """Exact ``np.tensordot``.

        ``normalize=False`` leaves a rational result unreduced; such
        intermediates must only be fed to :func:`signed_sum`.
        """
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        a, b = self.num, other.num
        k = max(math.prod(self.shape[x] for x in axes[0]), 1)
        if self.field.is_rational:
            if not (a.dtype == b.dtype == np.int64
                    and _max_abs(a) * _max_abs(b) * k < _LIMIT):
                a, b = _wide(a), _wide(b)
            num = np.tensordot(a, b, axes)
            if not normalize:
                return _raw(self.field, num, self.den * other.den)
            return ExactTensor(self.field, num, self.den * other.den)
        p = self.field.p
        if a.dtype != object and (p - 1) ** 2 * k >= _LIMIT:
            a, b = a.astype(object), b.astype(object)
        return ExactTensor(self.field, np.tensordot(a, b, axes) % p)

    def moveaxis(self, source, destination) -> "ExactTensor":
        return _raw(self.field, np.moveaxis(self.num, source, destination), self.den)

    def transpose(self, axes) -> "ExactTensor":
        return _raw(self.field, np.transpose(self.num, axes), self.den)

    def reshape(self, shape) -> "ExactTensor":
        return _raw(self.field, self.num.reshape(shape), self.den)

    def copy(self) -> "ExactTensor":
        return _raw(self.field, self.num.copy(), self.den)

    def __repr__(self):
        return f"ExactTensor({self.field}, shape={self.shape}, den={self.den})"


def _raw(field: Field, num: np.ndarray, den: int) -> ExactTensor:
    # skips renormalisation: index permutations preserve canonical form
    t = object.__new__(ExactTensor)
    t.field, t.num, t.den = field, np.ascontiguousarray(num), den
    return t


def signed_sum(terms: list[tuple[int, ExactTensor]]) -> ExactTensor:
    """``sum(sign * t)`` over tensors of one shape, normalised once at the end."""
    field = terms[0][1].field
    if not field.is_rational:
        total = terms[0][0] * terms[0][1].num
        for sgn, t in terms[1:]:
            total = total + sgn * t.num
        return ExactTensor(field, total)
    L = math.lcm(*(t.den for _, t in terms))
    return ExactTensor(field, _lin([(sgn * (L // t.den), t.num) for sgn, t in terms]), L)
