"""Exact scalar fields: the rationals and prime fields of characteristic >= 5.

Rationals are plain :class:`fractions.Fraction` values. Prime-field elements
are :class:`Residue` values tagged with their modulus, so mixing elements of
different fields raises instead of silently coercing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FieldMismatchError, OperadError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Residue:
    """An element of the prime field F_p, stored as its residue in [0, p)."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"rational {other} mixed with F_{self.p}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Residue(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Residue(self._coerce(other), self.p) / self

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


@dataclass(frozen=True)
class Field:
    """Descriptor of an exact field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is None:
            return
        if not _is_prime(self.p):
            raise OperadError(f"{self.p} is not prime")
        if self.p in (2, 3):
            raise OperadError("characteristic 2 and 3 are excluded")

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(int(p))

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction, Residue or string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            if isinstance(x, Residue):
                raise FieldMismatchError(f"F_{x.p} element used over Q")
            return Fraction(x)
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatchError(f"F_{x.p} element used over F_{self.p}")
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
        return Residue(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def contains(self, x) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, Residue) and x.p == self.p

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def parse(self, s: str) -> Scalar:
        s = s.strip()
        try:
            if self.p is None:
                return Fraction(s)
            return Residue(int(s), self.p)
        except ValueError as e:
            raise OperadError(f"cannot parse scalar {s!r} over {self}") from e

    def format(self, x: Scalar) -> str:
        return str(self(x))

    def to_json(self):
        return "rational" if self.p is None else {"prime": self.p}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if obj == "rational":
            return cls.rational()
        if isinstance(obj, dict) and set(obj) == {"prime"}:
            return cls.prime(obj["prime"])
        raise OperadError(f"bad field descriptor {obj!r}")


def field_of(x: Scalar) -> Field:
    if isinstance(x, Residue):
        return Field.prime(x.p)
    if isinstance(x, Fraction):
        return Field.rational()
    raise TypeError(f"not a field scalar: {x!r}")


def _check_same(a: Scalar, b: Scalar) -> None:
    if field_of(a) != field_of(b):
        raise FieldMismatchError(f"{field_of(a)} vs {field_of(b)}")


def add(a: Scalar, b: Scalar) -> Scalar:
    _check_same(a, b)
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    _check_same(a, b)
    return a * b


def neg(a: Scalar) -> Scalar:
    field_of(a)
    return -a


def inv(a: Scalar) -> Scalar:
    if is_zero(a):
        raise ZeroDivisionError("inverse of zero")
    return 1 / a


def is_zero(a: Scalar) -> bool:
    field_of(a)
    return not a
