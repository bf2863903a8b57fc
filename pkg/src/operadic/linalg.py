"""Exact rank and inversion for :class:`ExactTensor` matrices."""

from __future__ import annotations

import numpy as np

from .errors import OperadError
from .exact import ExactTensor
from .scalars import Field

PIVOTS = ("first", "smallest")


def _pick(col: np.ndarray, strategy: str):
    nz = np.flatnonzero(col != 0)
    if nz.size == 0:
        return None
    if strategy == "first":
        return int(nz[0])
    if strategy == "smallest":
        mags = [abs(int(col[i])) for i in nz]
        return int(nz[min(range(len(nz)), key=mags.__getitem__)])
    raise ValueError(f"unknown pivot strategy {strategy!r}")


def bareiss_rank(num: np.ndarray, pivot: str = "first") -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    M = np.array(num, dtype=object, copy=True)
    if M.ndim != 2:
        raise OperadError("rank needs a matrix")
    rows, cols = M.shape
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        k = _pick(M[r:, c], pivot)
        if k is None:
            continue
        k += r
        if k != r:
            M[[r, k]] = M[[k, r]]
        pv = M[r, c]
        if r + 1 < rows:
            below = M[r + 1:, c].copy()
            # every quotient is exact: entries stay minors of the input
            M[r + 1:, c:] = (pv * M[r + 1:, c:] - np.outer(below, M[r, c:])) // prev
        prev = pv
        r += 1
    return r


def rank_mod_p(num: np.ndarray, p: int, pivot: str = "first") -> int:
    """Rank over F_p of an integer (or residue) matrix."""
    M = np.array(num, dtype=object, copy=True) % p
    M = M.astype(np.int64) if p < 2**31 else M
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = _pick(M[r:, c], pivot)
        if k is None:
            continue
        k += r
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        if r + 1 < rows:
            below = M[r + 1:, c].copy()
            M[r + 1:] = (M[r + 1:] - np.outer(below, M[r])) % p
        r += 1
    return r


def exact_rank(m: ExactTensor, pivot: str = "first") -> int:
    if m.field.is_rational:
        return bareiss_rank(m.num, pivot)
    return rank_mod_p(m.num, m.field.p, pivot)


def inverse(m: ExactTensor) -> ExactTensor:
    """Gauss-Jordan inverse over the tensor's field."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise OperadError("inverse needs a square matrix")
    field = m.field
    n = m.shape[0]
    A = m.to_scalars()
    B = np.array([[field(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)
    for c in range(n):
        k = next((i for i in range(c, n) if A[i, c] != 0), None)
        if k is None:
            raise OperadError("matrix is singular")
        if k != c:
            A[[c, k]] = A[[k, c]]
            B[[c, k]] = B[[k, c]]
        pv = A[c, c]
        A[c] = A[c] / pv
        B[c] = B[c] / pv
        for i in range(n):
            if i != c and A[i, c] != 0:
                t = A[i, c]
                A[i] = A[i] - t * A[c]
                B[i] = B[i] - t * B[c]
    return ExactTensor.from_scalars(field, B)


def matmul(a: ExactTensor, b: ExactTensor) -> ExactTensor:
    return a.tensordot(b, ([a.ndim - 1], [0]))


def to_field(m: ExactTensor, field: Field) -> ExactTensor:
    """Image of a rational tensor in another field (e.g. reduction mod p)."""
    if m.field == field:
        return m
    if not m.field.is_rational:
        raise OperadError(f"cannot map {m.field} into {field}")
    if field.is_rational:
        return m
    if m.den % field.p == 0:
        raise OperadError(f"denominator {m.den} vanishes mod {field.p}")
    return ExactTensor(field, m.num, m.den)
