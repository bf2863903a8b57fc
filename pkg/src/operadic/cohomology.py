"""Coboundary matrices and cohomology dimensions of a coassociative Δ0.

Convention: ``H^0 = ker ∂_0``, i.e. there is no differential into degree 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .deformation import associator, coboundary
from .errors import DegreeError, NotCoassociativeError, SizeGuardError
from .exact import ExactTensor
from .linalg import exact_rank
from .preoperad import CoOp
from .scalars import Field

MAX_MATRIX_ENTRIES = 2**24


@dataclass(frozen=True, eq=False)
class CoboundaryMatrix:
    degree_from: int
    matrix: ExactTensor

    @property
    def degree_to(self) -> int:
        return self.degree_from + 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def column(self, k: int, delta0: CoOp) -> CoOp:
        """Column ``k`` read back as a co-operation of degree ``degree_to``."""
        col = ExactTensor(self.matrix.field, self.matrix.num[:, k], self.matrix.den)
        return CoOp(delta0.space, self.degree_to, col.reshape(delta0.space.shape(self.degree_to)))


def coboundary_matrix(delta0: CoOp, n: int, *, max_entries: int = MAX_MATRIX_ENTRIES) -> CoboundaryMatrix:
    """Matrix of ``∂_n : C^n -> C^{n+1}`` in the elementary basis.

    Columns are the images of elementary co-operations pushed through
    :func:`coboundary`, so the sign logic lives in one place.
    """
    if delta0.degree != 2:
        raise DegreeError("delta0 must have degree 2")
    if n < 0:
        raise DegreeError("n must be >= 0")
    d = delta0.space.dimension
    rows, cols = d ** (n + 2), d ** (n + 1)
    if rows * cols > max_entries:
        raise SizeGuardError(f"coboundary matrix {rows}x{cols} exceeds {max_entries} entries")
    images = [coboundary(delta0, CoOp.elementary(delta0.space, n, k)).vector()
              for k in range(cols)]
    field = delta0.space.field
    if field.is_rational:
        den = math.lcm(*(v.den for v in images))
        num = np.stack([v.num * (den // v.den) for v in images], axis=1)
    else:
        den = 1
        num = np.stack([v.num for v in images], axis=1)
    return CoboundaryMatrix(n, ExactTensor(field, num, den))


@dataclass(frozen=True)
class CohomologyRow:
    n: int
    dimC: int
    rank: int
    kernel: int
    H: int


@dataclass(frozen=True)
class CohomologyReport:
    field: Field
    rows: tuple[CohomologyRow, ...]
    delta0: str | None = dc_field(default=None)

    def dims(self) -> list[int]:
        return [r.H for r in self.rows]

    def to_json(self) -> dict:
        return {
            "delta0": self.delta0,
            "field": self.field.to_json(),
            "rows": [{"n": r.n, "dimC": r.dimC, "rank": r.rank, "kernel": r.kernel, "H": r.H}
                     for r in self.rows],
        }

    def table(self) -> str:
        head = ("n", "dim C^n", "rank d_n", "dim ker d_n", "dim H^n")
        body = [tuple(str(x) for x in (r.n, r.dimC, r.rank, r.kernel, r.H)) for r in self.rows]
        widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h)
                  for i, h in enumerate(head)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(head, widths))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(b, widths)) for b in body]
        return "\n".join(lines)


def require_coassociative(delta0: CoOp) -> None:
    A0 = associator(delta0)
    if not A0.is_zero():
        idx, value = A0.tensor.first_nonzero()
        raise NotCoassociativeError(
            f"delta0 is not coassociative: associator entry in={idx[-1] + 1} "
            f"out={[j + 1 for j in idx[:-1]]} is {value}", entry=(idx, value))


def cohomology_dimensions(delta0: CoOp, max_n: int, *, pivot: str = "first",
                          label: str | None = None) -> CohomologyReport:
    require_coassociative(delta0)
    d = delta0.space.dimension
    rows = []
    prev_rank = 0
    for n in range(max_n + 1):
        r = exact_rank(coboundary_matrix(delta0, n).matrix, pivot)
        dim = d ** (n + 1)
        rows.append(CohomologyRow(n, dim, r, dim - r, dim - r - prev_rank))
        prev_rank = r
    return CohomologyReport(delta0.space.field, tuple(rows), label)
