"""Seeded random co-operations and coassociative fixtures."""

from __future__ import annotations

import numpy as np

from .errors import OperadError
from .exact import ExactTensor
from .linalg import inverse
from .preoperad import CoOp, ModuleSpace

MAX_ABS = 9

# Two-dimensional associative algebras, as structure constants
# mult[a][b] = coefficients of e_a * e_b.
ALGEBRAS = {
    # K[x]/(x^2), basis (1, x)
    "dual_numbers": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
    # e1 e1 = e1, e1 e2 = e2, everything else zero (not commutative)
    "left_unit": [[[1, 0], [0, 1]], [[0, 0], [0, 0]]],
    # K x K, orthogonal idempotents
    "diagonal": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
}


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator per (seed, stream...) so trials never share state."""
    return np.random.default_rng([int(seed) & (2**64 - 1), *stream])


def random_scalars(rng: np.random.Generator, space: ModuleSpace, shape, density: float = 1.0):
    """Nested object array of small nonzero scalars, masked to ``density``."""
    size = int(np.prod(shape, dtype=np.int64))
    mask = rng.random(size) < density
    field = space.field
    if field.is_rational:
        nums = rng.integers(1, MAX_ABS + 1, size) * rng.choice([-1, 1], size)
        dens = rng.integers(1, MAX_ABS + 1, size)
        vals = [field(0) if not m else field(int(n)) / int(q)
                for m, n, q in zip(mask, nums, dens)]
    else:
        res = rng.integers(1, field.p, size)
        vals = [field(int(r)) if m else field(0) for m, r in zip(mask, res)]
    out = np.empty(size, dtype=object)
    out[:] = vals
    return out.reshape(tuple(shape))


def random_coop(space: ModuleSpace, degree: int, rng: np.random.Generator,
                density: float = 1.0) -> CoOp:
    if not 0.0 <= density <= 1.0:
        raise OperadError("density must lie in [0, 1]")
    space.check_degree(degree)
    vals = random_scalars(rng, space, space.shape(degree), density)
    return CoOp(space, degree, ExactTensor.from_scalars(space.field, vals))


def group_like(space: ModuleSpace) -> CoOp:
    """``Δ(e_i) = e_i ⊗ e_i``."""
    d = space.dimension
    return CoOp.from_entries(space, 2, ((i, (i, i), 1) for i in range(d)))


def unit_comultiplication(space: ModuleSpace) -> CoOp:
    if space.dimension != 1:
        raise OperadError("the unit comultiplication lives on a 1-dimensional module")
    return group_like(space)


def dual_of_algebra(space: ModuleSpace, table) -> CoOp:
    """Comultiplication dual to the multiplication ``e_a e_b = sum table[a][b][c] e_c``.

    ``Δ(e_c) = sum_{a,b} table[a][b][c] e_a ⊗ e_b``, coassociative exactly when
    the multiplication is associative.
    """
    if isinstance(table, str):
        table = ALGEBRAS[table]
    t = np.array(table, dtype=object)
    d = space.dimension
    if t.shape != (d, d, d):
        raise OperadError(f"multiplication table must have shape {(d, d, d)}")
    return CoOp(space, 2, ExactTensor.from_scalars(space.field, t))


def random_invertible(space: ModuleSpace, rng: np.random.Generator) -> ExactTensor:
    d = space.dimension
    while True:
        m = ExactTensor.from_scalars(space.field, random_scalars(rng, space, (d, d)))
        try:
            inverse(m)
        except OperadError:
            continue
        return m


def transport(f: CoOp, P: ExactTensor) -> CoOp:
    """Change of basis ``(P ⊗ ... ⊗ P) ∘ f ∘ P^{-1}``.

    Preserves every composition identity, so it turns a coassociative
    comultiplication into another coassociative one.
    """
    t = f.tensor
    for ax in range(f.degree):
        # contract P's column index with output axis ax, keep the new index there
        t = P.tensordot(t, ([1], [ax])).moveaxis(0, ax)
    t = t.tensordot(inverse(P), ([f.degree], [0]))
    return CoOp(f.space, f.degree, t)


def random_coassociative(space: ModuleSpace, rng: np.random.Generator) -> CoOp:
    """A group-like comultiplication in a random basis."""
    return transport(group_like(space), random_invertible(space, rng))


def random_symmetric_invertible(space: ModuleSpace, rng: np.random.Generator) -> ExactTensor:
    d = space.dimension
    while True:
        a = random_scalars(rng, space, (d, d))
        sym = np.empty((d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                sym[i, j] = a[min(i, j), max(i, j)]
        m = ExactTensor.from_scalars(space.field, sym)
        try:
            inverse(m)
        except OperadError:
            continue
        return m


def random_nonzero(space: ModuleSpace, rng: np.random.Generator):
    return random_scalars(rng, space, (1,))[0]
