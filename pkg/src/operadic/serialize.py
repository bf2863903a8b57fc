"""Canonical JSON for co-operations, plain tensors and reports.

On disk indices are 1-based, zero entries are omitted and entries are sorted,
so writing what was read reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import OperadError
from .exact import ExactTensor
from .preoperad import CoOp, DegreeBound, ModuleSpace
from .scalars import Field


class ParseError(OperadError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def coop_to_json(f: CoOp) -> dict:
    field = f.space.field
    return {
        "dimension": f.space.dimension,
        "field": field.to_json(),
        "degree": f.degree,
        "coefficients": [
            {"in": i + 1, "out": [j + 1 for j in out], "value": field.format(v)}
            for i, out, v in f.entries()
        ],
    }


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def _index(values, d: int, where: str) -> tuple[int, ...]:
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise ParseError(f"{where}: index must be a list of integers")
    for v in values:
        if not 1 <= v <= d:
            raise ParseError(f"{where}: index {v} outside 1..{d}")
    return tuple(v - 1 for v in values)


def _space(obj, where: str, bound: DegreeBound | None) -> ModuleSpace:
    d = _require(obj, "dimension", where)
    if not isinstance(d, int) or d < 1:
        raise ParseError(f"{where}: dimension must be a positive integer")
    try:
        field = Field.from_json(_require(obj, "field", where))
    except OperadError as e:
        raise ParseError(f"{where}: {e}") from e
    return ModuleSpace(d, field, bound or DegreeBound())


def coop_from_json(obj, where: str = "<coop>", bound: DegreeBound | None = None) -> CoOp:
    space = _space(obj, where, bound)
    degree = _require(obj, "degree", where)
    if not isinstance(degree, int) or degree < 0:
        raise ParseError(f"{where}: degree must be a non-negative integer")
    entries = []
    seen = set()
    for n, e in enumerate(_require(obj, "coefficients", where)):
        loc = f"{where}: coefficients[{n}]"
        i = _index([_require(e, "in", loc)], space.dimension, loc)[0]
        out = _index(_require(e, "out", loc), space.dimension, loc)
        if len(out) != degree:
            raise ParseError(f"{loc}: 'out' has length {len(out)}, expected {degree}")
        if (i, out) in seen:
            raise ParseError(f"{loc}: duplicate entry")
        seen.add((i, out))
        value = _require(e, "value", loc)
        if not isinstance(value, str):
            raise ParseError(f"{loc}: value must be a string")
        try:
            entries.append((i, out, space.field.parse(value)))
        except OperadError as err:
            raise ParseError(f"{loc}: {err}") from err
    return CoOp.from_entries(space, degree, entries)


def tensor_to_json(t: ExactTensor, dimension: int) -> dict:
    field = t.field
    return {
        "dimension": dimension,
        "field": field.to_json(),
        "entries": [{"idx": [i + 1 for i in idx], "value": field.format(v)}
                    for idx, v in t.nonzero()],
    }


def tensor_from_json(obj, rank: int, where: str = "<tensor>") -> tuple[ModuleSpace, ExactTensor]:
    space = _space(obj, where, None)
    d = space.dimension
    arr = np.empty((d,) * rank, dtype=object)
    arr[...] = space.field(0)
    for n, e in enumerate(_require(obj, "entries", where)):
        loc = f"{where}: entries[{n}]"
        idx = _index(_require(e, "idx", loc), d, loc)
        if len(idx) != rank:
            raise ParseError(f"{loc}: expected {rank} indices, got {len(idx)}")
        value = _require(e, "value", loc)
        if not isinstance(value, str):
            raise ParseError(f"{loc}: value must be a string")
        try:
            arr[idx] = space.field.parse(value)
        except OperadError as err:
            raise ParseError(f"{loc}: {err}") from err
    return space, ExactTensor.from_scalars(space.field, arr)


def load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e


def load_coop(path, bound: DegreeBound | None = None) -> CoOp:
    return coop_from_json(load_json(path), str(path), bound)


def load_tensor(path, rank: int) -> tuple[ModuleSpace, ExactTensor]:
    return tensor_from_json(load_json(path), rank, str(path))


def write_text(path, text: str) -> None:
    Path(path).write_text(text)
