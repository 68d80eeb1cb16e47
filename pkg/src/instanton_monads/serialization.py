"""JSON readers and writers.

Rationals are written as strings ``"p/q"`` in lowest terms (``q >= 1``).
Readers also accept plain integers and integer strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .forms import BinaryForm, DualBinaryForm
from .linalg import LinearMatrix, RationalMatrix
from .moduli import GrassPoint2
from .monad import Monad, SubspaceU


class FormatError(ValueError):
    """Input data does not follow the expected schema."""


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_json(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(f"not a rational: {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {s!r}") from exc


def matrix_to_json(M: RationalMatrix) -> list[list[str]]:
    return [[rational_to_str(x) for x in row] for row in M.tolist()]


def matrix_from_json(data: Any) -> RationalMatrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise FormatError("a matrix must be a nonempty list of rows")
    try:
        return RationalMatrix([[rational_from_json(x) for x in row] for row in data])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _require(data: Any, *keys: str) -> None:
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise FormatError(f"missing field(s): {', '.join(missing)}")


def _int_field(data: dict, key: str) -> int:
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"field {key!r} must be an integer")
    return v


def subspace_to_json(U: SubspaceU) -> dict:
    return {
        "n": U.n,
        "k": U.k,
        "basis": [[rational_to_str(v) for v in f.values] for f in U.basis],
    }


def subspace_from_json(data: Any) -> SubspaceU:
    _require(data, "n", "k", "basis")
    n, k = _int_field(data, "n"), _int_field(data, "k")
    if not isinstance(data["basis"], list) or not data["basis"]:
        raise FormatError("basis must be a nonempty list")
    try:
        basis = tuple(
            DualBinaryForm(len(vals) - 1, tuple(rational_from_json(v) for v in vals))
            for vals in data["basis"]
        )
        return SubspaceU(n, k, basis)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"invalid subspace: {exc}") from exc


def linear_matrix_to_json(L: LinearMatrix) -> list:
    return [matrix_to_json(c) for c in L.components]


def linear_matrix_from_json(data: Any) -> LinearMatrix:
    if not isinstance(data, list) or not data:
        raise FormatError("a linear matrix must be a nonempty list of coefficient matrices")
    try:
        return LinearMatrix.from_components([matrix_from_json(c) for c in data])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def monad_to_json(M: Monad) -> dict:
    return {
        "n": M.n,
        "k": M.k,
        "A": linear_matrix_to_json(M.A),
        "B": linear_matrix_to_json(M.B),
    }


def monad_from_json(data: Any) -> Monad:
    _require(data, "n", "k", "A", "B")
    try:
        return Monad(
            _int_field(data, "n"),
            _int_field(data, "k"),
            linear_matrix_from_json(data["A"]),
            linear_matrix_from_json(data["B"]),
        )
    except ValueError as exc:
        raise FormatError(f"invalid monad: {exc}") from exc


def grass_point_to_json(P: GrassPoint2) -> dict:
    return {
        "n": P.n,
        "vectors": [[[rational_to_str(c) for c in p.coeffs] for p in u] for u in (P.u1, P.u2)],
    }


def grass_point_from_json(data: Any) -> GrassPoint2:
    _require(data, "n", "vectors")
    n = _int_field(data, "n")
    vecs = data["vectors"]
    if not isinstance(vecs, list) or len(vecs) != 2:
        raise FormatError("vectors must hold exactly two entries")
    try:
        pairs = [
            tuple(BinaryForm(len(c) - 1, tuple(rational_from_json(x) for x in c)) for c in u)
            for u in vecs
        ]
        return GrassPoint2(n, pairs[0], pairs[1])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"invalid Grassmannian point: {exc}") from exc


def matrices_from_json(data: Any) -> list[RationalMatrix]:
    _require(data, "matrices")
    if not isinstance(data["matrices"], list):
        raise FormatError("matrices must be a list")
    return [matrix_from_json(m) for m in data["matrices"]]


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
