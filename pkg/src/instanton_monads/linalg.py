"""Exact dense linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` entries.  Rank and
kernel computations clear denominators row by row and run fraction-free
(Bareiss) elimination over Python integers, so no rounding ever happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "kron",
    "RationalMatrix",
    "LinearMatrix",
    "rank",
    "nullity",
    "kernel_basis",
    "row_echelon",
    "det",
    "inverse",
    "evaluate",
    "quadratic_product",
    "maximal_minors",
    "to_fraction",
]


def to_fraction(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix data")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def _trusted(cls, rows: tuple, cols: int) -> "RationalMatrix":
        obj = cls.__new__(cls)
        obj.rows = len(rows)
        obj.cols = cols
        obj._data = rows
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        zero = Fraction(0)
        return cls._trusted(tuple((zero,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._trusted(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence) -> "RationalMatrix":
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls((entries[i * cols:(i + 1) * cols] for i in range(rows)), cols)

    @classmethod
    def diag(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        return cls(([values[i] if i == j else 0 for j in range(n)] for i in range(n)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self._data for x in row)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix._trusted(
            tuple(tuple(r[j] for r in self._data) for j in range(self.cols)), self.rows
        )

    def transpose(self) -> "RationalMatrix":
        return self.T

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = Fraction(0)
        cols = tuple(zip(*other._data)) if other.rows else tuple(() for _ in range(other.cols))
        out = []
        for row in self._data:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out.append(tuple(sum((a * col[k] for k, a in nz), zero) for col in cols))
        return RationalMatrix._trusted(tuple(out), other.cols)

    def _check_same(self, other: "RationalMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_same(other)
        return RationalMatrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_same(other)
        return RationalMatrix._trusted(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix._trusted(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def __mul__(self, scalar) -> "RationalMatrix":
        if isinstance(scalar, RationalMatrix):
            return NotImplemented
        s = to_fraction(scalar)
        return RationalMatrix._trusted(tuple(tuple(s * a for a in r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"RationalMatrix([{body}])"


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Kronecker product; row index of the result is i * b.rows + k."""
    return RationalMatrix._trusted(
        tuple(
            tuple(x * y for x in a.row(i) for y in b.row(k))
            for i in range(a.rows)
            for k in range(b.rows)
        ),
        a.cols * b.cols,
    )


# -- fraction-free elimination -------------------------------------------------


def _integer_rows(M: RationalMatrix) -> list[list[int]]:
    rows = []
    for row in M._data:
        if not any(row):
            continue
        den = reduce(lcm, (x.denominator for x in row), 1)
        rows.append([x.numerator * (den // x.denominator) for x in row])
    return rows


def _bareiss(rows: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free row echelon form, in place.  Returns the pivot columns.

    The pivot for each column is the first row (at or below the current
    position) with a nonzero entry.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [(piv * a - f * b) // prev for a, b in zip(row, prow)]
            elif prev != piv:
                rows[i] = [piv * a // prev for a in row]
        prev = piv
        pivots.append(c)
        r += 1
    del rows[r:]
    return pivots


def row_echelon(M: RationalMatrix) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form of ``M`` (rows are scaled copies) and its pivot columns."""
    rows = _integer_rows(M)
    pivots = _bareiss(rows, M.cols)
    return rows, pivots


def rank(M: RationalMatrix) -> int:
    return len(row_echelon(M)[1])


def nullity(M: RationalMatrix) -> int:
    return M.cols - rank(M)


def kernel_basis(M: RationalMatrix) -> RationalMatrix:
    """Right kernel of ``M`` as the columns of a ``cols x nullity`` matrix.

    One basis vector per free column, with that free variable set to 1 and
    the other free variables set to 0.
    """
    rows, pivots = row_echelon(M)
    n = M.cols
    free = [c for c in range(n) if c not in set(pivots)]
    vectors = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = rows[r]
            s = sum((row[j] * x[j] for j in range(pc + 1, n) if row[j] and x[j]), Fraction(0))
            x[pc] = -s / row[pc]
        vectors.append(x)
    if not vectors:
        return RationalMatrix.zeros(n, 0)
    return RationalMatrix(zip(*vectors), len(vectors))


def det(M: RationalMatrix) -> Fraction:
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in M._data:
        den = reduce(lcm, (x.denominator for x in row), 1)
        scale /= den
        rows.append([x.numerator * (den // x.denominator) for x in row])
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        for i in range(c + 1, n):
            rows[i] = [(piv * a - rows[i][c] * b) // prev for a, b in zip(rows[i], rows[c])]
        prev = piv
    return sign * rows[n - 1][n - 1] * scale


def inverse(M: RationalMatrix) -> RationalMatrix:
    """Gauss-Jordan inverse.  Raises ``ValueError`` on singular input."""
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    a = [list(M.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            raise ValueError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return RationalMatrix((row[n:] for row in a), n)


# -- matrices of linear forms -------------------------------------------------


@dataclass(frozen=True)
class LinearMatrix:
    """Matrix whose entries are linear forms: ``M(z) = sum_c z_c * components[c]``."""

    rows: int
    cols: int
    components: tuple[RationalMatrix, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a linear matrix needs at least one variable")
        for comp in self.components:
            if comp.shape != (self.rows, self.cols):
                raise ValueError(
                    f"component shape {comp.shape} differs from ({self.rows}, {self.cols})"
                )

    @classmethod
    def from_components(cls, components: Sequence[RationalMatrix]) -> "LinearMatrix":
        components = tuple(components)
        return cls(components[0].rows, components[0].cols, components)

    @property
    def nvars(self) -> int:
        return len(self.components)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __call__(self, z: Sequence) -> RationalMatrix:
        return evaluate(self, z)

    def substitute(self, T: RationalMatrix) -> "LinearMatrix":
        """The matrix ``z -> M(T z)``."""
        if T.shape != (self.nvars, self.nvars):
            raise ValueError("substitution matrix has the wrong size")
        comps = []
        for d in range(self.nvars):
            acc = RationalMatrix.zeros(self.rows, self.cols)
            for c in range(self.nvars):
                t = T[c, d]
                if t:
                    acc = acc + t * self.components[c]
            comps.append(acc)
        return LinearMatrix(self.rows, self.cols, tuple(comps))

    def left_mul(self, P: RationalMatrix) -> "LinearMatrix":
        return LinearMatrix.from_components([P @ c for c in self.components])

    def right_mul(self, Q: RationalMatrix) -> "LinearMatrix":
        return LinearMatrix.from_components([c @ Q for c in self.components])

    def __neg__(self) -> "LinearMatrix":
        return LinearMatrix(self.rows, self.cols, tuple(-c for c in self.components))

    def __mul__(self, scalar) -> "LinearMatrix":
        return LinearMatrix(self.rows, self.cols, tuple(scalar * c for c in self.components))

    __rmul__ = __mul__

    def column(self, j: int) -> "LinearMatrix":
        return LinearMatrix.from_components(
            [RationalMatrix([[x] for x in c.column(j)], 1) for c in self.components]
        )

    def entry_variables(self, i: int, j: int) -> dict[int, Fraction]:
        """Linear form at position (i, j) as ``{variable: coefficient}``."""
        return {c: comp[i, j] for c, comp in enumerate(self.components) if comp[i, j]}


def evaluate(M: LinearMatrix, z: Sequence) -> RationalMatrix:
    if len(z) != M.nvars:
        raise ValueError(f"point has {len(z)} coordinates, matrix has {M.nvars} variables")
    acc = RationalMatrix.zeros(M.rows, M.cols)
    for zc, comp in zip(z, M.components):
        zc = to_fraction(zc)
        if zc:
            acc = acc + zc * comp
    return acc


def quadratic_product(L: LinearMatrix, R: LinearMatrix) -> dict[tuple[int, int], RationalMatrix]:
    """Coefficients of the quadratic-form matrix ``L(z) R(z)``.

    Keyed by ``(c, d)`` with ``c <= d``; the value is the coefficient matrix
    of the monomial ``z_c z_d``.
    """
    if L.cols != R.rows or L.nvars != R.nvars:
        raise ValueError("incompatible linear matrices")
    N = L.nvars
    out = {}
    for c in range(N):
        for d in range(c, N):
            coeff = L.components[c] @ R.components[d]
            if c != d:
                coeff = coeff + L.components[d] @ R.components[c]
            out[(c, d)] = coeff
    return out


# -- pencils ------------------------------------------------------------------


def _poly_mul(p: list, q: list) -> list:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_add(p: list, q: list, sign: int = 1) -> list:
    return [a + sign * b for a, b in zip(p, q)]


def _pencil_det(entries: list[list[list]], size: int) -> list:
    """Determinant of a square matrix of linear binary forms (Laplace along rows).

    Subdeterminants are memoised on the set of columns already used, so the
    cost is ``O(2^size * size)`` polynomial products.
    """
    memo: dict[tuple[int, ...], list] = {}

    def minor(row: int, cols: tuple[int, ...]) -> list:
        if row == size:
            return [Fraction(1)]
        key = cols
        if key in memo:
            return memo[key]
        acc = [Fraction(0)] * (size - row + 1)
        for pos, c in enumerate(cols):
            e = entries[row][c]
            if not any(e):
                continue
            rest = minor(row + 1, cols[:pos] + cols[pos + 1:])
            acc = _poly_add(acc, _poly_mul(e, rest), -1 if pos % 2 else 1)
        memo[key] = acc
        return acc

    return minor(0, tuple(range(size)))


def maximal_minors(H_f: RationalMatrix, H_g: RationalMatrix) -> list:
    """All maximal minors of the pencil ``lam * H_f + mu * H_g``.

    Minors are taken over row subsets in lexicographic order and returned as
    :class:`~instanton_monads.forms.BinaryForm` objects in ``(lam, mu)``
    of degree ``cols``.
    """
    from .forms import BinaryForm

    if H_f.shape != H_g.shape:
        raise ValueError(f"pencil matrices differ in shape: {H_f.shape} vs {H_g.shape}")
    r, c = H_f.shape
    if r < c or c == 0:
        raise ValueError(f"pencil of shape {H_f.shape} has no maximal minors")
    lin = [[[H_f[i, j], H_g[i, j]] for j in range(c)] for i in range(r)]
    out = []
    for subset in combinations(range(r), c):
        coeffs = _pencil_det([lin[i] for i in subset], c)
        out.append(BinaryForm(c, tuple(coeffs)))
    return out
