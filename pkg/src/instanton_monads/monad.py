"""Special instanton monads ``O(-1)^(k+1) -A-> O^(2n+2k+2) -B-> O(1)^(k+1)``.

Coordinates on P^(2n+1) are indexed by pairs ``(m, eps)``: ``z_(m, eps)`` is
dual to ``x^(n-m) y^m (x) w_eps`` and sits at flat position ``2 m + eps``.
The middle term ``(S^(n+k) V (x) W)^dual`` uses the same convention,
``(a, eps) -> 2 a + eps``.  A general identification of ``(S^n V (x) W)^dual``
with the linear forms is ``b = b0 o g^dual`` for an invertible ``g``, which
on matrices is the substitution ``z -> g z``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .forms import DualBinaryForm
from .linalg import (
    LinearMatrix,
    RationalMatrix,
    det,
    kernel_basis,
    quadratic_product,
    rank,
)
from .sampling import make_rng, random_point

log = logging.getLogger(__name__)

__all__ = [
    "CoordinateSystem",
    "SubspaceU",
    "Monad",
    "VerificationReport",
    "build_B",
    "build_A",
    "build_monad",
    "composition_zero",
    "verify_monad",
    "hom_space",
    "hom_space_dim",
    "kernel_sections",
    "chern_check",
]


@dataclass(frozen=True)
class CoordinateSystem:
    """Flat indexing of the pairs ``(m, eps)``.

    ``swap_w`` exchanges the roles of ``w_0`` and ``w_1``; it exists to
    exercise the sign convention of :func:`build_A`.
    """

    n: int
    swap_w: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def nvars(self) -> int:
        return 2 * self.n + 2

    def index(self, m: int, eps: int) -> int:
        return 2 * m + (eps ^ int(self.swap_w))

    def pair(self, i: int) -> tuple[int, int]:
        m, e = divmod(i, 2)
        return m, e ^ int(self.swap_w)

    def label(self, i: int) -> str:
        m, e = self.pair(i)
        return f"z({m},{e})"


@dataclass(frozen=True)
class SubspaceU:
    """A (k+1)-dimensional subspace of ``(S^(2n+k) V)^dual`` given by a basis."""

    n: int
    k: int
    basis: tuple[DualBinaryForm, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be at least 1")
        basis = tuple(
            f if isinstance(f, DualBinaryForm) else DualBinaryForm(len(f) - 1, tuple(f))
            for f in self.basis
        )
        object.__setattr__(self, "basis", basis)
        if len(basis) != self.k + 1:
            raise ValueError(f"need k+1 = {self.k + 1} basis forms, got {len(basis)}")
        d = 2 * self.n + self.k
        for f in basis:
            if f.degree != d:
                raise ValueError(f"basis form of degree {f.degree}, expected {d}")
        if rank(self.values_matrix()) != self.k + 1:
            raise ValueError("basis forms are linearly dependent")

    @property
    def degree(self) -> int:
        return 2 * self.n + self.k

    def values_matrix(self) -> RationalMatrix:
        return RationalMatrix((f.values for f in self.basis), self.degree + 1)

    def combination(self, coeffs: Sequence) -> DualBinaryForm:
        acc = DualBinaryForm(self.degree, (0,) * (self.degree + 1))
        for c, f in zip(coeffs, self.basis):
            acc = acc + c * f
        return acc


@dataclass(frozen=True)
class Monad:
    n: int
    k: int
    A: LinearMatrix
    B: LinearMatrix
    provenance: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        r0 = 2 * self.n + 2 * self.k + 2
        N = 2 * self.n + 2
        if self.A.shape != (r0, self.k + 1) or self.B.shape != (self.k + 1, r0):
            raise ValueError(
                f"monad shapes A{self.A.shape}, B{self.B.shape} do not fit (n, k) = ({self.n}, {self.k})"
            )
        if self.A.nvars != N or self.B.nvars != N:
            raise ValueError(f"expected {N} coordinates")

    @property
    def middle_rank(self) -> int:
        return 2 * self.n + 2 * self.k + 2


def _check_g(g: RationalMatrix | None, N: int) -> RationalMatrix | None:
    if g is None:
        return None
    if not isinstance(g, RationalMatrix):
        g = RationalMatrix(g)
    if g.shape != (N, N):
        raise ValueError(f"g must be {N}x{N}")
    if det(g) == 0:
        raise ValueError("g is not invertible")
    return g


def build_B(n: int, k: int, g: RationalMatrix | None = None,
            coords: CoordinateSystem | None = None) -> LinearMatrix:
    """Matrix of ``p_b``: row ``c``, column ``(a, eps)`` holds ``z_(a-c, eps)``."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be at least 1")
    coords = coords or CoordinateSystem(n)
    N = coords.nvars
    g = _check_g(g, N)
    cols = 2 * (n + k + 1)
    comps = [[[0] * cols for _ in range(k + 1)] for _ in range(N)]
    for c in range(k + 1):
        for a in range(n + k + 1):
            m = a - c
            if 0 <= m <= n:
                for eps in (0, 1):
                    comps[coords.index(m, eps)][c][coords.index(a, eps)] = 1
    B = LinearMatrix.from_components([RationalMatrix(rows, cols) for rows in comps])
    return B.substitute(g) if g is not None else B


def build_A(U: SubspaceU, g: RationalMatrix | None = None,
            coords: CoordinateSystem | None = None) -> LinearMatrix:
    """Matrix of ``i_U``.

    Column ``j`` comes from the basis form ``f``; its entry at ``(a, eps)`` is
    ``sign(eps) * sum_m f[a+m] z_(m, 1-eps)`` with ``sign(0) = 1``,
    ``sign(1) = -1`` (the generator of ``(Lambda^2 W)^dual`` takes the
    value 1 on ``w_0 ^ w_1``).
    """
    n, k = U.n, U.k
    coords = coords or CoordinateSystem(n)
    N = coords.nvars
    g = _check_g(g, N)
    rows = 2 * (n + k + 1)
    comps = [[[Fraction(0)] * (k + 1) for _ in range(rows)] for _ in range(N)]
    for j, f in enumerate(U.basis):
        v = f.values
        for a in range(n + k + 1):
            for eps, sign in ((0, 1), (1, -1)):
                r = coords.index(a, eps)
                for m in range(n + 1):
                    if v[a + m]:
                        comps[coords.index(m, 1 - eps)][r][j] += sign * v[a + m]
    A = LinearMatrix.from_components([RationalMatrix(c, k + 1) for c in comps])
    return A.substitute(g) if g is not None else A


def build_monad(U: SubspaceU, g: RationalMatrix | None = None) -> Monad:
    return Monad(U.n, U.k, build_A(U, g), build_B(U.n, U.k, g), provenance=(U, g))


# -- verification -------------------------------------------------------------


@dataclass
class VerificationReport:
    composition_zero: bool
    p_surjective_sampled: bool
    i_injective_sampled: bool
    samples: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.composition_zero and self.p_surjective_sampled and self.i_injective_sampled

    def as_dict(self) -> dict:
        return {
            "composition_zero": self.composition_zero,
            "p_surjective_sampled": self.p_surjective_sampled,
            "i_injective_sampled": self.i_injective_sampled,
            "samples": self.samples,
            "failures": list(self.failures),
            "ok": self.ok,
        }


def composition_zero(B: LinearMatrix, A: LinearMatrix) -> bool:
    """``B(z) A(z) == 0`` as a matrix of quadratic forms (every coefficient)."""
    return all(coeff.is_zero() for coeff in quadratic_product(B, A).values())


def verify_monad(M: Monad, samples: int = 8, seed: int = 0) -> VerificationReport:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    failures = []
    comp = composition_zero(M.B, M.A)
    if not comp:
        failures.append("B(z)A(z) is not identically zero")
    rng = make_rng(seed)
    surj = inj = True
    N = M.A.nvars
    for s in range(samples):
        z = random_point(rng, N)
        if rank(M.B(z)) != M.k + 1:
            surj = False
            failures.append(f"sample {s}: B(z) not surjective at z = {[str(x) for x in z]}")
        if rank(M.A(z)) != M.k + 1:
            inj = False
            failures.append(f"sample {s}: A(z) not injective at z = {[str(x) for x in z]}")
    for msg in failures:
        log.debug(msg)
    return VerificationReport(comp, surj, inj, samples, failures)


# -- morphisms of complexes ---------------------------------------------------


def _hom_system(M1: Monad, M2: Monad) -> tuple[RationalMatrix, tuple[int, int, int]]:
    # unknowns: X = M_{-1}, Y = M_0, Z = M_1, each row-major
    if (M1.n, M1.k) != (M2.n, M2.k):
        raise ValueError("monads have different (n, k)")
    e = M1.k + 1
    r0 = M1.middle_rank
    oX, oY, oZ = 0, e * e, e * e + r0 * r0
    total = oZ + e * e
    eqs = []
    for A1c, A2c, B1c, B2c in zip(M1.A.components, M2.A.components,
                                  M1.B.components, M2.B.components):
        # Y A1 - A2 X = 0
        for i in range(r0):
            for j in range(e):
                row = [0] * total
                for s in range(r0):
                    if A1c[s, j]:
                        row[oY + i * r0 + s] += A1c[s, j]
                for t in range(e):
                    if A2c[i, t]:
                        row[oX + t * e + j] -= A2c[i, t]
                eqs.append(row)
        # B2 Y - Z B1 = 0
        for i in range(e):
            for j in range(r0):
                row = [0] * total
                for s in range(r0):
                    if B2c[i, s]:
                        row[oY + s * r0 + j] += B2c[i, s]
                for t in range(e):
                    if B1c[t, j]:
                        row[oZ + i * e + t] -= B1c[t, j]
                eqs.append(row)
    return RationalMatrix(eqs, total), (e, r0, e)


def hom_space(M1: Monad, M2: Monad) -> list[tuple[RationalMatrix, RationalMatrix, RationalMatrix]]:
    """Basis of the morphisms of complexes ``M1 -> M2``.

    Each element is a triple ``(M_-1, M_0, M_1)`` of constant matrices with
    ``M_0 A1 = A2 M_-1`` and ``B2 M_0 = M_1 B1``.
    """
    system, (e, r0, _) = _hom_system(M1, M2)
    K = kernel_basis(system)
    out = []
    for j in range(K.cols):
        v = K.column(j)
        X = RationalMatrix.from_entries(e, e, v[: e * e])
        Y = RationalMatrix.from_entries(r0, r0, v[e * e: e * e + r0 * r0])
        Z = RationalMatrix.from_entries(e, e, v[e * e + r0 * r0:])
        out.append((X, Y, Z))
    return out


def hom_space_dim(M1: Monad, M2: Monad) -> int:
    system, _ = _hom_system(M1, M2)
    return system.cols - rank(system)


# -- sections of ker(p) (1) ---------------------------------------------------


def _kernel_sections_system(B: LinearMatrix) -> RationalMatrix:
    N = B.nvars
    r0 = B.cols
    eqs = []
    # unknown S[row, d] at row * N + d; section s(z)_row = sum_d S[row, d] z_d
    for c in range(N):
        for d in range(c, N):
            for i in range(B.rows):
                eq = [0] * (r0 * N)
                for row in range(r0):
                    if B.components[c][i, row]:
                        eq[row * N + d] += B.components[c][i, row]
                    if c != d and B.components[d][i, row]:
                        eq[row * N + c] += B.components[d][i, row]
                eqs.append(eq)
    return RationalMatrix(eqs, r0 * N)


def kernel_sections(M: Monad | LinearMatrix) -> tuple[int, list[LinearMatrix]]:
    """Columns of linear forms ``s(z)`` with ``B(z) s(z) = 0`` identically.

    Returns the dimension and a basis, each element a ``(2n+2k+2) x 1``
    :class:`LinearMatrix`.
    """
    B = M.B if isinstance(M, Monad) else M
    N, r0 = B.nvars, B.cols
    K = kernel_basis(_kernel_sections_system(B))
    basis = []
    for j in range(K.cols):
        v = K.column(j)
        comps = [RationalMatrix([[v[row * N + d]] for row in range(r0)], 1) for d in range(N)]
        basis.append(LinearMatrix.from_components(comps))
    return K.cols, basis


# -- Chern polynomial ----------------------------------------------------------


def _series_mul(p: list[int], q: list[int], prec: int) -> list[int]:
    out = [0] * prec
    for i, a in enumerate(p[:prec]):
        if a:
            for j, b in enumerate(q[: prec - i]):
                out[i + j] += a * b
    return out


def _series_inv(p: list[int], prec: int) -> list[int]:
    if p[0] not in (1, -1):
        raise ValueError("series is not invertible over the integers")
    p = p + [0] * prec
    out = [0] * prec
    for i in range(prec):
        s = (1 if i == 0 else 0) - sum(p[j] * out[i - j] for j in range(1, i + 1))
        out[i] = s * p[0]
    return out


def chern_check(n: int, k: int) -> list[int]:
    """Total Chern class of the monad cohomology, modulo ``t^(2n+2)``.

    ``c_t(E) = c_t(O)^(2n+2k+2) / (c_t(O(-1))^(k+1) c_t(O(1))^(k+1))``
    computed by series arithmetic and checked against
    ``sum_j C(k+j, j) t^(2j)``.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be at least 1")
    prec = 2 * n + 2
    den = [1]
    for _ in range(k + 1):
        den = _series_mul(den, [1, -1], prec)
        den = _series_mul(den, [1, 1], prec)
    series = _series_inv(den, prec)
    expected = [comb(k + i // 2, i // 2) if i % 2 == 0 else 0 for i in range(prec)]
    if series != expected:
        raise ArithmeticError(f"Chern series {series} differs from {expected}")
    return series
