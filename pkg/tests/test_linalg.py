import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from instanton_monads.linalg import (
    LinearMatrix,
    RationalMatrix,
    det,
    evaluate,
    inverse,
    kernel_basis,
    maximal_minors,
    quadratic_product,
    rank,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def matrices(draw, max_rows=6, max_cols=6, sparse=True):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    elem = st.one_of(st.just(Fraction(0)), fractions) if sparse else fractions
    rows = draw(st.lists(st.lists(elem, min_size=c, max_size=c), min_size=r, max_size=r))
    return RationalMatrix(rows, c)


def sympy_rank(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                         for row in M.tolist()]).rank()


def test_rank_examples():
    assert rank(RationalMatrix.zeros(3, 2)) == 0
    assert rank(RationalMatrix.identity(4)) == 4
    # the two nonzero rows give the 2x2 minor 1*1 - 0*0 = 1
    assert rank(RationalMatrix([[1, 0], [0, 0], [0, 1]])) == 2


def test_kernel_examples():
    assert kernel_basis(RationalMatrix.identity(3)).cols == 0
    assert kernel_basis(RationalMatrix.zeros(2, 3)).cols == 3
    K = kernel_basis(RationalMatrix([[1, 1]]))
    assert K == RationalMatrix([[-1], [1]])


def test_evaluate_examples():
    M = LinearMatrix.from_components([RationalMatrix([[1, 0]]), RationalMatrix([[0, 1]])])
    assert evaluate(M, [3, 5]) == RationalMatrix([[3, 5]])
    assert evaluate(M, [0, 0]).is_zero()
    single = LinearMatrix.from_components([RationalMatrix([[2, 7], [1, 0]])])
    assert evaluate(single, [1]) == single.components[0]
    with pytest.raises(ValueError):
        evaluate(M, [1])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == sympy_rank(M)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert K.rows == M.cols
    assert rank(M) + K.cols == M.cols
    if K.cols:
        assert (M @ K).is_zero()
        assert rank(K) == K.cols


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=5, max_cols=5), st.integers(0, 2 ** 32))
def test_rank_invariant_under_permutation_and_invertible_multiplication(M, seed):
    rnd = random.Random(seed)
    perm_r = list(range(M.rows))
    perm_c = list(range(M.cols))
    rnd.shuffle(perm_r)
    rnd.shuffle(perm_c)
    P = RationalMatrix([[M[i, j] for j in perm_c] for i in perm_r], M.cols)
    assert rank(P) == rank(M)
    while True:
        G = RationalMatrix([[rnd.randint(-4, 4) for _ in range(M.rows)] for _ in range(M.rows)])
        if det(G) != 0:
            break
    assert rank(G @ M) == rank(M)


@settings(max_examples=80, deadline=None)
@given(matrices(max_rows=5, max_cols=5, sparse=False))
def test_det_and_inverse(M):
    if not M.is_square():
        return
    sym = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in M.tolist()])
    d = det(M)
    assert d == Fraction(int(sym.det().p), int(sym.det().q))
    if d != 0:
        assert inverse(M) @ M == RationalMatrix.identity(M.rows)
    else:
        with pytest.raises(ValueError):
            inverse(M)


def test_quadratic_product_symmetric_coefficients():
    # L(z) = [z0, z1], R(z) = [z1, z0]^T  ->  L R = 2 z0 z1
    L = LinearMatrix.from_components([RationalMatrix([[1, 0]]), RationalMatrix([[0, 1]])])
    R = LinearMatrix.from_components([RationalMatrix([[0], [1]]), RationalMatrix([[1], [0]])])
    q = quadratic_product(L, R)
    assert q[(0, 0)].is_zero() and q[(1, 1)].is_zero()
    assert q[(0, 1)] == RationalMatrix([[2]])


lam, mu = sympy.symbols("lam mu")


def sympy_minors(Hf, Hg):
    from itertools import combinations

    P = sympy.Matrix(Hf.rows, Hf.cols,
                     lambda i, j: lam * sympy.Rational(str(Hf[i, j])) + mu * sympy.Rational(str(Hg[i, j])))
    out = []
    for rows in combinations(range(Hf.rows), Hf.cols):
        out.append(sympy.expand(P.extract(list(rows), list(range(Hf.cols))).det()))
    return out


def form_to_sympy(p):
    d = p.degree
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * lam ** (d - i) * mu ** i
                            for i, c in enumerate(p.coeffs)))


def test_maximal_minors_example():
    Hf = RationalMatrix([[1, 0], [0, 0], [0, 1]])
    Hg = RationalMatrix([[0, 1], [1, 0], [0, 0]])
    got = [form_to_sympy(m) for m in maximal_minors(Hf, Hg)]
    # rows (0,1), (0,2), (1,2) of [[lam, mu], [mu, 0], [0, lam]]
    assert got == [-mu ** 2, lam ** 2, lam * mu]


def test_maximal_minors_degenerate_pencils():
    Hf = RationalMatrix([[1, 2], [3, 5], [0, 1]])
    Hg = RationalMatrix([[2, 0], [1, 1], [4, 1]])
    for m_same, m_f in zip(maximal_minors(Hf, Hf), maximal_minors(Hf, RationalMatrix.zeros(3, 2))):
        # m_f = minor(H_f) * lam^2
        assert form_to_sympy(m_same) == sympy.factor(form_to_sympy(m_f).subs(lam, lam + mu)).expand()
    for m0, mg in zip(maximal_minors(RationalMatrix.zeros(3, 2), Hg), maximal_minors(Hg, Hg)):
        c = form_to_sympy(mg).subs({lam: 1, mu: 0})
        assert form_to_sympy(m0) == sympy.expand(c * mu ** 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2), st.integers(0, 2 ** 32))
def test_maximal_minors_match_sympy(c, extra, seed):
    rnd = random.Random(seed)
    r = c + extra
    Hf = RationalMatrix([[rnd.randint(-5, 5) for _ in range(c)] for _ in range(r)])
    Hg = RationalMatrix([[rnd.randint(-5, 5) for _ in range(c)] for _ in range(r)])
    got = [form_to_sympy(m) for m in maximal_minors(Hf, Hg)]
    assert got == sympy_minors(Hf, Hg)


def test_maximal_minors_rejects_bad_shapes():
    with pytest.raises(ValueError):
        maximal_minors(RationalMatrix.zeros(3, 2), RationalMatrix.zeros(2, 2))
    with pytest.raises(ValueError):
        maximal_minors(RationalMatrix.zeros(2, 3), RationalMatrix.zeros(2, 3))


def test_linear_matrix_substitution():
    M = LinearMatrix.from_components([RationalMatrix([[1, 0]]), RationalMatrix([[0, 1]])])
    T = RationalMatrix([[2, 1], [0, 3]])
    z = [Fraction(5), Fraction(-2)]
    Tz = [sum(T[i, j] * z[j] for j in range(2)) for i in range(2)]
    assert M.substitute(T)(z) == M(Tz)
