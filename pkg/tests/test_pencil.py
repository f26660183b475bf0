from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from rzpencil import catalog
from rzpencil.errors import DimensionError, PreconditionError, SizeCapError
from rzpencil.numbers import I, Num
from rzpencil.pencil import (
    Pencil,
    det_poly,
    eigen_root_check,
    make_monic,
    membership,
    random_exact_pencil,
    random_pencil,
    verify_identity,
)
from rzpencil.polynomial import evaluate, parse, power

X = sp.symbols("x1:4")


def sym(x):
    x = Num.lift(x) if not isinstance(x, Num) else x
    q = lambda v: sp.Rational(Fraction(v).numerator, Fraction(v).denominator)  # noqa: E731
    r = sp.sqrt(x.m)
    return q(x.a) + q(x.b) * r + sp.I * (q(x.c) + q(x.d) * r)


def sympy_det(P: Pencil):
    M = sp.eye(P.size)
    for v, A in zip(X, P.mats):
        M += v * sp.Matrix(P.size, P.size, [sym(x) for x in A.ravel()])
    return sp.expand(M.det(method="berkowitz"))


def poly_to_sympy(p):
    out = 0
    for e, c in p.terms.items():
        term = sym(c)
        for v, k in zip(X, e):
            term *= v**k
        out += term
    return sp.expand(out)


def test_symbolic_determinant_matches_sympy():
    rng = np.random.default_rng(8)
    for _ in range(12):
        P = random_exact_pencil(int(rng.integers(1, 4)), int(rng.integers(1, 4)), rng)
        assert sp.expand(poly_to_sympy(det_poly(P)) - sympy_det(P)) == 0


def test_float_determinant_matches_numeric():
    rng = np.random.default_rng(9)
    for _ in range(10):
        P = random_pencil(3, int(rng.integers(1, 6)), rng)
        p = det_poly(P)
        for _ in range(5):
            a = rng.standard_normal(3)
            assert np.isclose(evaluate(p, list(a)), np.linalg.det(P.evaluate(a)).real, rtol=1e-9, atol=1e-9)


def test_determinant_is_multiplicative_on_direct_sums():
    A, B = catalog.get("p3-rep-1"), catalog.get("arrowhead_3")
    assert det_poly(A.direct_sum(B)) == det_poly(A) * det_poly(B)
    assert det_poly(A.padded(3)) == det_poly(A)


def test_size_cap():
    with pytest.raises(SizeCapError):
        det_poly(catalog.get("arrowhead_12"))
    assert det_poly(catalog.get("arrowhead_12"), cap=13) == catalog.get("p_12")


def test_hermitian_check_on_construction():
    with pytest.raises(PreconditionError):
        Pencil([[[0, 1], [2, 0]]])
    with pytest.raises(PreconditionError):
        Pencil([[[0, I], [-I, 0]]], symmetry="symmetric")
    with pytest.raises(DimensionError):
        Pencil([[[1, 0], [0, 1]], [[1]]])
    assert Pencil([[[0, I], [-I, 0]]]).symmetry == "hermitian"


def test_make_monic_exact_and_float():
    M0 = [[Fraction(4), 0], [0, Fraction(9)]]
    M1 = [[Fraction(2), Fraction(3)], [Fraction(3), Fraction(0)]]
    P = make_monic(M0, [M1])
    assert P.exact
    expected = parse("1 + 1/2*x1 - 1/4*x1^2")  # det(M0 + x1 M1) / 36
    assert det_poly(P) == expected
    F = make_monic(np.array([[2.0, 1.0], [1.0, 2.0]]), [np.array([[1.0, 0.0], [0.0, -1.0]])])
    for a in (0.3, -0.7):
        assert np.isclose(np.linalg.det(F.evaluate([a])).real, (3 - a * a) / 3)
    with pytest.raises(PreconditionError):
        make_monic([[Fraction(1), 0], [0, Fraction(-1)]], [M1])


def test_identity_verification_modes():
    P, p5 = catalog.get("bw5"), catalog.get("p_5")
    proved = verify_identity(P, p5, 2)
    assert proved.passed and proved.mode == "proved"
    sampled = verify_identity(P, p5, 2, grid_cap=10, seed=4)
    assert sampled.passed and sampled.mode == "sampled" and sampled.points == 200
    wrong = verify_identity(P, parse("1 - x1^2 - x2^2 - x3^2 - x4^2 - 2*x5^2"), 2)
    assert not wrong.passed and wrong.mismatches > 0
    assert not verify_identity(P, p5, 3).passed  # degree 6 > size 4
    F = P.to_float()
    fv = verify_identity(F, p5, 2, trials=30, seed=1)
    assert fv.passed and fv.mode == "float-sampled" and fv.max_error < 1e-12


def test_identity_verification_with_radicals():
    assert verify_identity(catalog.get("ex57"), catalog.get("q_5"), 2).mode == "proved"


def test_spectrahedron_membership():
    P = catalog.get("arrowhead_3")
    assert membership(P, [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)])
    assert membership(P, [Fraction(3, 5), Fraction(4, 5), 0])  # boundary, exactly singular
    assert not membership(P, [Fraction(3, 5), Fraction(4, 5), Fraction(1, 100)])
    F = P.to_float()
    assert membership(F, [0.6, 0.8, 0.0]) and not membership(F, [0.6, 0.8, 0.01])


def test_eigen_root_correspondence_exact_pencil():
    P = catalog.get("ex57")
    rng = np.random.default_rng(2)
    for _ in range(10):
        r = eigen_root_check(P, rng.integers(-3, 4, size=5))
        assert r.passed


def test_pencil_equality_and_negation():
    A = catalog.get("bw5")
    assert -(-A) == A and -A == catalog.get("bw5-negated")
    assert A != A.to_float()
