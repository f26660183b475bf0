"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

from fractions import Fraction

import numpy as np
import sympy as sp

from _gen import random_quadratic, rng_for
from rzpencil import catalog
from rzpencil.clifford import brauer_weyl, construct_quadratic, unitary_equiv_test
from rzpencil.obstruction import TAGS, consistency_flags, meshulam_alpha, min_size_bound, nonexistence_report
from rzpencil.pencil import (
    GRID_CAP,
    Pencil,
    TAU_CORR,
    TAU_ID,
    det_poly,
    double_to_symmetric,
    eigen_root_check,
    pad_and_scramble,
    random_exact_pencil,
    random_hermitian,
    random_pencil,
    random_unitary,
    verify_identity,
)
from rzpencil.numbers import I
from rzpencil.polynomial import parse, power, restrict
from rzpencil.realzero import is_real_zero, witness_holds
from rzpencil.reduction import common_kernel_reduce, cone_reduce

# sympy expansions (Berkowitz determinant of the displayed matrices), frozen
SYMPY_EX57 = (
    "x1**4 + 4*sqrt(2)*x1**3 - 2*x1**2*x2**2 - 2*x1**2*x3**2 - 2*x1**2*x4**2 - 2*x1**2*x5**2"
    " + 10*x1**2 - 4*sqrt(2)*x1*x2**2 - 4*sqrt(2)*x1*x3**2 - 4*sqrt(2)*x1*x4**2 - 4*sqrt(2)*x1*x5**2"
    " + 4*sqrt(2)*x1 + x2**4 + 2*x2**2*x3**2 + 2*x2**2*x4**2 + 2*x2**2*x5**2 - 2*x2**2 + x3**4"
    " + 2*x3**2*x4**2 + 2*x3**2*x5**2 - 2*x3**2 + x4**4 + 2*x4**2*x5**2 - 2*x4**2 + x5**4 - 2*x5**2 + 1"
)
SYMPY_EX58 = (
    "x0**4 + 4*x0**3 - 2*x0**2*x1**2 - 2*x0**2*x2**2 - 2*x0**2*x3**2 - 2*x0**2*x4**2 + 6*x0**2"
    " - 4*x0*x1**2 - 4*x0*x2**2 - 4*x0*x3**2 - 4*x0*x4**2 + 4*x0 + x1**4 + 2*x1**2*x2**2"
    " + 2*x1**2*x3**2 + 2*x1**2*x4**2 - 2*x1**2 + x2**4 + 2*x2**2*x3**2 + 2*x2**2*x4**2 - 2*x2**2"
    " + x3**4 + 2*x3**2*x4**2 - 2*x3**2 + x4**4 - 2*x4**2 + 1"
)


def test_two_by_two_representations_of_p3(criterion):
    with criterion(1, "both 2x2 pencils have det 1 - x1^2 - x2^2 - x3^2 exactly"):
        target = parse("1 - x1^2 - x2^2 - x3^2")
        for name in ("p3-rep-1", "p3-rep-2"):
            P = catalog.get(name)
            assert P.exact
            assert det_poly(P) == target


def test_arrowhead_determinants(criterion):
    with criterion(2, "arrowhead pencil of size n+1 has det p_n for n = 2..8"):
        for n in range(2, 9):
            P = catalog.get(f"arrowhead_{n}")
            assert P.size == n + 1
            expected = parse("1" + "".join(f" - x{j}^2" for j in range(1, n + 1)), nvars=n)
            assert det_poly(P) == expected
            assert det_poly(P) == catalog.get(f"p_{n}")


def test_clifford_pencil_determinants(criterion):
    with criterion(3, "4x4 pencils: det = p_5^2, q_5^2 (with sqrt 2) and ptilde_4^2 exactly"):
        bw5 = catalog.get("bw5")
        assert bw5 == brauer_weyl(5).pencil()
        assert det_poly(bw5) == power(catalog.get("p_5"), 2)
        ex57 = catalog.get("ex57")
        assert ex57.domain == "sqrt:2"
        assert det_poly(ex57) == power(catalog.get("q_5"), 2)
        assert det_poly(ex57) == parse(SYMPY_EX57, nvars=5)
        ex58 = catalog.get("ex58")
        assert det_poly(ex58) == power(catalog.get("ptilde_4"), 2)
        assert det_poly(ex58) == parse(SYMPY_EX58, nvars=5)


def _check_construction(p):
    c = construct_quadratic(p, seed=11)
    n = p.nvars
    k = 2 ** (n // 2)
    assert c.size == k == c.pencil.size
    assert c.power == 2 ** (n // 2 - 1)
    v = c.verdict
    assert v.passed and v.mismatches == 0
    if (k + 1) ** n <= GRID_CAP:
        assert v.mode == "proved"
    else:
        assert v.mode == "sampled" and v.points == 200
    return v.mode


def test_quadratic_construction_end_to_end(criterion):
    with criterion(4, "quadratic construction: size 2^(n/2), det = p^r proved or sampled exactly"):
        rng = rng_for(4)
        modes = []
        for _ in range(20):
            n = int(rng.integers(2, 7))
            modes.append(_check_construction(random_quadratic(rng, n)))
        for n in range(2, 8):
            for name in (f"p_{n}", f"q_{n}", f"ptilde_{n - 1}"):
                modes.append(_check_construction(catalog.get(name)))
        assert "sampled" in modes and "proved" in modes


def test_eigenvalue_root_correspondence(criterion):
    with criterion(5, "-1/lambda matches roots of p_a; zero eigenvalues = degree drop"):
        rng = rng_for(5)
        for _ in range(20):
            k, n = int(rng.integers(1, 7)), int(rng.integers(1, 5))
            P = random_pencil(n, k, rng)
            target = det_poly(P)
            for _ in range(50):
                r = eigen_root_check(P, rng.standard_normal(n), target)
                assert r.passed, r
                assert r.max_mismatch <= TAU_CORR
                assert r.zero_eigenvalues == r.degree_drop
        # a rank-deficient direction: the drop is seen as zero eigenvalues
        P = catalog.get("arrowhead_3")
        r = eigen_root_check(P, [1, 0, 0])
        assert r.passed and r.zero_eigenvalues == r.degree_drop == 2


def test_doubling(criterion):
    with criterion(6, "doubled pencil has det^2 and doubled spectra"):
        rng = rng_for(6)
        for t in range(20):
            if t < 10:
                P = random_exact_pencil(int(rng.integers(1, 4)), int(rng.integers(1, 4)), rng)
                D = double_to_symmetric(P)
                assert D.symmetry == "symmetric" and D.size == 2 * P.size
                assert det_poly(D) == power(det_poly(P), 2)
            else:
                n, k = int(rng.integers(1, 4)), int(rng.integers(1, 6))
                P = Pencil([random_hermitian(k, rng) for _ in range(n)])
                D = double_to_symmetric(P)
                for _ in range(20):
                    a = rng.standard_normal(n)
                    d1 = np.linalg.det(P.evaluate(a)).real
                    d2 = np.linalg.det(D.evaluate(a)).real
                    assert abs(d2 - d1 * d1) <= TAU_ID * max(1.0, d1 * d1)
            for _ in range(20):
                a = rng.standard_normal(P.nvars)
                ev = np.linalg.eigvalsh(P.to_float().combination(a))
                ed = np.linalg.eigvalsh(D.to_float().combination(a))
                assert np.allclose(np.sort(np.repeat(ev, 2)), ed, atol=1e-9 * max(1.0, np.abs(ev).max()))


def test_reduction_round_trips(criterion):
    with criterion(7, "pad-and-scramble then reduce recovers an equivalent pencil; cone split of ptilde_3"):
        rng = rng_for(7)
        for _ in range(20):
            k, n, z = int(rng.integers(1, 5)), int(rng.integers(1, 4)), int(rng.integers(1, 4))
            P = random_pencil(n, k, rng)
            S, _ = pad_and_scramble(P, z, rng)
            R = common_kernel_reduce(S, seed=1)
            assert R.pencil.size == k and R.removed == z and R.det_preserved
            assert unitary_equiv_test(P, R.pencil, seed=1).verdict == "equivalent"
        base = catalog.get("ptilde3-rep")
        S, _ = pad_and_scramble(base, 2, rng)
        R = cone_reduce(S, seed=1)
        assert R.pencil.size == 2 and R.removed == 2 and R.det_preserved
        assert unitary_equiv_test(base, R.pencil, seed=1).verdict == "equivalent"


def _sympy_nonreal(p, a) -> bool:
    t = sp.symbols("t")
    u = restrict(p, [Fraction(v) for v in a])
    expr = sum(sp.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(u.coeffs))
    poly = sp.Poly(expr, t)
    return len(sp.real_roots(poly)) < poly.degree()


def test_real_zero_decider(criterion):
    with criterion(8, "RZ decider accepts p_n, 1+x1, q_5, ptilde_4; rejects quartic and 1+x1^2"):
        accepted = [catalog.get(f"p_{n}") for n in range(1, 9)]
        accepted += [parse("1 + x1"), catalog.get("q_5"), catalog.get("ptilde_4")]
        for p in accepted:
            assert is_real_zero(p, seed=3).is_rz, p
        for text in ("1 - x1^4 - x2^4", "1 + x1^2"):
            p = parse(text)
            v = is_real_zero(p, seed=3)
            assert not v.is_rz
            assert witness_holds(p, v.witness_direction)
            assert _sympy_nonreal(p, v.witness_direction)


def test_bounds_arithmetic(criterion):
    with criterion(9, "size bounds for d = 2 and continuity of the rank-bounded dimension formula"):
        for n in range(4, 13):
            b = min_size_bound(n, 2, "symmetric")
            assert b.ceiling == n and b.value == n
        assert min_size_bound(3, 2, "symmetric") is None
        for n in range(11, 21):
            b = min_size_bound(n, 2, "hermitian")
            assert b.value == Fraction(n + 1, 4)
        assert min_size_bound(10, 2, "hermitian") is None
        for d in range(1, 11):
            e = d // 2
            full = d * (d + 1) // 2

            def large(k):
                return Fraction(e * (e + 1), 2) + e * (k - e) + (d % 2)

            crossing = Fraction(5 * e + 1, 2) if d % 2 == 0 else Fraction(5 * (e + 1), 2)
            assert large(crossing) == full
            prev = 0
            for k in range(d, 61):
                a = meshulam_alpha(k, d)
                assert a >= prev
                expected = max(full, large(k)) if k > crossing else full
                assert a == expected
                prev = a


def test_obstruction_reports(criterion):
    with criterion(10, "non-existence reports for ptilde_3, ptilde_4, q_5; no clash with ex58"):
        cone = TAGS["cone"]
        r3 = nonexistence_report(catalog.get("ptilde_3"), seed=5)
        assert r3.none_exists("symmetric") and not r3.none_exists("hermitian")
        assert cone in r3.tags_for("symmetric")
        for h in ("real-zero", "cone", "no-full-line"):
            assert r3.hypotheses[h].status == "verified-exact"

        r4 = nonexistence_report(catalog.get("ptilde_4"), seed=5)
        assert r4.none_exists("symmetric") and r4.none_exists("hermitian")
        assert r4.tags_for("hermitian") == {cone, TAGS["spectrum"]}
        assert r4.hypotheses["base-simple-zeros"].status == "verified-sampled"
        for c in r4.conclusions:
            assert all(r4.hypotheses[h].holds for h in c.hypotheses)

        r5 = nonexistence_report(catalog.get("q_5"), seed=5)
        assert r5.none_exists("hermitian") and r5.tags_for("hermitian") == {cone}

        ex58 = catalog.get("ex58")
        assert verify_identity(ex58, catalog.get("ptilde_4"), 2).mode == "proved"
        assert consistency_flags(r4, 2, "hermitian") == []
        assert consistency_flags(r4, 2, "symmetric") == []


def test_uniqueness_and_equivalence(criterion):
    with criterion(11, "minimal representations are pairwise inequivalent; conjugates are recovered"):
        v = unitary_equiv_test(catalog.get("p3-rep-1"), catalog.get("p3-rep-2"), seed=2)
        assert v.verdict == "inequivalent" and v.witness_exact
        assert v.witness_word == (1, 2, 3)
        assert v.traces == (-2 * I, 2 * I)
        v = unitary_equiv_test(catalog.get("bw5"), catalog.get("bw5-negated"), seed=2)
        assert v.verdict == "inequivalent" and v.witness_exact
        rng = rng_for(11)
        for _ in range(10):
            P = random_pencil(int(rng.integers(1, 4)), int(rng.integers(1, 6)), rng)
            U = random_unitary(P.size, rng)
            Q = P.conjugated(U)
            v = unitary_equiv_test(P, Q, seed=int(rng.integers(1 << 30)))
            assert v.verdict == "equivalent" and v.residual <= 1e-8
            W = v.unitary
            assert np.allclose(W.conj().T @ W, np.eye(P.size), atol=1e-10)
            for A, B in zip(P.float_mats(), Q.float_mats()):
                assert np.max(np.abs(W.conj().T @ A @ W - B)) <= 1e-8
