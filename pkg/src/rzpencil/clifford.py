"""Anticommuting hermitian generators and what they represent.

``brauer_weyl`` builds n hermitian matrices of size 2^(n//2) that square to
the identity and pairwise anticommute.  Feeding them a square root of
G = bb^T/4 - A turns a quadratic real zero polynomial into a monic pencil
whose determinant is a power of that polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import DimensionError, PreconditionError
from .exact import nullspace_exact
from .numbers import Num, simplify
from .pencil import TAU_RANK, IdentityVerdict, Pencil, verify_identity
from .polynomial import Poly
from .realzero import QuadraticData, homogenized_restriction, quadratic_form, quadratic_rz_check
from .seeding import resolve_seed

TAU_EQ = 1e-8
TAU_REL = 1e-8

ONE = np.array([[1, 0], [0, 1]], dtype=complex)
ONE_PRIME = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_P = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Q = np.array([[0, 1j], [-1j, 0]], dtype=complex)


def _to_exact(x: complex):
    re, im = int(x.real), int(x.imag)
    return simplify(Num(re, 0, im)) if im else Fraction(re)


@dataclass(frozen=True)
class CliffordGenerators:
    n: int
    size: int
    matrices: tuple  # complex arrays with entries in {0, +-1, +-i}
    variant: str

    def exact(self) -> list[np.ndarray]:
        return [np.vectorize(_to_exact, otypes=[object])(S) for S in self.matrices]

    def pencil(self) -> Pencil:
        return Pencil(self.exact(), None, 1, self.size)


def _kron_all(factors) -> np.ndarray:
    return reduce(np.kron, factors, np.ones((1, 1), dtype=complex))


def brauer_weyl(n: int, variant: str = "standard") -> CliffordGenerators:
    """Generators P/Q in each tensor slot (1' to the left, 1 to the right), plus 1'x...x1' for odd n."""
    if n < 1:
        raise PreconditionError("need at least one generator")
    if variant not in ("standard", "negated"):
        raise PreconditionError(f"unknown variant {variant!r}")
    m = n // 2
    gens = []
    for X in (PAULI_P, PAULI_Q):
        for j in range(m):
            slots = [ONE_PRIME] * j + [X] + [ONE] * (m - j - 1)
            gens.append(_kron_all(reversed(slots)))
    if n % 2:
        gens.append(_kron_all([ONE_PRIME] * m))
    if variant == "negated":
        gens = [-S for S in gens]
    out = CliffordGenerators(n, 2**m, tuple(gens), variant)
    check_clifford_relations(out.matrices)
    return out


def check_clifford_relations(mats) -> None:
    """Squares are I, distinct generators anticommute, all hermitian (exact on small integers)."""
    if not mats:
        return
    k = mats[0].shape[0]
    eye = np.eye(k)
    for i, S in enumerate(mats):
        if not np.array_equal(S, S.conj().T):
            raise ArithmeticError(f"generator {i + 1} is not hermitian")
        if not np.array_equal(S @ S, eye):
            raise ArithmeticError(f"generator {i + 1} does not square to the identity")
        for j in range(i):
            if not np.array_equal(S @ mats[j], -(mats[j] @ S)):
                raise ArithmeticError(f"generators {j + 1} and {i + 1} do not anticommute")


def representation_power(n: int) -> tuple[int, int]:
    """(size, power) of the quadratic construction in n variables."""
    if n <= 1:
        return 2, 1
    return 2 ** (n // 2), 2 ** (n // 2 - 1)


def _generator_slots(C) -> list[int]:
    """Nonzero rows of C take the leading generators, zero rows the trailing ones."""
    n = len(C)
    nonzero = [i for i in range(n) if any(C[i][j] != 0 for j in range(n))]
    zero = [i for i in range(n) if i not in nonzero]
    slot = [0] * n
    for g, i in enumerate(nonzero + zero):
        slot[i] = g
    return slot


def quadratic_pencil(q: QuadraticData, variant: str = "standard") -> Pencil:
    """M_j = sum_i C_ij * sigma_i + b_j/2 * I with C^2 = bb^T/4 - A."""
    if not quadratic_rz_check(q):
        raise PreconditionError("polynomial is not real zero (bb^T/4 - A is not PSD)")
    if q.C is None:
        raise PreconditionError("no square root of bb^T/4 - A is available")
    n = q.nvars
    if n == 1:
        std = _assemble(q, brauer_weyl(1, "standard"))
        neg = _assemble(q, brauer_weyl(1, "negated"))
        return std.direct_sum(neg)
    return _assemble(q, brauer_weyl(n, variant))


def _assemble(q: QuadraticData, gens: CliffordGenerators) -> Pencil:
    n, k = q.nvars, gens.size
    C = q.C
    slot = _generator_slots(C)
    exact = q.exact and all(isinstance(x, (int, Fraction, Num)) for x in q.b)
    sig = gens.exact() if exact else [S.astype(complex) for S in gens.matrices]
    mats = []
    for j in range(n):
        if exact:
            M = np.full((k, k), Fraction(0), dtype=object)
            for i in range(n):
                if C[i][j] != 0:
                    M = M + sig[slot[i]] * C[i][j]
            half = simplify(q.b[j] / 2)
            for t in range(k):
                M[t, t] = M[t, t] + half
            M = np.vectorize(simplify, otypes=[object])(M)
        else:
            M = np.zeros((k, k), dtype=complex)
            for i in range(n):
                M += complex(C[i][j]) * sig[slot[i]]
            M += complex(q.b[j]) / 2 * np.eye(k)
        mats.append(M)
    return Pencil(mats, None, q.base, k)


@dataclass(frozen=True)
class Construction:
    pencil: Pencil
    size: int
    power: int
    verdict: IdentityVerdict
    exact_root: bool


def construct_quadratic(
    p: Poly, variant: str = "standard", trials: int = 200, seed: int | None = None
) -> Construction:
    """Build and verify a representation of p^r for a quadratic real zero p."""
    q = quadratic_form(p)
    P = quadratic_pencil(q, variant)
    size, r = representation_power(p.nvars)
    verdict = verify_identity(P, p, r, trials=trials, seed=seed)
    return Construction(P, size, r, verdict, q.exact)


# -- defining relations ----------------------------------------------------------


@dataclass(frozen=True)
class RelationsVerdict:
    passed: bool
    mode: str  # "exact" | "float"
    directions: int
    failures: int
    max_residual: float
    seed: int

    def __bool__(self):
        return self.passed


def _matrix_horner(coeffs, W, exact: bool):
    k = W.shape[0]
    if exact:
        eye = np.full((k, k), Fraction(0), dtype=object)
        for i in range(k):
            eye[i, i] = Fraction(1)
    else:
        eye = np.eye(k, dtype=complex)
    R = eye * coeffs[-1]
    for c in reversed(coeffs[:-1]):
        R = R.dot(W) + eye * c
    return R


def relations_check(P: Pencil, p: Poly, trials: int = 20, seed: int | None = None) -> RelationsVerdict:
    """Check phat(-W, a) = 0 for W = sum a_i M_i at sampled directions a."""
    if P.nvars != p.nvars:
        raise DimensionError(f"pencil has {P.nvars} variables, polynomial has {p.nvars}")
    if p.degree < 1 or p.const_term != 1:
        raise PreconditionError("need deg p >= 1 and p(0) = 1")
    seed = resolve_seed(seed)
    rng = np.random.default_rng(seed)
    exact = P.exact and p.is_exact
    fails, worst = 0, 0.0
    for _ in range(trials):
        z = [0] * P.nvars
        while not any(z):
            z = [int(v) for v in rng.integers(-4, 5, size=P.nvars)]
        a = [Fraction(v) for v in z] if exact else [float(v) for v in z]
        u = homogenized_restriction(p, a)
        coeffs = list(u.coeffs) + [0] * (p.degree + 1 - len(u.coeffs))
        W = P.combination(a)
        if exact:
            R = _matrix_horner(coeffs, W, True)
            ok = all(x == 0 for x in R.ravel())
            res = 0.0 if ok else float(max(abs(complex(x)) for x in R.ravel()))
        else:
            R = _matrix_horner([complex(c) for c in coeffs], W.astype(complex), False)
            normW = max(1.0, float(np.linalg.norm(W, 2)))
            res = float(np.max(np.abs(R))) / normW ** p.degree
            ok = res <= TAU_REL
        worst = max(worst, res)
        fails += not ok
    return RelationsVerdict(fails == 0, "exact" if exact else "float", trials, fails, worst, seed)


# -- unitary equivalence ------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceVerdict:
    verdict: str  # "equivalent" | "inequivalent" | "inconclusive"
    witness_word: tuple | None = None  # generator indices (1-based)
    traces: tuple | None = None
    witness_exact: bool = False
    unitary: np.ndarray | None = None
    residual: float | None = None
    note: str = ""


def _trace_word(mats, word, exact: bool):
    if exact:
        R = mats[word[0]]
        for w in word[1:]:
            R = R.dot(mats[w])
        return simplify(sum(R[i, i] for i in range(R.shape[0])))
    R = mats[word[0]]
    for w in word[1:]:
        R = R @ mats[w]
    return complex(np.trace(R))


def _words(n: int, length: int, trials: int, rng):
    for L in range(1, length + 1):
        if n**L <= max(trials, 1) * 8:
            yield from itertools.product(range(n), repeat=L)
        else:
            for _ in range(trials):
                yield tuple(int(v) for v in rng.integers(0, n, size=L))


def intertwiners(A: list, B: list) -> np.ndarray:
    """Orthonormal basis (as k x k matrices) of {X : A_i X = X B_i for all i}."""
    k = A[0].shape[0]
    eye = np.eye(k)
    rows = [np.kron(eye, Ai) - np.kron(Bi.T, eye) for Ai, Bi in zip(A, B)]
    S = np.vstack(rows)
    _, s, Vh = np.linalg.svd(S)
    tol = TAU_RANK * max(1.0, s[0] if s.size else 1.0) * 10
    null = Vh[np.sum(s > tol) :].conj()
    return np.array([v.reshape(k, k, order="F") for v in null])


def _intertwiner_system(A: list, B: list) -> list[list]:
    """Exact rows of A_i X - X B_i = 0 in the column-major entries of X."""
    k = A[0].shape[0]
    rows = []
    for Ai, Bi in zip(A, B):
        for r in range(k):
            for c in range(k):
                row = [Fraction(0)] * (k * k)
                for t in range(k):
                    row[c * k + t] += Ai[r, t]
                    row[t * k + r] -= Bi[t, c]
                rows.append(row)
    return rows


def unitary_equiv_test(
    P1: Pencil, P2: Pencil, word_length: int = 4, trials: int = 64, seed: int | None = None
) -> EquivalenceVerdict:
    """Three-valued test for a unitary Q with Q* M1_i Q = M2_i for every i."""
    if P1.nvars != P2.nvars:
        raise DimensionError("pencils have different numbers of variables")
    if P1.size != P2.size:
        return EquivalenceVerdict("inequivalent", None, (P1.size, P2.size), True, note="sizes differ")
    seed = resolve_seed(seed)
    rng = np.random.default_rng(seed)
    F1, F2 = P1.float_mats(), P2.float_mats()
    if P1.nvars == 0 or P1.size == 0:
        return EquivalenceVerdict("equivalent", unitary=np.eye(P1.size, dtype=complex), residual=0.0)
    scale = max(1.0, *(float(np.max(np.abs(A))) for A in F1 + F2))
    for word in _words(P1.nvars, word_length, trials, rng):
        t1, t2 = _trace_word(F1, word, False), _trace_word(F2, word, False)
        bound = 1e-7 * P1.size * scale ** len(word)
        if abs(t1 - t2) > bound:
            human = tuple(w + 1 for w in word)
            if P1.exact and P2.exact:
                e1 = _trace_word(list(P1.mats), word, True)
                e2 = _trace_word(list(P2.mats), word, True)
                if e1 != e2:
                    return EquivalenceVerdict("inequivalent", human, (e1, e2), True)
                continue
            return EquivalenceVerdict("inequivalent", human, (t1, t2), False)
    basis = intertwiners(F1, F2)
    if len(basis) == 0:
        if P1.exact and P2.exact:
            if not nullspace_exact(_intertwiner_system(P1.mats, P2.mats), P1.size**2):
                return EquivalenceVerdict("inequivalent", None, None, True, note="intertwiner space is zero")
            return EquivalenceVerdict("inconclusive", note="exact intertwiners exist but none was found numerically")
        return EquivalenceVerdict("inequivalent", None, None, False, note="intertwiner space is numerically zero")
    best = None
    for _ in range(8):
        c = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        X = np.tensordot(c, basis, axes=1)
        U, s, Vh = np.linalg.svd(X)
        if s[-1] <= 1e-8 * s[0]:
            continue
        Q = U @ Vh
        resid = max(
            float(np.max(np.abs(Q.conj().T @ A @ Q - B))) / max(1.0, float(np.max(np.abs(B))))
            for A, B in zip(F1, F2)
        )
        if best is None or resid < best[1]:
            best = (Q, resid)
        if resid <= TAU_EQ:
            return EquivalenceVerdict("equivalent", unitary=Q, residual=resid)
    if best is None:
        return EquivalenceVerdict("inconclusive", note="intertwiners found are all singular")
    return EquivalenceVerdict("inconclusive", unitary=best[0], residual=best[1], note="residual above tolerance")


__all__ = [
    "CliffordGenerators",
    "brauer_weyl",
    "check_clifford_relations",
    "quadratic_pencil",
    "construct_quadratic",
    "representation_power",
    "relations_check",
    "unitary_equiv_test",
    "intertwiners",
    "Construction",
    "RelationsVerdict",
    "EquivalenceVerdict",
]
