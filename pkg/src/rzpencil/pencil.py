"""Monic hermitian linear matrix polynomials I + x_1 M_1 + ... + x_n M_n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    DimensionError,
    ImaginaryResidueError,
    PreconditionError,
    SizeCapError,
)
from .exact import (
    batch_det,
    component_value,
    det_exact,
    is_psd_exact,
    rank_exact,
)
from .numbers import Num, conj, imag_part, is_exact, radical_of, rational_sqrt, real_part, simplify
from .polynomial import Poly, _coerce_point, all_monomials, divide_exact, restrict
from .realzero import TAU_PSD, real_roots
from .seeding import resolve_seed

K_EXACT = 12
TAU_ID = 1e-9
TAU_CORR = 1e-8
TAU_RANK = 1e-9
TAU_HERM = 1e-9
GRID_CAP = 10**6


def _as_matrix(M, exact: bool):
    if exact:
        A = np.empty((len(M), len(M)), dtype=object)
        for i, row in enumerate(M):
            if len(row) != len(M):
                raise DimensionError("coefficient matrices must be square")
            for j, x in enumerate(row):
                A[i, j] = simplify(x)
        return A
    A = np.array([[complex(x) for x in row] for row in M], dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError("coefficient matrices must be square")
    return A


def _entries_exact(mats) -> bool:
    for M in mats:
        if isinstance(M, np.ndarray) and M.dtype != object:
            return False
        for row in M:
            for x in row:
                if not is_exact(x):
                    return False
    return True


class Pencil:
    """Coefficient matrices M_1..M_n of a monic pencil; M_0 = I is implicit.

    Exact pencils keep ``Fraction``/``Num`` entries in object arrays, float
    pencils use complex128 arrays.  Hermitianity is checked on construction.
    """

    __slots__ = ("mats", "size", "symmetry", "base", "exact")

    def __init__(self, mats: Sequence, symmetry: str | None = None, base: int = 1, size: int | None = None):
        mats = list(mats)
        exact = _entries_exact(mats)
        arrs = [_as_matrix(M, exact) for M in mats]
        if arrs:
            k = arrs[0].shape[0]
            if any(A.shape != (k, k) for A in arrs):
                raise DimensionError("coefficient matrices differ in size")
            if size is not None and size != k:
                raise DimensionError(f"declared size {size} but matrices are {k}x{k}")
        elif size is None:
            raise DimensionError("size is required for a pencil without variables")
        else:
            k = size
        real = all(_is_real_matrix(A) for A in arrs)
        if symmetry is None:
            symmetry = "symmetric" if real else "hermitian"
        if symmetry not in ("hermitian", "symmetric"):
            raise PreconditionError(f"unknown symmetry {symmetry!r}")
        if symmetry == "symmetric" and not real:
            raise PreconditionError("a symmetric pencil cannot have imaginary entries")
        for idx, A in enumerate(arrs):
            arrs[idx] = _check_hermitian(A, idx + base)
        self.mats = tuple(arrs)
        self.size = k
        self.symmetry = symmetry
        self.base = base
        self.exact = exact

    @property
    def nvars(self) -> int:
        return len(self.mats)

    @property
    def radical(self) -> int:
        m = 1
        if self.exact:
            for A in self.mats:
                for x in A.ravel():
                    r = radical_of(x)
                    if r != 1:
                        m = r
        return m

    @property
    def domain(self) -> str:
        if not self.exact:
            return "float"
        m = self.radical
        return "rational" if m == 1 else f"sqrt:{m}"

    def float_mats(self) -> list[np.ndarray]:
        if not self.exact:
            return [A.copy() for A in self.mats]
        return [np.array([[complex(x) for x in row] for row in A], dtype=complex) for A in self.mats]

    def to_float(self) -> "Pencil":
        return Pencil(self.float_mats(), self.symmetry, self.base, self.size)

    def combination(self, a: Sequence):
        """sum a_i M_i (exact when everything is exact)."""
        a = _coerce_point(a)
        if len(a) != self.nvars:
            raise DimensionError(f"point has length {len(a)}, expected {self.nvars}")
        if self.exact and all(is_exact(v) for v in a):
            W = np.full((self.size, self.size), Fraction(0), dtype=object)
            for v, A in zip(a, self.mats):
                if v != 0:
                    W = W + A * v
            return np.vectorize(simplify, otypes=[object])(W) if W.size else W
        W = np.zeros((self.size, self.size), dtype=complex)
        for v, A in zip(a, self.float_mats()):
            W += complex(v) * A
        return W

    def evaluate(self, a: Sequence):
        W = self.combination(a)
        if W.dtype == object:
            for i in range(self.size):
                W[i, i] = simplify(W[i, i] + 1)
            return W
        return W + np.eye(self.size)

    def conjugated(self, Q) -> "Pencil":
        """Pencil with matrices Q* M_i Q (float unless Q is exact)."""
        Q = np.asarray(Q)
        if Q.dtype == object and self.exact:
            Qh = np.vectorize(conj, otypes=[object])(Q.T)
            mats = [Qh.dot(A).dot(Q) for A in self.mats]
        else:
            Qc = Q.astype(complex)
            mats = [Qc.conj().T @ A @ Qc for A in self.float_mats()]
            mats = [(A + A.conj().T) / 2 for A in mats]
        sym = "symmetric" if all(_is_real_matrix(np.asarray(A)) for A in mats) else "hermitian"
        return Pencil(mats, sym, self.base, Q.shape[1])

    def block(self, r: int) -> "Pencil":
        """Leading r x r block of every coefficient matrix."""
        return Pencil([A[:r, :r] for A in self.mats], self.symmetry, self.base, r)

    def padded(self, z: int) -> "Pencil":
        """Direct sum with a z x z zero block."""
        k = self.size + z
        out = []
        for A in self.mats:
            B = np.full((k, k), Fraction(0), dtype=object) if self.exact else np.zeros((k, k), complex)
            B[: self.size, : self.size] = A
            out.append(B)
        return Pencil(out, self.symmetry, self.base, k)

    def direct_sum(self, other: "Pencil") -> "Pencil":
        if other.nvars != self.nvars:
            raise DimensionError("pencils have different numbers of variables")
        k = self.size + other.size
        exact = self.exact and other.exact
        mats = []
        A_list = self.mats if exact else self.float_mats()
        B_list = other.mats if exact else other.float_mats()
        for A, B in zip(A_list, B_list):
            C = np.full((k, k), Fraction(0), dtype=object) if exact else np.zeros((k, k), complex)
            C[: self.size, : self.size] = A
            C[self.size :, self.size :] = B
            mats.append(C)
        sym = "symmetric" if self.symmetry == other.symmetry == "symmetric" else "hermitian"
        return Pencil(mats, sym, self.base, k)

    def __neg__(self) -> "Pencil":
        return Pencil([-A for A in self.mats], self.symmetry, self.base, self.size)

    def __eq__(self, other):
        if not isinstance(other, Pencil):
            return NotImplemented
        if (self.nvars, self.size, self.exact) != (other.nvars, other.size, other.exact):
            return False
        return all(np.array_equal(A, B) for A, B in zip(self.mats, other.mats))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"Pencil(nvars={self.nvars}, size={self.size}, domain={self.domain}, symmetry={self.symmetry})"


def _is_real_matrix(A) -> bool:
    if A.dtype == object:
        return all(imag_part(x) == 0 for x in A.ravel())
    return bool(np.all(A.imag == 0))


def _check_hermitian(A, label):
    if A.dtype == object:
        k = A.shape[0]
        for i in range(k):
            for j in range(i, k):
                if A[i, j] != conj(A[j, i]):
                    raise PreconditionError(f"matrix M{label} is not hermitian at ({i + 1},{j + 1})")
        return A
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if A.size and np.max(np.abs(A - A.conj().T)) > TAU_HERM * scale:
        raise PreconditionError(f"matrix M{label} is not hermitian")
    return (A + A.conj().T) / 2


# -- construction ----------------------------------------------------------------


def make_monic(M0, Ms: Sequence, base: int = 1) -> Pencil:
    """Normalize M0 + sum x_i M_i (M0 positive definite) to a monic pencil."""
    exact = _entries_exact([M0]) and _entries_exact(Ms)
    A0 = _as_matrix(M0, exact)
    k = A0.shape[0]
    if exact:
        _check_hermitian(A0, 0)
        if not is_psd_exact(A0.tolist()) or det_exact(A0.tolist()) == 0:
            raise PreconditionError("M0 is not positive definite")
        diag = all(A0[i, j] == 0 for i in range(k) for j in range(k) if i != j)
        roots = [rational_sqrt(A0[i, i]) for i in range(k)] if diag else []
        if diag and all(r is not None for r in roots):
            inv = [1 / r for r in roots]
            mats = []
            for M in Ms:
                A = _as_matrix(M, True)
                mats.append([[simplify(A[i, j] * inv[i] * inv[j]) for j in range(k)] for i in range(k)])
            return Pencil(mats, None, base, k)
    F0 = np.array([[complex(x) for x in row] for row in A0], dtype=complex)
    F0 = _check_hermitian(F0, 0)
    w, V = np.linalg.eigh(F0)
    if w.min() <= TAU_PSD * max(1.0, float(np.max(np.abs(F0)))):
        raise PreconditionError("M0 is not positive definite")
    R = (V / np.sqrt(w)) @ V.conj().T
    mats = [R @ np.array([[complex(x) for x in row] for row in M], dtype=complex) @ R for M in Ms]
    real = all(np.allclose(A.imag, 0, atol=1e-14) for A in mats)
    if real:
        mats = [A.real.astype(complex) for A in mats]
    return Pencil(mats, None, base, k)


def evaluate(P: Pencil, a: Sequence):
    return P.evaluate(a)


# -- determinants -------------------------------------------------------------------


def _entry_polys(P: Pencil) -> list[list[Poly]]:
    n, k = P.nvars, P.size
    mats = P.mats if P.exact else P.float_mats()
    one = Fraction(1) if P.exact else 1.0
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            terms = {}
            if i == j:
                terms[(0,) * n] = one
            for l, A in enumerate(mats):
                c = A[i, j] if P.exact else complex(A[i, j])
                if not P.exact and c.imag == 0:
                    c = c.real
                if c != 0:
                    e = [0] * n
                    e[l] = 1
                    terms[tuple(e)] = c
            row.append(Poly(n, terms, P.base))
        rows.append(row)
    return rows


def det_poly(P: Pencil, cap: int = K_EXACT) -> Poly:
    """det(I + sum x_i M_i) as a polynomial, by fraction-free elimination.

    Leading principal minors of a monic pencil have constant term 1, so
    the elimination never needs a pivot search.
    """
    k = P.size
    if k > cap:
        raise SizeCapError(f"size {k} exceeds the symbolic determinant cap {cap}; use verify_identity")
    if k == 0:
        return Poly.constant(1, P.nvars, P.base)
    E = _entry_polys(P)
    prev = Poly.constant(1, P.nvars, P.base)
    for c in range(k - 1):
        piv = E[c][c]
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                num = piv * E[i][j]
                if not E[i][c].is_zero and not E[c][j].is_zero:
                    num = num - E[i][c] * E[c][j]
                E[i][j] = divide_exact(num, prev, check=False)
        prev = piv
    det = E[k - 1][k - 1]
    return _realify(det, P.exact)


def _realify(p: Poly, exact: bool) -> Poly:
    if exact:
        if not p.is_real:
            raise ImaginaryResidueError("determinant has nonzero imaginary part; input is not hermitian")
        return p.real()
    coeffs = {e: complex(c) for e, c in p.terms.items()}
    scale = max((abs(c) for c in coeffs.values()), default=1.0)
    resid = max((abs(c.imag) for c in coeffs.values()), default=0.0)
    if resid > 1e-9 * max(1.0, scale):
        raise ImaginaryResidueError(f"imaginary residue {resid:.3e} in a float determinant")
    cleaned = {e: c.real for e, c in coeffs.items() if abs(c.real) > 1e-12 * scale}
    return Poly(p.nvars, cleaned, p.base)


@dataclass(frozen=True)
class IdentityVerdict:
    passed: bool
    mode: str  # "proved" | "sampled" | "float-sampled"
    points: int
    mismatches: int
    seed: int | None
    max_error: float = 0.0
    note: str = ""

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        state = "pass" if self.passed else "fail"
        return f"{state} ({self.mode}, {self.points} points, {self.mismatches} mismatches)"


def verify_identity(
    P: Pencil,
    target: Poly,
    r: int,
    trials: int = 200,
    seed: int | None = None,
    grid_cap: int = GRID_CAP,
) -> IdentityVerdict:
    """Check det(P) = target^r without expanding the determinant.

    With exact data and (k+1)^n <= grid_cap, agreement on the lattice
    {a in N^n : |a| <= k} is a proof: both sides have degree <= k and that
    lattice is unisolvent for such polynomials.  Otherwise ``trials``
    random points are compared (exactly when the data are exact).
    """
    if target.nvars != P.nvars:
        raise DimensionError(f"target has {target.nvars} variables, pencil has {P.nvars}")
    if r < 1:
        raise PreconditionError("r must be at least 1")
    if target.const_term != 1:
        raise PreconditionError("target must satisfy target(0) = 1")
    seed = resolve_seed(seed)
    k, n, d = P.size, P.nvars, target.degree
    if r * d > k:
        return IdentityVerdict(False, "proved", 0, 1, seed, float("inf"), f"degree {r * d} exceeds size {k}")
    if P.exact and target.is_exact:
        if n == 0:
            return IdentityVerdict(True, "proved", 1, 0, seed)
        if (k + 1) ** n <= grid_cap:
            points = list(all_monomials(n, k))
            return _exact_compare(P, target, r, points, 1, "proved", seed)
        rng = np.random.default_rng(seed)
        s = 12
        points = [tuple(int(v) for v in rng.integers(-3 * s, 3 * s + 1, size=n)) for _ in range(trials)]
        return _exact_compare(P, target, r, points, s, "sampled", seed)
    return _float_compare(P, target, r, trials, seed)


def _exact_compare(P, target, r, points, s, mode, seed) -> IdentityVerdict:
    comps, D, m = batch_det(list(P.mats), points, scale=s)
    k = P.size
    bad = 0
    for idx, z in enumerate(points):
        a = [Fraction(v, s) for v in z]
        expected = simplify((s * D) ** k * target(a) ** r)
        got = component_value(comps, idx, m)
        if got != expected:
            bad += 1
    if bad:
        return IdentityVerdict(False, mode, len(points), bad, seed, float("nan"))
    return IdentityVerdict(True, mode, len(points), 0, seed)


def _float_compare(P, target, r, trials, seed) -> IdentityVerdict:
    rng = np.random.default_rng(seed)
    mats = P.float_mats()
    tf = target.to_float()
    bad, worst = 0, 0.0
    for _ in range(trials):
        a = rng.standard_normal(P.nvars) / max(1.0, np.sqrt(P.nvars))
        W = np.eye(P.size, dtype=complex)
        for v, A in zip(a, mats):
            W += v * A
        lhs = complex(np.linalg.det(W))
        rhs = complex(tf(list(a))) ** r
        err = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
        worst = max(worst, err)
        if err > TAU_ID:
            bad += 1
    return IdentityVerdict(bad == 0, "float-sampled", trials, bad, seed, worst)


# -- spectrahedra -------------------------------------------------------------------


def membership(P: Pencil, a: Sequence) -> bool:
    """Whether I + sum a_i M_i is positive semidefinite."""
    M = P.evaluate(a)
    if M.dtype == object:
        return is_psd_exact(M.tolist())
    w = np.linalg.eigvalsh(M)
    return bool(w.min() >= -TAU_PSD * max(1.0, float(np.max(np.abs(M)))))


def float_rank(M, tol: float = TAU_RANK) -> int:
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def matrix_rank(M) -> int:
    M = np.asarray(M)
    if M.dtype == object:
        return rank_exact(M.tolist())
    return float_rank(M)


@dataclass(frozen=True)
class CorrespondenceReport:
    eigen_side: tuple  # sorted -1/lambda over nonzero eigenvalues
    root_side: tuple  # sorted real roots with multiplicity
    zero_eigenvalues: int
    degree_drop: int  # k - deg(p_a)
    complex_pairs: int
    max_mismatch: float
    passed: bool


def eigen_root_check(P: Pencil, a: Sequence, target: Poly | None = None) -> CorrespondenceReport:
    """Compare -1/lambda over eigenvalues of sum a_i M_i with the roots of p_a.

    ``target`` (det P, if already known) skips the symbolic determinant.
    """
    a = _coerce_point(a)
    if len(a) != P.nvars:
        raise DimensionError(f"point has length {len(a)}, expected {P.nvars}")
    if target is not None:
        p = target
    elif P.size <= K_EXACT:
        p = det_poly(P)
    else:
        raise SizeCapError("pencil too large for a symbolic determinant and no target given")
    W = P.combination(a)
    W = np.array([[complex(x) for x in row] for row in W], dtype=complex) if W.dtype == object else W
    lam = np.linalg.eigvalsh(W) if W.size else np.zeros(0)
    scale = max(1.0, float(np.max(np.abs(lam)))) if lam.size else 1.0
    nonzero = [float(x) for x in lam if abs(x) > TAU_RANK * scale]
    zeros = len(lam) - len(nonzero)
    eig_side = tuple(sorted(-1.0 / x for x in nonzero))
    u = restrict(p, a)
    prof = real_roots(u, ambient_degree=P.size) if not u.is_zero else None
    roots = tuple(sorted(prof.expanded())) if prof else ()
    pairs = prof.complex_pair_count if prof else 0
    drop = P.size - u.degree
    if len(roots) != len(eig_side) or pairs:
        return CorrespondenceReport(eig_side, roots, zeros, drop, pairs, float("inf"), False)
    worst = 0.0
    for x, y in zip(eig_side, roots):
        worst = max(worst, abs(x - y) / max(abs(x), abs(y)))
    ok = worst <= TAU_CORR and zeros == drop
    return CorrespondenceReport(eig_side, roots, zeros, drop, pairs, worst, ok)


# -- doubling -------------------------------------------------------------------------


def double_to_symmetric(P: Pencil) -> Pencil:
    """Real symmetric pencil [[R, S], [-S, R]] where M_i = R_i + i S_i."""
    k = P.size
    mats = []
    for A in P.mats:
        if P.exact:
            R = np.vectorize(real_part, otypes=[object])(A) if A.size else A
            S = np.vectorize(imag_part, otypes=[object])(A) if A.size else A
            B = np.full((2 * k, 2 * k), Fraction(0), dtype=object)
        else:
            R, S = A.real, A.imag
            B = np.zeros((2 * k, 2 * k))
        B[:k, :k] = R
        B[:k, k:] = S
        B[k:, :k] = -S
        B[k:, k:] = R
        mats.append(B if P.exact else B.astype(complex))
    return Pencil(mats, "symmetric", P.base, 2 * k)


# -- random instances ------------------------------------------------------------------


def random_unitary(k: int, rng, real: bool = False) -> np.ndarray:
    Z = rng.standard_normal((k, k)) if real else rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    Qm, R = np.linalg.qr(Z)
    d = np.diag(R)
    phases = d / np.where(np.abs(d) == 0, 1, np.abs(d))
    return (Qm * phases).astype(complex)


def random_hermitian(k: int, rng, real: bool = False) -> np.ndarray:
    Z = rng.standard_normal((k, k))
    if not real:
        Z = Z + 1j * rng.standard_normal((k, k))
    return ((Z + Z.conj().T) / 2).astype(complex)


def random_pencil(n: int, k: int, rng, real: bool = False) -> Pencil:
    return Pencil([random_hermitian(k, rng, real) for _ in range(n)], None, 1, k)


def random_exact_pencil(n: int, k: int, rng, bound: int = 4, imag: bool = True) -> Pencil:
    """Hermitian pencil with small Gaussian-rational entries."""
    mats = []
    for _ in range(n):
        A = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            A[i][i] = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 3)))
            for j in range(i + 1, k):
                re = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 3)))
                im = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 3))) if imag else 0
                A[i][j] = simplify(Num(re, 0, im))
                A[j][i] = simplify(Num(re, 0, -im))
        mats.append(A)
    return Pencil(mats, None, 1, k)


def pad_and_scramble(P: Pencil, z: int, rng) -> tuple[Pencil, np.ndarray]:
    """Append a z x z zero block and conjugate by a random unitary."""
    padded = P.padded(z)
    real = P.symmetry == "symmetric"
    U = random_unitary(padded.size, rng, real=real)
    return padded.to_float().conjugated(U), U
