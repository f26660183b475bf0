"""Real-rootedness of restrictions, the real zero property, rigidly convex sets.

Exact polynomials (rational or one quadratic radical) are handled with Sturm
sequences and square-free decomposition, so every verdict on them is a
proof about the sampled directions.  Float polynomials fall back to
companion-matrix roots with the tolerances below.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionError, PreconditionError
from .exact import is_psd_exact, rank_exact
from .numbers import abs_upper_bound, is_exact, rational_sqrt, sign, simplify
from .polynomial import Poly, UniPoly, homogenize, restrict, uni_divmod, uni_gcd
from .seeding import resolve_seed

TAU_ROOT = 1e-8
TAU_PSD = 1e-9
TAU_SEP = 1e-7
DEFAULT_SAMPLES = 512


# -- Sturm machinery -----------------------------------------------------------


def sturm_sequence(f: UniPoly) -> list[UniPoly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero:
        seq.append(-uni_divmod(seq[-2], seq[-1])[1])
    return seq[:-1]


def _variations(signs) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _sign_fn(f: UniPoly):
    """Fast exact sign of f at rational points.

    Rational coefficients are cleared to integers and the value is
    evaluated as den^deg * f(num/den) with integer arithmetic only.
    """
    if not all(isinstance(c, Fraction) for c in f.coeffs):
        return lambda t: sign(f(t))
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    d = len(ints) - 1

    def at(t) -> int:
        t = Fraction(t)
        n, q = t.numerator, t.denominator
        acc, qpow = ints[d], 1
        for c in reversed(ints[:d]):
            qpow *= q
            acc = acc * n + c * qpow
        return (acc > 0) - (acc < 0)

    return at


def _signs_at(fns, t) -> list[int]:
    return [fn(t) for fn in fns]


def _signs_at_inf(seq, positive: bool) -> list[int]:
    out = []
    for g in seq:
        s = sign(g.lead)
        if not positive and g.degree % 2:
            s = -s
        out.append(s)
    return out


def count_distinct_real(f: UniPoly) -> int:
    """Number of distinct real roots of an exact polynomial."""
    if f.degree <= 0:
        return 0
    seq = sturm_sequence(f)
    return _variations(_signs_at_inf(seq, False)) - _variations(_signs_at_inf(seq, True))


def count_in_interval(f: UniPoly, lo, hi) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    if f.degree <= 0:
        return 0
    fns = [_sign_fn(g) for g in sturm_sequence(squarefree_part(f))]
    return _variations(_signs_at(fns, lo)) - _variations(_signs_at(fns, hi))


def squarefree_part(f: UniPoly) -> UniPoly:
    g = uni_gcd(f, f.derivative())
    if g.degree <= 0:
        return f
    return uni_divmod(f, g)[0]


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: f = lead * prod g_i^i with g_i square-free, coprime."""
    out = []
    if f.degree <= 0:
        return out
    df = f.derivative()
    a = uni_gcd(f, df)
    b = uni_divmod(f, a)[0]
    c = uni_divmod(df, a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = uni_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = uni_divmod(b, a)[0]
        c = uni_divmod(d, a)[0]
        d = c - b.derivative()
        i += 1
    return out


def _root_bound(f: UniPoly) -> Fraction:
    """A power of two exceeding every root's absolute value (Cauchy)."""
    g = f.monic()
    cauchy = 1 + max((abs_upper_bound(c) for c in g.coeffs[:-1]), default=Fraction(0))
    return Fraction(2) ** max(0, math.ceil(math.log2(cauchy)) + 1)


_SPLITS = (Fraction(1, 2), Fraction(3, 8), Fraction(5, 8), Fraction(1, 4), Fraction(3, 4), Fraction(7, 16))


def isolate_real_roots(f: UniPoly, rel_eps: float = 2.0**-56) -> list[float]:
    """Approximations of the distinct real roots of a square-free exact f."""
    if f.degree <= 0:
        return []
    fns = [_sign_fn(g) for g in sturm_sequence(f)]
    fsign = fns[0]
    bound = _root_bound(f)
    roots: list[float] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(_signs_at(fns, lo)) - _variations(_signs_at(fns, hi))
        if n == 0:
            continue
        if n == 1:
            roots.append(_refine(fsign, lo, hi, rel_eps))
            continue
        mid = next((lo + (hi - lo) * s for s in _SPLITS if fsign(lo + (hi - lo) * s) != 0), None)
        if mid is None:
            mid = lo + (hi - lo) / 2
            roots.append(float(mid))
            eps = (hi - lo) / 2**20
            while fsign(mid - eps) == 0 or fsign(mid + eps) == 0:
                eps /= 2
            stack.extend([(lo, mid - eps), (mid + eps, hi)])
        else:
            stack.extend([(lo, mid), (mid, hi)])
    return sorted(roots)


def _refine(fsign, lo, hi, rel_eps: float) -> float:
    # exactly one root in (lo, hi]; hi may be the root itself
    if fsign(hi) == 0:
        return float(hi)
    s_lo = fsign(lo)
    while hi - lo > rel_eps * max(1, abs(lo), abs(hi)):
        mid = (lo + hi) / 2
        s = fsign(mid)
        if s == 0:
            return float(mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def is_real_rooted(u: UniPoly) -> bool:
    """All roots real (exact Sturm count, or float tolerance)."""
    if u.degree <= 0:
        return True
    if u.is_exact:
        g = squarefree_part(u)
        return count_distinct_real(g) == g.degree
    return real_roots(u).complex_pair_count == 0


# -- root profiles ---------------------------------------------------------------


@dataclass(frozen=True)
class RootProfile:
    real_roots: tuple  # ((value, multiplicity), ...) sorted by value
    complex_pair_count: int
    degree_drop: int
    method: str  # "exact-sturm" | "float-eig"

    @property
    def real_count(self) -> int:
        return sum(m for _, m in self.real_roots)

    @property
    def is_real_rooted(self) -> bool:
        return self.complex_pair_count == 0

    def expanded(self) -> list[float]:
        return [v for v, m in self.real_roots for _ in range(m)]


def real_roots(u: UniPoly, ambient_degree: int | None = None) -> RootProfile:
    """Real roots with multiplicities plus bookkeeping of the rest."""
    if u.is_zero:
        raise PreconditionError("real_roots of the zero polynomial")
    d = u.degree if ambient_degree is None else ambient_degree
    if d < u.degree:
        raise PreconditionError("ambient degree below polynomial degree")
    if u.is_exact:
        found = []
        for g, mult in squarefree_decomposition(u):
            found.extend((r, mult) for r in isolate_real_roots(g))
        found.sort()
        nreal = sum(m for _, m in found)
        return RootProfile(tuple(found), (u.degree - nreal) // 2, d - u.degree, "exact-sturm")
    roots = np.roots([complex(c) for c in reversed(u.coeffs)]) if u.degree > 0 else []
    real_vals, npairs = [], 0
    for r in roots:
        if abs(r.imag) <= TAU_ROOT * (1 + abs(r)):
            real_vals.append(float(r.real))
        elif r.imag > 0:
            npairs += 1
    real_vals.sort()
    grouped: list[list] = []
    for v in real_vals:
        if grouped and abs(v - grouped[-1][0]) <= 1e-6 * (1 + abs(v)):
            g = grouped[-1]
            g[0] = (g[0] * g[1] + v) / (g[1] + 1)
            g[1] += 1
        else:
            grouped.append([v, 1])
    nreal = len(real_vals)
    npairs = (u.degree - nreal) // 2
    return RootProfile(tuple((v, m) for v, m in grouped), npairs, d - u.degree, "float-eig")


# -- real zero property ------------------------------------------------------------


@dataclass(frozen=True)
class RzVerdict:
    is_rz: bool
    witness_direction: tuple | None
    mode: str  # "exact" | "sampled"
    seed: int | None = None
    samples: int = 0
    strategy: str = "sampled"


def _check_normalized(p: Poly):
    if p.const_term != 1:
        raise PreconditionError("real zero tests need p(0) = 1")


def _rationalize(v, den=1000) -> tuple:
    return tuple(Fraction(float(x)).limit_denominator(den) for x in v)


def sample_directions(n: int, count: int, seed: int, include_structured: bool = True):
    """Coordinate axes, sign patterns (up to n = 12), then seeded sphere points."""
    if include_structured:
        for i in range(n):
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            yield tuple(e)
        if n <= 12:
            for signs in itertools.product((1, -1), repeat=n - 1):
                yield (Fraction(1),) + tuple(Fraction(s) for s in signs)
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < count:
        v = rng.standard_normal(n)
        nv = np.linalg.norm(v)
        if nv == 0:
            continue
        a = _rationalize(v / nv)
        if all(x == 0 for x in a):
            continue
        produced += 1
        yield a


def is_real_zero(
    p: Poly, strategy: str = "auto", samples: int = DEFAULT_SAMPLES, seed: int | None = None
) -> RzVerdict:
    """Decide (quadratic) or semidecide (sampled) the real zero property."""
    _check_normalized(p)
    seed = resolve_seed(seed)
    if p.degree <= 1:
        return RzVerdict(True, None, "exact", seed, 0, "linear")
    if strategy == "auto":
        strategy = "quadratic" if p.degree == 2 and p.is_real else "sampled"
    if strategy == "quadratic":
        if p.degree != 2:
            raise PreconditionError("quadratic strategy needs degree 2")
        q = quadratic_form(p)
        if quadratic_rz_check(q):
            return RzVerdict(True, None, "exact" if q.exact else "float", seed, 0, "quadratic")
        return RzVerdict(False, _quadratic_witness(p, q, seed), "exact", seed, 0, "quadratic")
    if strategy != "sampled":
        raise PreconditionError(f"unknown strategy {strategy!r}")
    count = 0
    for a in sample_directions(p.nvars, samples, seed):
        count += 1
        u = restrict(p, a)
        if not is_real_rooted(u):
            return RzVerdict(False, a, "sampled", seed, count, "sampled")
    return RzVerdict(True, None, "sampled", seed, count, "sampled")


def _quadratic_witness(p: Poly, q: "QuadraticData", seed: int) -> tuple:
    G = np.array([[float(complex(x).real) for x in row] for row in q.G])
    w, V = np.linalg.eigh(G)
    v = V[:, 0]
    for den in (10, 100, 10**4, 10**6, 10**9):
        a = _rationalize(v, den)
        if any(a) and not is_real_rooted(restrict(p, a)):
            return a
    for a in sample_directions(p.nvars, 4096, seed):
        if not is_real_rooted(restrict(p, a)):
            return a
    raise ArithmeticError("no witness direction found for a non-PSD quadratic")


def witness_holds(p: Poly, a) -> bool:
    """Re-check that restricting ``p`` to ``a`` has a nonreal root."""
    return not is_real_rooted(restrict(p, a))


def rigid_membership(p: Poly, a: Sequence) -> bool:
    """Whether ``a`` lies in the rigidly convex set: no root of t -> p(t a) in [0, 1)."""
    _check_normalized(p)
    if len(a) != p.nvars:
        raise DimensionError(f"point has length {len(a)}, expected {p.nvars}")
    u = restrict(p, a)
    if u.degree <= 0:
        return True
    if u.is_exact:
        # p(0) = 1, so [0, 1) = (0, 1); Sturm counts (0, 1], remove a root at 1
        n = count_in_interval(u, Fraction(0), Fraction(1))
        if u(Fraction(1)) == 0:
            n -= 1
        return n == 0
    prof = real_roots(u)
    return not any(0 <= v < 1 - TAU_ROOT * (1 + abs(v)) for v, _ in prof.real_roots)


def positive_ray_free(p: Poly, a: Sequence) -> bool:
    """t -> p(t a) has full degree and no roots in [0, inf): an open-cone certificate."""
    u = restrict(p, a)
    if u.degree != p.degree:
        return False
    if not u.is_exact:
        return all(v < -TAU_ROOT for v in real_roots(u).expanded())
    seq = sturm_sequence(squarefree_part(u))
    at_zero = _signs_at([_sign_fn(g) for g in seq], Fraction(0))
    return _variations(at_zero) - _variations(_signs_at_inf(seq, True)) == 0


def simple_zeros_sampled(p: Poly, samples: int = 64, seed: int | None = None) -> bool:
    """Semidecide that t -> p^(-t, a) is square-free for sampled a != 0.

    Working with the homogenization covers the zeros at infinity, which
    show up as roots t = 0.
    """
    _check_normalized(p)
    seed = resolve_seed(seed)
    ph = homogenize(p)
    for a in sample_directions(p.nvars, samples, seed, include_structured=False):
        u = _homog_restriction(ph, a)
        if u.is_exact:
            if uni_gcd(u, u.derivative()).degree > 0:
                return False
        else:
            r = np.sort_complex(np.roots([complex(c) for c in reversed(u.coeffs)]))
            for i in range(len(r)):
                for j in range(i + 1, len(r)):
                    if abs(r[i] - r[j]) <= TAU_SEP:
                        return False
    return True


def _homog_restriction(ph: Poly, a) -> UniPoly:
    """t -> ph(-t, a_1, ..., a_n) for a homogenized polynomial ph."""
    d = ph.degree
    coeffs = [Fraction(0)] * (d + 1)
    for e, c in ph.terms.items():
        t = c * (-1) ** e[0]
        for j, v in enumerate(e[1:]):
            if v:
                t = t * a[j] ** v
        coeffs[e[0]] = coeffs[e[0]] + t
    return UniPoly(coeffs)


def homogenized_restriction(p: Poly, a) -> UniPoly:
    """t -> p^(-t, a) where p^ is the usual homogenization of p."""
    return _homog_restriction(homogenize(p), list(a))


# -- quadratic polynomials -------------------------------------------------------


@dataclass(frozen=True)
class QuadraticData:
    """p(x) = x^T A x + b^T x + 1 with G = bb^T/4 - A and C = G^(1/2)."""

    A: tuple  # n x n nested tuples
    b: tuple
    G: tuple
    C: tuple | None  # None when G is not PSD
    exact: bool  # C computed exactly
    nvars: int = field(default=0)
    base: int = 1

    def as_poly(self) -> Poly:
        n = self.nvars
        terms = {(0,) * n: Fraction(1)}
        for i in range(n):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = self.b[i]
            for j in range(n):
                f = [0] * n
                f[i] += 1
                f[j] += 1
                f = tuple(f)
                terms[f] = terms.get(f, 0) + self.A[i][j]
        return Poly(n, terms, self.base)


def quadratic_form(p: Poly) -> QuadraticData:
    if p.degree != 2:
        raise PreconditionError("quadratic_form needs degree exactly 2")
    if p.const_term != 1:
        raise PreconditionError("quadratic_form needs p(0) = 1")
    if not p.is_real:
        raise PreconditionError("quadratic_form needs real coefficients")
    n = p.nvars
    zero = Fraction(0) if p.is_exact else 0.0
    A = [[zero] * n for _ in range(n)]
    b = [zero] * n
    for e, c in p.terms.items():
        idx = [j for j, v in enumerate(e) for _ in range(v)]
        if len(idx) == 1:
            b[idx[0]] = c
        elif len(idx) == 2:
            i, j = idx
            if i == j:
                A[i][i] = c
            else:
                A[i][j] = simplify(c / 2)
                A[j][i] = simplify(c / 2)
    G = [[simplify(b[i] * b[j] / 4 - A[i][j]) for j in range(n)] for i in range(n)]
    C, exact = _psd_sqrt(G)
    tup = lambda M: tuple(tuple(r) for r in M)  # noqa: E731
    return QuadraticData(tup(A), tuple(b), tup(G), None if C is None else tup(C), exact, n, p.base)


def _psd_sqrt(G):
    """Exact root when G is diagonal with square entries or has a rational root."""
    n = len(G)
    exact_in = all(is_exact(x) for row in G for x in row)
    if exact_in:
        diag = all(G[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        if diag:
            roots = [rational_sqrt(G[i][i]) for i in range(n)]
            if all(r is not None for r in roots):
                return [[roots[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)], True
    try:
        Gf = np.array([[complex(x).real for x in row] for row in G], dtype=float)
    except TypeError:
        return None, False
    if n == 0:
        return [], True
    w, V = np.linalg.eigh(Gf)
    tol = TAU_PSD * max(1.0, float(np.max(np.abs(Gf))))
    if w.min() < -tol:
        return None, False
    w = np.clip(w, 0, None)
    Cf = (V * np.sqrt(w)) @ V.T
    Cf = (Cf + Cf.T) / 2
    if exact_in:
        from .exact import is_psd_exact, matmul_exact

        for den in (1, 12, 10**3, 10**5):
            Cq = [[Fraction(float(Cf[i, j])).limit_denominator(den) for j in range(n)] for i in range(n)]
            if all(Cq[i][j] == Cq[j][i] for i in range(n) for j in range(n)):
                sq = matmul_exact(Cq, Cq)
                if all(sq[i][j] == G[i][j] for i in range(n) for j in range(n)) and is_psd_exact(Cq):
                    return Cq, True
    return Cf.tolist(), False


def quadratic_rz_check(q: QuadraticData) -> bool:
    """A quadratic p is RZ iff bb^T/4 - A is positive semidefinite."""
    G = [list(r) for r in q.G]
    if all(is_exact(x) for r in G for x in r):
        return is_psd_exact(G)
    Gf = np.array(G, dtype=float)
    if Gf.size == 0:
        return True
    tol = TAU_PSD * max(1.0, float(np.max(np.abs(Gf))))
    return bool(np.linalg.eigvalsh(Gf).min() >= -tol)


def no_full_line_quadratic(q: QuadraticData) -> bool:
    """For an RZ quadratic, S(p) contains a line iff G v = 0 and b^T v = 0 for some v != 0."""
    rows = [list(r) for r in q.G] + [list(q.b)]
    if all(is_exact(x) for r in rows for x in r):
        return rank_exact(rows) == q.nvars
    M = np.array(rows, dtype=float)
    s = np.linalg.svd(M, compute_uv=False)
    return bool(len(s) >= q.nvars and s[q.nvars - 1] > 1e-9 * max(1.0, s[0]))

