"""Exact linear algebra over Q(sqrt(m))(i), plus a batched integer determinant.

Matrices are nested lists (or object arrays) of ``Fraction``/``Num``.  The
batched determinant evaluates ``det(s*I + sum a_l M_l)`` at many integer
points at once with fraction-free elimination on integer component arrays,
which is what makes exact identity proofs affordable.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .numbers import Num, conj, is_exact, radical_of, sign, simplify


def _rows(A) -> list[list]:
    return [[simplify(x) for x in row] for row in A]


def matmul_exact(A, B) -> list[list]:
    A, B = _rows(A), _rows(B)
    inner = len(B)
    return [
        [simplify(sum((A[i][t] * B[t][j] for t in range(inner)), Fraction(0))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def conj_transpose(A) -> list[list]:
    A = _rows(A)
    return [[conj(A[i][j]) for i in range(len(A))] for j in range(len(A[0]))] if A else []


def rref(A):
    """Reduced row echelon form and pivot columns."""
    R = _rows(A)
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [simplify(x * inv) for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [simplify(x - f * y) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def rank_exact(A) -> int:
    return len(rref(A)[1])


def nullspace_exact(A, ncols: int | None = None) -> list[list]:
    """Basis of {v : A v = 0}, one vector per free column."""
    R, pivots = rref(A)
    if ncols is None:
        ncols = len(R[0]) if R else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = simplify(-row[f])
        basis.append(v)
    return basis


def det_exact(A) -> Fraction | Num:
    M = _rows(A)
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        piv = M[c][c]
        det = det * piv
        inv = 1 / piv
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [simplify(x - f * y) for x, y in zip(M[i], M[c])]
    return simplify(det)


def inverse_exact(A) -> list[list]:
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_rows(A))]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def is_psd_exact(A) -> bool:
    """Hermitian PSD test by symmetric pivoting (LDL* with Schur complements)."""
    M = _rows(A)
    while M:
        n = len(M)
        diag = [M[i][i] for i in range(n)]
        if any(sign(x) < 0 for x in diag):
            return False
        p = next((i for i in range(n) if diag[i] != 0), None)
        if p is None:
            return all(x == 0 for row in M for x in row)
        piv = diag[p]
        col = [M[i][p] for i in range(n)]
        keep = [i for i in range(n) if i != p]
        M = [[simplify(M[i][j] - col[i] * conj(col[j]) / piv) for j in keep] for i in keep]
    return True


def is_exact_matrix(A) -> bool:
    return all(is_exact(x) for row in A for x in row)


# -- batched integer determinants -----------------------------------------------

# basis 1, s, i, s*i with s^2 = m: product table (target, coefficient kind)
_TABLE = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, "m"), (1, 2): (3, 1), (1, 3): (2, "m"),
    (2, 0): (2, 1), (2, 1): (3, 1), (2, 2): (0, -1), (2, 3): (1, -1),
    (3, 0): (3, 1), (3, 1): (2, "m"), (3, 2): (1, -1), (3, 3): (0, "-m"),
}  # fmt: skip


def _bmul(x, y, m):
    out = [None] * 4
    for u in range(4):
        if x[u] is None:
            continue
        for v in range(4):
            if y[v] is None:
                continue
            w, c = _TABLE[(u, v)]
            term = x[u] * y[v]
            c = {"m": m, "-m": -m}.get(c, c)
            if c != 1:
                term = term * c
            out[w] = term if out[w] is None else out[w] + term
    return out


def _bsub(x, y):
    out = []
    for a, b in zip(x, y):
        if b is None:
            out.append(a)
        elif a is None:
            out.append(-b)
        else:
            out.append(a - b)
    return out


def _neg_parts(x, parts):
    return [(-c if (c is not None and j in parts) else c) for j, c in enumerate(x)]


def _bdiv(x, y, m):
    """Exact quotient x / y in Z[sqrt(m)][i] (the quotient is known to be integral)."""
    yb = _neg_parts(y, (2, 3))
    w = _bmul(y, yb, m)[:2] + [None, None]
    wp = _neg_parts(w, (1,))
    norm = _bmul(w, wp, m)[0]
    num = _bmul(_bmul(x, yb, m), wp, m)
    out = []
    for c in num:
        if c is None:
            out.append(None)
            continue
        q = c // norm
        if np.any(q * norm != c):
            raise ArithmeticError("inexact division in fraction-free elimination")
        out.append(q)
    return out


def _components(x):
    x = Num.lift(x) if not isinstance(x, Num) else x
    return x.a, x.b, x.c, x.d


def integer_pencil(mats) -> tuple[list[list], int, int]:
    """Scale exact matrices to integer component arrays.

    Returns (per-matrix list of 4 component int arrays or None, D, m) with
    D the common denominator, so D*M_l has entries in Z[sqrt(m)][i].
    """
    m = 1
    dens = 1
    for M in mats:
        for x in np.asarray(M, dtype=object).ravel():
            r = radical_of(x)
            if r != 1:
                m = r
            for q in _components(x):
                dens = math.lcm(dens, Fraction(q).denominator)
    out = []
    for M in mats:
        A = np.asarray(M, dtype=object)
        comps = [np.empty(A.shape, dtype=object) for _ in range(4)]
        for idx, x in np.ndenumerate(A):
            for t, q in enumerate(_components(x)):
                comps[t][idx] = int(Fraction(q) * dens)
        out.append(comps)
    return out, dens, m


def batch_det(mats, points, scale: int = 1, chunk: int = 1024):
    """det(scale*D*I + sum_l a_l*D*M_l) for each integer point a.

    Returns (list of 4 integer object arrays of length len(points), D, m).
    """
    ints, D, m = integer_pencil(mats)
    k = np.asarray(mats[0], dtype=object).shape[0] if mats else 0
    used = [any(np.any(c[t] != 0) for c in ints) for t in range(4)]
    used[0] = True
    if sum(used[1:]) > 1 or (used[3] and not (used[1] and used[2]) and any(used[1:3])):
        used = [True] * 4
    pts = np.asarray(points, dtype=object).reshape(len(points), len(mats))
    results = [[] for _ in range(4)]
    for start in range(0, len(pts), chunk):
        block = pts[start : start + chunk]
        dets = _det_chunk(ints, used, block, scale * D, k, m)
        for t in range(4):
            results[t].append(dets[t])
    joined = [np.concatenate(r) if r and r[0] is not None else None for r in results]
    return joined, D, m


def _det_chunk(ints, used, pts, diag, k, m):
    P = len(pts)
    if k == 0:
        one = np.ones(P, dtype=object)
        return [one, None, None, None]
    A = []
    for t in range(4):
        if not used[t]:
            A.append(None)
            continue
        acc = np.zeros((P, k, k), dtype=object)
        if t == 0:
            acc += np.eye(k, dtype=int).astype(object) * diag
        for l, comps in enumerate(ints):
            acc += pts[:, l].reshape(P, 1, 1) * comps[t][None, :, :]
        A.append(acc)
    ar = np.arange(P)
    sgn = np.ones(P, dtype=object)
    dead = np.zeros(P, dtype=bool)
    prev = [np.ones((P,), dtype=object)] + [None] * 3
    for j in range(k):
        nz = np.zeros((P, k - j), dtype=bool)
        for c in A:
            if c is not None:
                nz |= c[:, j:, j] != 0
        has = nz.any(axis=1)
        newly = ~has & ~dead
        if newly.any():
            dead |= newly
            for t, c in enumerate(A):
                if c is not None:
                    c[newly, j:, j:] = np.eye(k - j, dtype=int).astype(object) if t == 0 else 0
            for t in range(4):
                if prev[t] is not None:
                    prev[t][newly] = 1 if t == 0 else 0
            nz[newly, 0] = True
        piv_row = nz.argmax(axis=1) + j
        swap = piv_row != j
        if swap.any():
            idx = ar[swap]
            src = piv_row[swap]
            for c in A:
                if c is not None:
                    tmp = c[idx, src, :].copy()
                    c[idx, src, :] = c[idx, j, :]
                    c[idx, j, :] = tmp
            sgn[swap] = -sgn[swap]
        if j == k - 1:
            break
        piv = [None if c is None else c[:, j, j].reshape(P, 1, 1) for c in A]
        col = [None if c is None else c[:, j + 1 :, j].reshape(P, k - j - 1, 1) for c in A]
        row = [None if c is None else c[:, j, j + 1 :].reshape(P, 1, k - j - 1) for c in A]
        blk = [None if c is None else c[:, j + 1 :, j + 1 :] for c in A]
        num = _bsub(_bmul(piv, blk, m), _bmul(col, row, m))
        den = [None if c is None else c.reshape(P, 1, 1) for c in prev]
        new = _bdiv(num, den, m)
        for t, c in enumerate(A):
            if c is not None:
                c[:, j + 1 :, j + 1 :] = 0 if new[t] is None else new[t]
        prev = [None if c is None else c[:, j, j].copy() for c in A]
    out = []
    for t, c in enumerate(A):
        if c is None:
            out.append(None)
            continue
        v = c[:, k - 1, k - 1] * sgn
        v[dead] = 0
        out.append(v)
    return out


def component_value(comps, idx, m):
    """Exact scalar at position ``idx`` of batched component arrays."""
    vals = [0 if c is None else int(c[idx]) for c in comps]
    return simplify(Num(vals[0], vals[1], vals[2], vals[3], m))
