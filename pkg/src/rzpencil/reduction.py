"""Shrinking a pencil without changing its determinant.

Two moves are available: dropping the common kernel of all coefficient
matrices, and splitting off a zero block once some combination of the
coefficients is positive semidefinite of full generic rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BlockStructureError, ConeNotWitnessed
from .exact import nullspace_exact, rank_exact
from .numbers import imag_part, real_part
from .pencil import K_EXACT, TAU_ID, TAU_RANK, Pencil, det_poly, float_rank
from .realzero import TAU_PSD, sample_directions
from .seeding import resolve_seed

TAU_BLOCK = 1e-8
N_CONE = 256


@dataclass(frozen=True)
class ReductionResult:
    pencil: Pencil
    Q: np.ndarray  # unitary; kept coordinates first
    removed: int
    direction: tuple | None = None  # cone witness, when one was used
    det_preserved: bool = True

    @property
    def size(self) -> int:
        return self.pencil.size


def _identity(P: Pencil) -> np.ndarray:
    if P.exact:
        Q = np.full((P.size, P.size), Fraction(0), dtype=object)
        for i in range(P.size):
            Q[i, i] = Fraction(1)
        return Q
    return np.eye(P.size, dtype=complex)


def _dets_agree(P: Pencil, R: Pencil, seed: int, trials: int = 12) -> bool:
    rng = np.random.default_rng(seed)
    A, B = P.float_mats(), R.float_mats()
    for _ in range(trials):
        a = rng.standard_normal(P.nvars) / max(1.0, np.sqrt(P.nvars))
        d1 = np.linalg.det(np.eye(P.size) + sum((v * M for v, M in zip(a, A)), np.zeros((P.size,) * 2)))
        d2 = np.linalg.det(np.eye(R.size) + sum((v * M for v, M in zip(a, B)), np.zeros((R.size,) * 2)))
        if abs(d1 - d2) > 1e-8 * max(1.0, abs(d1), abs(d2)):
            return False
    return True


def common_kernel_reduce(P: Pencil, seed: int | None = None) -> ReductionResult:
    """Remove the joint kernel of M_1..M_n (the stacked map's nullspace)."""
    seed = resolve_seed(seed)
    k = P.size
    if P.nvars == 0:
        return ReductionResult(P.block(0), _identity(P), k)
    if P.exact:
        stacked = [list(row) for A in P.mats for row in A]
        basis = nullspace_exact(stacked, k)
        if not basis:
            return ReductionResult(P, _identity(P), 0)
        zero_cols = [j for j in range(k) if all(A[i, j] == 0 for A in P.mats for i in range(k))]
        if len(zero_cols) == len(basis):
            keep = [j for j in range(k) if j not in zero_cols]
            perm = keep + zero_cols
            Q = np.full((k, k), Fraction(0), dtype=object)
            for col, j in enumerate(perm):
                Q[j, col] = Fraction(1)
            reduced = P.conjugated(Q).block(len(keep))
            return ReductionResult(reduced, Q, len(zero_cols))
    S = np.vstack(P.float_mats())
    _, s, Vh = np.linalg.svd(S)
    r = int(np.sum(s > TAU_RANK * s[0])) if s.size and s[0] > 0 else 0
    if r == k:
        return ReductionResult(P, _identity(P), 0)
    Q = Vh.conj().T
    reduced = P.to_float().conjugated(Q).block(r)
    return ReductionResult(reduced, Q, k - r, None, _dets_agree(P, reduced, seed))


def generic_rank(P: Pencil, trials: int = 16, seed: int | None = None) -> int:
    """Largest rank of sum a_i M_i over sampled real directions."""
    rng = np.random.default_rng(resolve_seed(seed))
    mats = P.float_mats()
    best = 0
    for _ in range(trials):
        a = rng.standard_normal(P.nvars)
        W = sum((v * M for v, M in zip(a, mats)), np.zeros((P.size, P.size), complex))
        best = max(best, float_rank(W))
        if best == P.size:
            break
    return best


def _psd_rank(W: np.ndarray) -> tuple[bool, int, np.ndarray, np.ndarray]:
    w, V = np.linalg.eigh(W)
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    psd = bool(w.size == 0 or w.min() >= -TAU_PSD * scale)
    rank = int(np.sum(np.abs(w) > TAU_RANK * scale))
    return psd, rank, w, V


def cone_directions(n: int, hints: Sequence | None, count: int, seed: int):
    for h in hints or ():
        yield tuple(h)
    for i in range(n):
        for s in (1, -1):
            e = [0] * n
            e[i] = s
            yield tuple(e)
    yield from sample_directions(n, count, seed, include_structured=False)


def cone_reduce(
    P: Pencil, hints: Sequence | None = None, n_cone: int = N_CONE, seed: int | None = None
) -> ReductionResult:
    """Split off the zero block guaranteed by a PSD combination of generic rank."""
    seed = resolve_seed(seed)
    d = det_poly(P).degree if P.size <= K_EXACT else generic_rank(P, seed=seed)
    if d == P.size:
        return ReductionResult(P, _identity(P), 0)
    mats = P.float_mats()
    for a in cone_directions(P.nvars, hints, n_cone, seed):
        W = sum((float(v) * M for v, M in zip(a, mats)), np.zeros((P.size, P.size), complex))
        psd, rank, w, V = _psd_rank(W)
        if not (psd and rank == d):
            continue
        order = np.argsort(-w, kind="stable")
        Q = V[:, order]
        conj = P.to_float().conjugated(Q)
        resid = 0.0
        for A in conj.mats:
            scale = max(1.0, float(np.max(np.abs(A))))
            off = max(float(np.max(np.abs(A[:d, d:]), initial=0.0)), float(np.max(np.abs(A[d:, d:]), initial=0.0)))
            resid = max(resid, off / scale)
        if resid > TAU_BLOCK:
            raise BlockStructureError(
                f"off-block residue {resid:.3e} after splitting along {a}; the rank hypothesis fails"
            )
        reduced = conj.block(d)
        return ReductionResult(reduced, Q, P.size - d, tuple(a), _dets_agree(P, reduced, seed))
    raise ConeNotWitnessed(
        f"cone condition not witnessed: no PSD combination of rank {d} among the searched directions"
    )


@dataclass(frozen=True)
class RankReport:
    max_rank: int
    generator_ranks: tuple
    independent: bool
    span_dimension: int
    det_degree: int | None
    matches_degree: bool | None
    trials: int
    seed: int


def _real_coordinates(A) -> list:
    if A.dtype == object:
        return [real_part(x) for x in A.ravel()] + [imag_part(x) for x in A.ravel()]
    return list(A.real.ravel()) + list(A.imag.ravel())


def rank_profile(P: Pencil, trials: int = 64, seed: int | None = None) -> RankReport:
    """Ranks of the generators, their real span, and the generic combination rank."""
    seed = resolve_seed(seed)
    if P.exact:
        gen = tuple(rank_exact(A.tolist()) for A in P.mats)
        span = rank_exact([_real_coordinates(A) for A in P.mats]) if P.nvars else 0
    else:
        gen = tuple(float_rank(A) for A in P.mats)
        span = float_rank(np.array([_real_coordinates(A) for A in P.mats])) if P.nvars else 0
    maxr = generic_rank(P, trials, seed) if P.nvars else 0
    deg = det_poly(P).degree if P.size <= K_EXACT else None
    return RankReport(maxr, gen, span == P.nvars, span, deg, None if deg is None else maxr == deg, trials, seed)


__all__ = [
    "ReductionResult",
    "RankReport",
    "common_kernel_reduce",
    "cone_reduce",
    "rank_profile",
    "generic_rank",
    "TAU_BLOCK",
    "TAU_ID",
]
