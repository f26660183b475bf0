from fractions import Fraction

import numpy as np
import pytest

from rzpencil import catalog
from rzpencil.errors import ConeNotWitnessed
from rzpencil.pencil import Pencil, det_poly, pad_and_scramble, random_exact_pencil
from rzpencil.reduction import common_kernel_reduce, cone_reduce, generic_rank, rank_profile


def test_coordinate_kernel_is_removed_exactly():
    rng = np.random.default_rng(5)
    for _ in range(6):
        P = random_exact_pencil(int(rng.integers(1, 4)), int(rng.integers(1, 4)), rng)
        R = common_kernel_reduce(P.padded(2), seed=1)
        assert R.pencil.exact and R.removed == 2
        assert R.pencil == P
        assert all(isinstance(x, Fraction) for x in R.Q.ravel())


def test_scrambled_kernel_uses_float_path():
    rng = np.random.default_rng(6)
    P = catalog.get("arrowhead_3")
    S, _ = pad_and_scramble(P, 3, rng)
    R = common_kernel_reduce(S, seed=1)
    assert not R.pencil.exact and R.removed == 3 and R.det_preserved
    Q = R.Q
    assert np.allclose(Q.conj().T @ Q, np.eye(S.size), atol=1e-12)


def test_no_kernel_means_no_change():
    P = catalog.get("bw5")
    R = common_kernel_reduce(P)
    assert R.removed == 0 and R.pencil is P


def test_full_degree_pencil_is_left_alone():
    P = catalog.get("p3-rep-1")
    R = cone_reduce(P, seed=1)
    assert R.removed == 0 and R.direction is None and R.pencil is P


def test_cone_split_uses_hint_first():
    base = catalog.get("ptilde3-rep")
    R = cone_reduce(base.padded(1), hints=[(1, 0, 0, 0)], seed=1)
    assert R.direction == (1, 0, 0, 0)
    assert R.size == 2 and R.removed == 1 and R.det_preserved


def test_cone_not_witnessed_without_psd_direction():
    # det = 1 - x1^2 has degree 2 < 3, but +-diag(1, -1, 0) is never PSD
    P = Pencil([[[1, 0, 0], [0, -1, 0], [0, 0, 0]]])
    assert det_poly(P).degree == 2
    with pytest.raises(ConeNotWitnessed):
        cone_reduce(P, seed=1)


def test_rank_profile():
    r = rank_profile(catalog.get("bw5"), seed=2)
    assert r.generator_ranks == (4,) * 5
    assert r.independent and r.span_dimension == 5
    assert r.max_rank == 4 and r.det_degree == 4 and r.matches_degree  # det = p_5^2
    a = rank_profile(catalog.get("arrowhead_3"), seed=2)
    assert a.max_rank == 2 and a.det_degree == 2 and a.matches_degree
    dup = Pencil([[[1, 0], [0, 0]], [[2, 0], [0, 0]]])
    assert not rank_profile(dup).independent


def test_generic_rank_of_float_pencil():
    rng = np.random.default_rng(0)
    S, _ = pad_and_scramble(catalog.get("p3-rep-1"), 2, rng)
    assert generic_rank(S, seed=3) == 2
