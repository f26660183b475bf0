import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rzpencil import catalog
from rzpencil.errors import PreconditionError
from rzpencil.obstruction import (
    TAGS,
    check_compact,
    compact_counterexample,
    consistency_flags,
    meshulam_alpha,
    min_size_bound,
    nonexistence_report,
    shifted_base,
)
from rzpencil.polynomial import evaluate, parse


def test_alpha_values():
    assert meshulam_alpha(3, 2) == 3
    assert meshulam_alpha(10, 2) == 10
    assert [meshulam_alpha(k, k) for k in range(1, 8)] == [math.comb(k + 1, 2) for k in range(1, 8)]
    with pytest.raises(PreconditionError):
        meshulam_alpha(2, 3)
    with pytest.raises(PreconditionError):
        meshulam_alpha(4, 0)


@given(st.integers(1, 40), st.integers(1, 40))
def test_alpha_is_monotone_and_bounded(k, d):
    if d > k:
        k, d = d, k
    a = meshulam_alpha(k, d)
    assert math.comb(d + 1, 2) <= a <= math.comb(k + 1, 2)
    assert meshulam_alpha(k + 1, d) >= a


def test_size_bounds():
    b = min_size_bound(4, 2, "symmetric")
    assert b.ceiling == 4 and b.value == 4 and b.tag == TAGS["symmetric-bound"]
    assert min_size_bound(7, 3, "symmetric").value == 6
    assert min_size_bound(3, 2, "symmetric") is None
    assert min_size_bound(50, 1, "symmetric") is None
    assert min_size_bound(4, 2, "hermitian") is None
    h = min_size_bound(11, 2, "hermitian")
    assert h.value == 3 and h.tag == TAGS["hermitian-bound"]
    with pytest.raises(PreconditionError):
        min_size_bound(3, 2, "real")
    with pytest.raises(PreconditionError):
        min_size_bound(0, 2, "symmetric")


def test_ball_in_two_variables_gives_nothing():
    r = nonexistence_report(catalog.get("p_2"), seed=1)
    assert r.hypotheses["cone"].status == "unverified"
    assert r.claims("symmetric") == {"no-conclusion"} == r.claims("hermitian")


def test_cone_and_spectrum_certificates():
    r = nonexistence_report(catalog.get("ptilde_4"), seed=1)
    assert r.hypotheses["cone"].status == "verified-exact"
    for kind in ("symmetric", "hermitian"):
        assert r.tags_for(kind) == {TAGS["cone"], TAGS["spectrum"]}
    assert r.base_polynomial is not None
    assert consistency_flags(r, power=1)
    assert not consistency_flags(r, power=2)


def test_ball_gets_a_size_bound_only():
    r = nonexistence_report(catalog.get("p_5"), seed=1)
    (c,) = [c for c in r.conclusions if c.kind == "symmetric"]
    assert c.claim == "size-lower-bound" and c.bound == 5
    assert not r.none_exists("hermitian")


def test_asserted_hypotheses_are_labelled():
    r = nonexistence_report(catalog.get("p_5"), assert_cone=True, seed=1)
    assert r.hypotheses["cone"].status == "asserted-by-caller"
    assert r.none_exists("symmetric")


def test_non_real_zero_input_is_refused():
    with pytest.raises(PreconditionError):
        nonexistence_report(parse("1 - x1^4 - x2^4"), seed=1)


def test_shifted_base():
    assert shifted_base(catalog.get("ptilde_3")) == catalog.get("p_3")
    assert shifted_base(catalog.get("p_3")) is None
    assert shifted_base(parse("1 + x1")) is None


@pytest.mark.parametrize("r", [Fraction(3, 2), Fraction(2), Fraction(10)])
def test_compact_example(r):
    q = compact_counterexample(catalog.get("ptilde_3"), r)
    assert evaluate(q, [0] * q.nvars) == 1
    c = check_compact(q, r, seed=1)
    assert c.real_zero and c.contained
    assert c.max_distance == pytest.approx(math.sqrt(r), rel=1e-9)


def test_compact_example_preconditions():
    with pytest.raises(PreconditionError):
        compact_counterexample(catalog.get("ptilde_3"), 1)
    with pytest.raises(PreconditionError):
        compact_counterexample(catalog.get("p_3"), 2)
