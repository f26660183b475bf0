import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rzpencil import catalog
from rzpencil.errors import FormatError
from rzpencil.formats import (
    Transcript,
    dump_pencil,
    dump_poly,
    load_pencil,
    load_poly,
    parse_transcript,
    read_pencil_file,
    read_poly_arg,
    transcript_dict,
)
from rzpencil.pencil import random_exact_pencil, random_pencil

NAMES = ["p_3", "ptilde_3", "q_5", "quartic", "p_1"]
PENCILS = ["bw5", "ex57", "ex58", "p3-rep-1", "ptilde3-rep", "arrowhead_4"]


@pytest.mark.parametrize("name", NAMES)
def test_poly_round_trip(name):
    p = catalog.get(name)
    back = load_poly(dump_poly(p))
    assert back == p and back.base == p.base


@pytest.mark.parametrize("name", PENCILS)
def test_catalog_pencil_round_trip(name):
    P = catalog.get(name)
    assert load_pencil(dump_pencil(P)) == P


@given(st.integers(0, 10**6))
def test_random_pencil_round_trip(seed):
    rng = np.random.default_rng(seed)
    n, k = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    E = random_exact_pencil(n, k, rng)
    assert load_pencil(dump_pencil(E)) == E
    F = random_pencil(n, k, rng)
    back = load_pencil(dump_pencil(F))
    assert not back.exact
    for A, B in zip(F.float_mats(), back.float_mats()):
        assert np.array_equal(A, B)


def test_comments_and_blank_lines(tmp_path):
    text = "# a disc\n\npencil nvars=1 size=2 domain=rational symmetry=symmetric\n# M1\n1 0\n\n0 -1\n"
    f = tmp_path / "disc.pencil"
    f.write_text(text)
    P = read_pencil_file(str(f))
    assert P.size == 2 and P.nvars == 1 and P.symmetry == "symmetric"


def test_poly_argument_file_or_expression(tmp_path):
    f = tmp_path / "p.poly"
    f.write_text(dump_poly(catalog.get("q_5")))
    assert read_poly_arg(str(f)) == catalog.get("q_5")
    assert read_poly_arg("1 - x1^2") == load_poly("poly nvars=1 domain=rational\n1 - x1^2")


@pytest.mark.parametrize(
    "text",
    [
        "pencil nvars=1 size=2 domain=rational symmetry=hermitian\n0 1\n2 0\n",  # not hermitian
        "pencil nvars=1 size=2 domain=rational symmetry=symmetric\n0 i\n-i 0\n",  # not symmetric
        "pencil nvars=1 size=2 domain=rational symmetry=hermitian\n1 0\n",  # too few rows
        "pencil nvars=1 size=2 domain=rational symmetry=hermitian\n1 0 0\n0 1 0\n",  # too many columns
        "pencil nvars=1 size=2 domain=rational symmetry=hermitian\n1 0\n0 sqrt(2)\n",  # radical in rational
        "pencil nvars=1 size=1 domain=sqrt:2 symmetry=hermitian\nsqrt(3)\n",  # wrong radical
        "pencil nvars=1 size=1 domain=complex symmetry=hermitian\n1\n",  # unknown domain
        "pencil nvars=1 domain=rational symmetry=hermitian\n1\n",  # missing size
        "pencil nvars=one size=1 domain=rational symmetry=hermitian\n1\n",
        "poly nvars=1 domain=rational\n1 - x1\n",  # wrong magic
    ],
)
def test_bad_pencil_files(text):
    with pytest.raises(FormatError):
        load_pencil(text)


@pytest.mark.parametrize(
    "text",
    [
        "poly nvars=2 domain=rational\n1 - x3^2\n",
        "poly nvars=1 domain=rational\n1 + sqrt(2)*x1\n",
        "poly nvars=1 domain=rational\n1 - x1^2\n1\n",
        "poly nvars=1 domain=rational\n1 + * x1\n",
        "pencil nvars=1 size=1 domain=rational symmetry=hermitian\n1\n",
    ],
)
def test_bad_poly_files(text):
    with pytest.raises(FormatError):
        load_poly(text)


def test_transcript():
    t = Transcript().add("verdict", "OK").add("passed", True).add("word", (1, 2, 3)).add("seed", 7)
    text = t.render()
    assert parse_transcript(text)[0] == ("verdict", "OK")
    d = transcript_dict(text)
    assert d == {"verdict": "OK", "passed": "true", "word": "1,2,3", "seed": "7"}
    assert t.get("seed") == "7" and t.get("missing", 0) == 0
