"""Named polynomials and pencils used as fixtures and by ``rzpencil examples``.

Families take a size suffix: ``p_5`` (or ``p5``), ``ptilde_3``, ``q_5``,
``arrowhead_4``.  Fixed objects are written out entry by entry.
"""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .numbers import I, sqrt_of, simplify
from .pencil import Pencil
from .polynomial import Poly, parse

_FAMILY = re.compile(r"(ptilde|p|q|arrowhead)_?(\d+)")


def _sum_squares(lo: int, hi: int) -> str:
    return "".join(f" - x{j}^2" for j in range(lo, hi + 1))


def p_ball(n: int) -> Poly:
    """1 - x1^2 - ... - xn^2."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    return parse("1" + _sum_squares(1, n), nvars=n, base=1)


def p_tilde(n: int) -> Poly:
    """(x0 + 1)^2 - x1^2 - ... - xn^2, the cone over the unit ball."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    return parse("(x0 + 1)^2" + _sum_squares(1, n), nvars=n + 1, base=0)


def q_hyperboloid(n: int) -> Poly:
    """(x1 + sqrt(2))^2 - x2^2 - ... - xn^2 - 1, a two-sheeted hyperboloid."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    return parse("(x1 + sqrt(2))^2" + _sum_squares(2, n) + " - 1", nvars=n, base=1)


def arrowhead(n: int) -> Pencil:
    """Size n+1 pencil with x_i in the first row and column; det = p_n."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    k = n + 1
    mats = []
    for i in range(1, k):
        M = [[Fraction(0)] * k for _ in range(k)]
        M[0][i] = M[i][0] = Fraction(1)
        mats.append(M)
    return Pencil(mats, "symmetric", 1, k)


def _mat(rows) -> list[list]:
    table = {"0": 0, "1": 1, "-1": -1, "i": I, "-i": -I}
    return [[simplify(table[t]) if t in table else Fraction(t) for t in row.split()] for row in rows]


def _p3_rep_1() -> Pencil:
    # [[1+x3, x1+i x2], [x1-i x2, 1-x3]]
    return Pencil([_mat(["0 1", "1 0"]), _mat(["0 i", "-i 0"]), _mat(["1 0", "0 -1"])])


def _p3_rep_2() -> Pencil:
    # [[1-x3, -x1-i x2], [-x1+i x2, 1+x3]]
    return Pencil([_mat(["0 -1", "-1 0"]), _mat(["0 -i", "i 0"]), _mat(["-1 0", "0 1"])])


def _ptilde3_rep() -> Pencil:
    # [[1+x0+x1, x2+i x3], [x2-i x3, 1+x0-x1]]
    mats = [_mat(["1 0", "0 1"]), _mat(["1 0", "0 -1"]), _mat(["0 1", "1 0"]), _mat(["0 i", "-i 0"])]
    return Pencil(mats, "hermitian", 0)


# coefficient matrices of the 4x4 Clifford pencil for 1 - x1^2 - ... - x5^2
_BW5 = [
    ["0 1 0 0", "1 0 0 0", "0 0 0 1", "0 0 1 0"],
    ["0 0 1 0", "0 0 0 -1", "1 0 0 0", "0 -1 0 0"],
    ["0 i 0 0", "-i 0 0 0", "0 0 0 i", "0 0 -i 0"],
    ["0 0 i 0", "0 0 0 -i", "-i 0 0 0", "0 i 0 0"],
    ["1 0 0 0", "0 -1 0 0", "0 0 -1 0", "0 0 0 1"],
]


def _bw5(sign: int = 1) -> Pencil:
    return Pencil([np.array(_mat(rows), dtype=object) * sign for rows in _BW5])


def _ex57() -> Pencil:
    # same matrices with sqrt(2)*x1 added on the diagonal; det = q_5^2
    mats = [np.array(_mat(rows), dtype=object) for rows in _BW5]
    r2 = sqrt_of(2)
    for j in range(4):
        mats[0][j, j] = simplify(mats[0][j, j] + r2)
    return Pencil(mats)


def _ex58() -> Pencil:
    # x0 on the diagonal, x1..x4 as the first four matrices above; det = ptilde_4^2
    eye = _mat(["1 0 0 0", "0 1 0 0", "0 0 1 0", "0 0 0 1"])
    return Pencil([eye] + [_mat(rows) for rows in _BW5[:4]], "hermitian", 0)


_FIXED = {
    "p3-rep-1": _p3_rep_1,
    "p3-rep-2": _p3_rep_2,
    "ptilde3-rep": _ptilde3_rep,
    "bw5": _bw5,
    "bw5-negated": lambda: _bw5(-1),
    "ex57": _ex57,
    "ex58": _ex58,
    "quartic": lambda: parse("1 - x1^4 - x2^4"),
}

_FAMILIES = {"p": p_ball, "ptilde": p_tilde, "q": q_hyperboloid, "arrowhead": arrowhead}


def names() -> list[str]:
    return ["p_<n>", "ptilde_<n>", "q_<n>", "arrowhead_<n>"] + sorted(_FIXED)


def get(name: str) -> Poly | Pencil:
    """Look up a catalog object by name."""
    key = name.strip().lower()
    if key in _FIXED:
        return _FIXED[key]()
    m = _FAMILY.fullmatch(key)
    if m is None:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(names())}")
    return _FAMILIES[m.group(1)](int(m.group(2)))
