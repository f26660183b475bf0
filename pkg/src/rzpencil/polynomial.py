"""Sparse multivariate and dense univariate polynomials.

A :class:`Poly` maps exponent tuples to coefficients.  Coefficients are
exact (``Fraction`` / :class:`~rzpencil.numbers.Num`) or floating point;
the two never mix inside one polynomial except through explicit
conversion (:meth:`Poly.to_float`).

Variables are numbered ``0..nvars-1`` internally.  ``base`` only affects
names: with ``base=1`` (the default) variable ``j`` prints as ``x{j+1}``,
with ``base=0`` as ``x{j}``.  Homogenizations put the new variable first
and return ``base=0`` polynomials, so ``1 - x1^2`` becomes ``x0^2 - x1^2``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, DomainError, PreconditionError
from .numbers import (
    Num,
    format_number,
    imag_part,
    is_compound,
    is_exact,
    radical_of,
    real_part,
    simplify,
)
from .parsing import detect_base, max_variable, parse_expression

Exponent = tuple


def _fl(x):
    """float when real, complex otherwise."""
    if isinstance(x, float):
        return x
    z = complex(x)
    return z.real if z.imag == 0 else z


def _coerce_point(point) -> list:
    out = []
    for v in point:
        if isinstance(v, str):
            v = Fraction(v)
        elif hasattr(v, "item") and not isinstance(v, (int, Fraction, Num)):
            v = v.item()
        out.append(simplify(v))
    return out


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "base")

    def __init__(self, nvars: int, terms: Mapping | Iterable = (), base: int = 1):
        if nvars < 0:
            raise DimensionError("nvars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(v < 0 for v in e):
                raise DimensionError(f"negative exponent in {e}")
            acc[e] = acc[e] + c if e in acc else c
        self.nvars = nvars
        self.terms = {e: simplify(c) for e, c in acc.items() if c != 0}
        self.base = base

    @classmethod
    def _raw(cls, nvars, terms, base=1):
        p = object.__new__(cls)
        p.nvars, p.terms, p.base = nvars, terms, base
        return p

    @classmethod
    def constant(cls, c, nvars: int, base: int = 1) -> "Poly":
        return cls(nvars, {(0,) * nvars: c}, base)

    @classmethod
    def variable(cls, i: int, nvars: int, base: int = 1) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)}, base)

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def const_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coeff(self, e):
        return self.terms.get(tuple(e), Fraction(0))

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    @property
    def radical(self) -> int:
        m = 1
        for c in self.terms.values():
            r = radical_of(c)
            if r != 1:
                if m not in (1, r):
                    raise DomainError("mixed radicals")
                m = r
        return m

    @property
    def is_real(self) -> bool:
        return all(imag_part(c) == 0 for c in self.terms.values())

    @property
    def domain(self) -> str:
        if not self.is_exact:
            return "float"
        m = self.radical
        return "rational" if m == 1 else f"sqrt:{m}"

    def names(self) -> list[str]:
        return [f"x{j + self.base}" for j in range(self.nvars)]

    def components(self) -> dict[int, "Poly"]:
        """Homogeneous components keyed by degree."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {j: Poly._raw(self.nvars, t, self.base) for j, t in out.items()}

    def homogeneous_part(self, j: int) -> "Poly":
        return Poly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == j}, self.base)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # -- conversions ------------------------------------------------------
    def to_float(self) -> "Poly":
        def f(c):
            z = complex(c)
            return z.real if z.imag == 0 else z

        return Poly._raw(self.nvars, {e: f(c) for e, c in self.terms.items()}, self.base)

    def real(self) -> "Poly":
        """Drop imaginary parts (caller has checked they vanish)."""
        return Poly(self.nvars, {e: real_part(c) for e, c in self.terms.items()}, self.base)

    def with_base(self, base: int) -> "Poly":
        return Poly._raw(self.nvars, self.terms, base)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction, Num, float, complex)):
            return Poly.constant(other, self.nvars, self.base)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            if e in t:
                s = simplify(t[e] + c)
                if s == 0:
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = c
        return Poly._raw(self.nvars, t, self.base)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.base)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Num, float, complex)):
            other = simplify(other)
            if other == 0:
                return Poly._raw(self.nvars, {}, self.base)
            return Poly._raw(
                self.nvars, {e: simplify(c * other) for e, c in self.terms.items()}, self.base
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return multiply(self, o)

    __rmul__ = __mul__

    def __pow__(self, r: int):
        return power(self, r)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Num, float, complex)):
            return self.degree <= 0 and self.const_term == other
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate(self, point)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, nvars={self.nvars})"

    def __str__(self):
        return format_poly(self)


# -- construction and printing ---------------------------------------------


def parse(text: str, nvars: int | None = None, base: int | None = None, allow_imag=False) -> Poly:
    """Parse an expression into canonical sparse form.

    ``nvars`` defaults to the highest variable index used.  ``base`` is
    detected from the text (``x0`` present means 0-based names).
    """
    if base is None:
        base = detect_base(text)
    if nvars is None:
        nvars = max_variable(text, base)
    return parse_expression(
        text,
        nvars,
        base,
        allow_imag,
        lambda c: Poly.constant(c, nvars, base),
        lambda i: Poly.variable(i, nvars, base),
    )


def term_order_key(e):
    return (sum(e), tuple(-v for v in e))


def _monomial(e, base) -> str:
    parts = []
    for j, v in enumerate(e):
        if v == 1:
            parts.append(f"x{j + base}")
        elif v > 1:
            parts.append(f"x{j + base}^{v}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: ascending total degree, lexicographic within a degree."""
    if p.is_zero:
        return "0"
    pieces = []
    for e in sorted(p.terms, key=term_order_key):
        c = p.terms[e]
        mono = _monomial(e, p.base)
        if not mono:
            text = format_number(c)
        elif c == 1:
            text = mono
        elif c == -1:
            text = "-" + mono
        elif is_compound(c):
            text = f"({format_number(c)})*{mono}"
        else:
            text = f"{format_number(c)}*{mono}"
        pieces.append(text)
    out = pieces[0]
    for t in pieces[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


# -- core operations ---------------------------------------------------------


def evaluate(p: Poly, point: Sequence):
    """Value of ``p`` at ``point``; exact when the point is exact."""
    pt = _coerce_point(point)
    if len(pt) != p.nvars:
        raise DimensionError(f"point has length {len(pt)}, expected {p.nvars}")
    exact = p.is_exact and all(is_exact(v) for v in pt)
    if not exact:
        pt = [_fl(v) for v in pt]
    maxe = [0] * p.nvars
    for e in p.terms:
        for j, v in enumerate(e):
            if v > maxe[j]:
                maxe[j] = v
    powers = []
    for j, v in enumerate(pt):
        pw = [Fraction(1) if exact else 1.0]
        for _ in range(maxe[j]):
            pw.append(pw[-1] * v)
        powers.append(pw)
    total = Fraction(0) if exact else 0.0
    for e, c in p.terms.items():
        t = c if exact else _fl(c)
        for j, v in enumerate(e):
            if v:
                t = t * powers[j][v]
        total = total + t
    if exact:
        return simplify(total)
    if isinstance(total, complex) and total.imag == 0:
        return total.real
    return total


def restrict(p: Poly, a: Sequence) -> "UniPoly":
    """Univariate restriction t -> p(t*a)."""
    pt = _coerce_point(a)
    if len(pt) != p.nvars:
        raise DimensionError(f"direction has length {len(pt)}, expected {p.nvars}")
    exact = p.is_exact and all(is_exact(v) for v in pt)
    d = max(p.degree, 0)
    coeffs = [Fraction(0) if exact else 0.0] * (d + 1)
    for e, c in p.terms.items():
        t = c if exact else _fl(c)
        for j, v in enumerate(e):
            if v:
                t = t * (pt[j] ** v if exact else _fl(pt[j]) ** v)
        coeffs[sum(e)] = coeffs[sum(e)] + t
    return UniPoly(coeffs)


def multiply(p: Poly, q: Poly) -> Poly:
    if p.nvars != q.nvars:
        raise DimensionError(f"nvars mismatch: {p.nvars} vs {q.nvars}")
    acc: dict = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = c1 * c2
            acc[e] = acc[e] + v if e in acc else v
    return Poly(p.nvars, acc, p.base)


def power(p: Poly, r: int) -> Poly:
    if not isinstance(r, int) or r < 0:
        raise PreconditionError("power must be a nonnegative integer")
    out = Poly.constant(1, p.nvars, p.base)
    base = p
    while r:
        if r & 1:
            out = multiply(out, base)
        r >>= 1
        if r:
            base = multiply(base, base)
    return out


def homogenize(p: Poly) -> Poly:
    """x0^d * p(x/x0) with the new variable x0 in front."""
    if p.is_zero:
        raise PreconditionError("cannot homogenize the zero polynomial")
    d = p.degree
    return Poly._raw(p.nvars + 1, {(d - sum(e),) + e: c for e, c in p.terms.items()}, 0)


def shifted_homogenize(p: Poly) -> Poly:
    """(x0+1)^d * p(x/(x0+1)) with the new variable x0 in front."""
    if p.is_zero or p.degree < 1:
        raise PreconditionError("shifted homogenization needs degree >= 1")
    if p.const_term != 1:
        raise PreconditionError("shifted homogenization needs p(0) = 1")
    d = p.degree
    acc: dict = {}
    for e, c in p.terms.items():
        j = d - sum(e)
        for i in range(j + 1):
            key = (i,) + e
            v = c * math.comb(j, i)
            acc[key] = acc[key] + v if key in acc else v
    return Poly(p.nvars + 1, acc, 0)


def drop_first_variable(p: Poly) -> Poly:
    """Set x0 = 0 and remove that variable."""
    t = {e[1:]: c for e, c in p.terms.items() if e[0] == 0}
    return Poly(p.nvars - 1, t, 1 if p.base == 0 else p.base)


def derivative(p: Poly, i: int) -> Poly:
    acc = {}
    for e, c in p.terms.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            acc[tuple(f)] = c * e[i]
    return Poly(p.nvars, acc, p.base)


def divide_exact(num: Poly, den: Poly, check: bool = True) -> Poly:
    """Quotient of an exact division by a polynomial with nonzero constant term.

    Works degree by degree on homogeneous components, so it needs no term
    order and behaves sensibly with float coefficients.
    """
    if num.nvars != den.nvars:
        raise DimensionError("nvars mismatch")
    c0 = den.const_term
    if c0 == 0:
        raise PreconditionError("divisor must have a nonzero constant term")
    if num.is_zero:
        return Poly._raw(num.nvars, {}, num.base)
    qdeg = num.degree - den.degree
    if qdeg < 0:
        raise ArithmeticError("division is not exact")
    ncomp = {j: c.terms for j, c in num.components().items()}
    dcomp = {j: c.terms for j, c in den.components().items() if j > 0}
    inv0 = 1 / c0
    qcomp: list[dict] = []
    for j in range(qdeg + 1):
        acc = dict(ncomp.get(j, {}))
        for i, dterms in dcomp.items():
            if i > j:
                continue
            for e1, c1 in dterms.items():
                for e2, c2 in qcomp[j - i].items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    v = c1 * c2
                    acc[e] = acc[e] - v if e in acc else -v
        qcomp.append({e: simplify(c * inv0) for e, c in acc.items() if c != 0})
    q = Poly._raw(num.nvars, {e: c for t in qcomp for e, c in t.items() if c != 0}, num.base)
    if check and num.is_exact and den.is_exact and multiply(q, den) != num:
        raise ArithmeticError("division is not exact")
    return q


def random_rational_point(rng, n: int, bound: int = 5, den: int = 7) -> list[Fraction]:
    return [Fraction(int(rng.integers(-bound * den, bound * den + 1)), den) for _ in range(n)]


# -- univariate ----------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [simplify(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def __call__(self, t):
        acc = Fraction(0) if self.is_exact and is_exact(t) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return simplify(acc) if is_exact(acc) else acc

    def derivative(self) -> "UniPoly":
        return UniPoly([c * j for j, c in enumerate(self.coeffs)][1:])

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return UniPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, r: int):
        out = UniPoly([1])
        for _ in range(r):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def monic(self) -> "UniPoly":
        return UniPoly([c / self.lead for c in self.coeffs])

    def __repr__(self):
        return f"UniPoly({[format_number(c) for c in self.coeffs]})"


def uni_divmod(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    if g.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f.coeffs)
    q = [Fraction(0)] * max(len(r) - len(g.coeffs) + 1, 0)
    lg, dg = g.lead, g.degree
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = simplify(c / lg)
        q[k - dg] = c
        for j, gc in enumerate(g.coeffs):
            r[k - dg + j] = simplify(r[k - dg + j] - c * gc)
    return UniPoly(q), UniPoly(r[:dg] if dg > 0 else [])


def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over the coefficient field (exact coefficients only)."""
    while not g.is_zero:
        f, g = g, uni_divmod(f, g)[1]
    return f.monic() if not f.is_zero else f


def all_monomials(nvars: int, degree: int):
    """Exponent tuples of total degree <= ``degree``."""
    for e in product(range(degree + 1), repeat=nvars):
        if sum(e) <= degree:
            yield e
