"""Exact scalars: rationals, one quadratic radical, and the imaginary unit.

Exact values are either :class:`fractions.Fraction` or :class:`Num`.  A
``Num`` stores ``(a + b*sqrt(m)) + i*(c + d*sqrt(m))`` with rational ``a..d``
and a square-free ``m``; ``m == 1`` means no radical.  Arithmetic between
elements with different radicals raises :class:`DomainError`.

Every helper here accepts ``int``/``Fraction``/``Num`` and returns the
simplest representation (a ``Fraction`` whenever the value is rational), so
rational-only workloads never pay for the four-component arithmetic.
"""

from __future__ import annotations

import math
import numbers as _abc
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "Num",
    "I",
    "sqrt_of",
    "simplify",
    "is_exact",
    "is_zero",
    "sign",
    "conj",
    "real_part",
    "imag_part",
    "radical_of",
    "to_complex",
    "rational_sqrt",
    "format_number",
    "abs_upper_bound",
]


def _join(m1: int, m2: int) -> int:
    if m1 == 1:
        return m2
    if m2 == 1 or m2 == m1:
        return m1
    raise DomainError(f"cannot mix sqrt({m1}) and sqrt({m2})")


def _sq_mul(a1, b1, a2, b2, m):
    # (a1 + b1 s)(a2 + b2 s), s^2 = m
    return a1 * a2 + m * b1 * b2, a1 * b2 + b1 * a2


def _sign_surd(a: Fraction, b: Fraction, m: int) -> int:
    """Exact sign of a + b*sqrt(m)."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or m == 1:
        v = a + b if m == 1 else a
        return (v > 0) - (v < 0)
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    return sa if a * a > m * b * b else sb


class Num:
    """Element of Q(sqrt(m))(i)."""

    __slots__ = ("a", "b", "c", "d", "m")

    def __init__(self, a=0, b=0, c=0, d=0, m=1):
        a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
        if m < 1:
            raise DomainError("radicand must be a positive integer")
        if m == 1:
            a, c, b, d = a + b, c + d, Fraction(0), Fraction(0)
        elif b == 0 and d == 0:
            m = 1
        self.a, self.b, self.c, self.d, self.m = a, b, c, d, m

    # -- coercion ---------------------------------------------------------
    @staticmethod
    def lift(x) -> "Num":
        if isinstance(x, Num):
            return x
        if isinstance(x, (int, Fraction)):
            return Num(x)
        raise TypeError(f"cannot lift {type(x).__name__} to an exact scalar")

    def _other(self, other):
        if isinstance(other, Num):
            return other
        if isinstance(other, (int, Fraction)):
            return Num(other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        m = _join(self.m, o.m)
        return Num(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, m)

    __radd__ = __add__

    def __neg__(self):
        return Num(-self.a, -self.b, -self.c, -self.d, self.m)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        m = _join(self.m, o.m)
        # (x1 + i y1)(x2 + i y2)
        xx = _sq_mul(self.a, self.b, o.a, o.b, m)
        yy = _sq_mul(self.c, self.d, o.c, o.d, m)
        xy = _sq_mul(self.a, self.b, o.c, o.d, m)
        yx = _sq_mul(self.c, self.d, o.a, o.b, m)
        return Num(xx[0] - yy[0], xx[1] - yy[1], xy[0] + yx[0], xy[1] + yx[1], m)

    __rmul__ = __mul__

    def inverse(self) -> "Num":
        m = self.m
        # 1/(x + iy) = (x - iy) / (x^2 + y^2), then rationalise the surd
        w = _sq_mul(self.a, self.b, self.a, self.b, m)
        v = _sq_mul(self.c, self.d, self.c, self.d, m)
        w1, w2 = w[0] + v[0], w[1] + v[1]
        norm = w1 * w1 - m * w2 * w2
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        inv1, inv2 = w1 / norm, -w2 / norm
        re = _sq_mul(self.a, self.b, inv1, inv2, m)
        im = _sq_mul(-self.c, -self.d, inv1, inv2, m)
        return Num(re[0], re[1], im[0], im[1], m)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            if isinstance(e, int):
                return self.inverse() ** (-e)
            return NotImplemented
        out, base = Num(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "Num":
        return Num(self.a, self.b, -self.c, -self.d, self.m)

    # -- inspection -------------------------------------------------------
    @property
    def is_real(self) -> bool:
        return self.c == 0 and self.d == 0

    @property
    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    @property
    def real(self) -> "Num":
        return Num(self.a, self.b, 0, 0, self.m)

    @property
    def imag(self) -> "Num":
        return Num(self.c, self.d, 0, 0, self.m)

    def sign(self) -> int:
        if not self.is_real:
            raise DomainError("sign of a non-real number")
        return _sign_surd(self.a, self.b, self.m)

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d) and (
            self.m == o.m or not (self.b or self.d)
        )

    def __hash__(self):
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d, self.m))

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        if not self.is_real:
            raise TypeError("non-real number has no float value")
        return float(self.a) + float(self.b) * math.sqrt(self.m)

    def __complex__(self):
        s = math.sqrt(self.m)
        return complex(float(self.a) + float(self.b) * s, float(self.c) + float(self.d) * s)

    def __abs__(self):
        if self.is_real:
            return self if self.sign() >= 0 else -self
        return abs(complex(self))

    def __repr__(self):
        return f"Num({format_number(self)})"

    __str__ = lambda self: format_number(self)  # noqa: E731


I = Num(0, 0, 1, 0)  # noqa: E741


def sqrt_of(m: int) -> Num:
    """sqrt(m) for a square-free integer m > 1."""
    if m < 2 or not _square_free(m):
        raise DomainError(f"sqrt({m}): radicand must be a square-free integer > 1")
    return Num(0, 1, 0, 0, m)


def _square_free(m: int) -> bool:
    f = 2
    while f * f <= m:
        if m % (f * f) == 0:
            return False
        f += 1
    return True


def simplify(x):
    """Canonical representation: Fraction when rational, else Num/float/complex."""
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Num):
        return x.a if x.is_rational else x
    return x


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Num))


def is_zero(x) -> bool:
    return x == 0


def sign(x) -> int:
    """Exact sign of a real exact scalar, or of a float."""
    if isinstance(x, Num):
        return x.sign()
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError("sign of a non-real number")
        x = x.real
    return (x > 0) - (x < 0)


def conj(x):
    if isinstance(x, (int, Fraction, float)):
        return x
    return x.conjugate()


def real_part(x):
    if isinstance(x, Num):
        return simplify(x.real)
    if isinstance(x, complex):
        return x.real
    return x


def imag_part(x):
    if isinstance(x, Num):
        return simplify(x.imag)
    if isinstance(x, complex):
        return x.imag
    if isinstance(x, float):
        return 0.0
    return Fraction(0)


def radical_of(x) -> int:
    return x.m if isinstance(x, Num) else 1


def to_complex(x) -> complex:
    return complex(x)


def rational_sqrt(q) -> Fraction | None:
    """Square root of a nonnegative rational if it is rational, else None."""
    q = simplify(q)
    if not isinstance(q, Fraction) or q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def abs_upper_bound(x) -> Fraction:
    """A rational upper bound for |x|."""
    if isinstance(x, (int, Fraction)):
        return abs(Fraction(x))
    if isinstance(x, Num):
        s = math.isqrt(x.m) + 1
        return abs(x.a) + abs(x.b) * s + abs(x.c) + abs(x.d) * s
    return Fraction(abs(x)) + 1


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _summands(x) -> list[str]:
    """Signed summands of an exact scalar; the first may lack a sign."""
    x = Num.lift(x)
    out = []
    rad = f"sqrt({x.m})"
    for q, unit in ((x.a, ""), (x.b, rad), (x.c, "i"), (x.d, f"{rad}*i")):
        if q == 0:
            continue
        if unit == "":
            out.append(_fmt_frac(q))
        elif q == 1:
            out.append(unit)
        elif q == -1:
            out.append("-" + unit)
        else:
            out.append(f"{_fmt_frac(q)}*{unit}")
    return out


def format_number(x) -> str:
    """Canonical text of a scalar, e.g. ``1/2+3*sqrt(2)`` or ``-2*i``."""
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        if x.imag == 0:
            return repr(x.real)
        sgn = "+" if x.imag >= 0 or math.isnan(x.imag) else "-"
        return f"{x.real!r}{sgn}{abs(x.imag)!r}*i"
    if isinstance(x, _abc.Integral):
        return str(int(x))
    parts = _summands(x)
    if not parts:
        return "0"
    text = parts[0]
    for s in parts[1:]:
        text += s if s.startswith("-") else "+" + s
    return text


def is_compound(x) -> bool:
    """True when the canonical text has more than one summand."""
    if isinstance(x, complex):
        return x.imag != 0
    if isinstance(x, float):
        return False
    return len(_summands(x)) > 1
