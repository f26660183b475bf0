"""Text file formats for polynomials and pencils, and key/value transcripts.

Polynomial file::

    poly nvars=3 domain=rational
    1 - x1^2 - x2^2 - x3^2

Pencil file: a header line, then one block of ``size`` lines per variable.
Entries are separated by whitespace and written as ``re`` or ``re+im*i``::

    pencil nvars=2 size=2 domain=rational symmetry=hermitian
    1 0
    0 -1
    0 1-i
    1+i 0

Blank lines and lines starting with ``#`` are ignored.  An optional
``base=0|1`` header key fixes the variable naming (``x0`` or ``x1`` first).
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import DimensionError, FormatError, ParseError, PreconditionError
from .numbers import format_number, radical_of, to_complex
from .parsing import detect_base
from .pencil import Pencil
from .polynomial import Poly, format_poly, parse


_DOMAIN = re.compile(r"rational|float|sqrt:(\d+)")


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _header(line: str, magic: str, required: Iterable[str]) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != magic:
        raise FormatError(f"expected a '{magic} ...' header line, got {line!r}")
    fields = {}
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        if not sep or not value:
            raise FormatError(f"malformed header field {part!r}")
        fields[key] = value
    missing = [k for k in required if k not in fields]
    if missing:
        raise FormatError(f"header is missing {', '.join(missing)}")
    return fields


def _int_field(fields, key) -> int:
    try:
        v = int(fields[key])
    except ValueError:
        raise FormatError(f"{key} must be an integer, got {fields[key]!r}") from None
    if v < 0:
        raise FormatError(f"{key} must be non-negative")
    return v


def _domain_radical(domain: str) -> int | None:
    """1 for rational, m for sqrt:m, None for float."""
    m = _DOMAIN.fullmatch(domain)
    if m is None:
        raise FormatError(f"unknown domain {domain!r}")
    if domain == "float":
        return None
    if domain == "rational":
        return 1
    r = int(m.group(1))
    if r < 2:
        raise FormatError(f"sqrt domain needs an integer >= 2, got {r}")
    return r


def _check_radical(values, radical: int, what: str) -> None:
    for x in values:
        r = radical_of(x)
        if r not in (1, radical):
            raise FormatError(f"{what} uses sqrt({r}) outside the declared domain")


def _base_field(fields, fallback: int) -> int:
    if "base" not in fields:
        return fallback
    if fields["base"] not in ("0", "1"):
        raise FormatError("base must be 0 or 1")
    return int(fields["base"])


# -- polynomials ---------------------------------------------------------------


def dump_poly(p: Poly) -> str:
    head = f"poly nvars={p.nvars} domain={p.domain}"
    if p.base != 1:
        head += f" base={p.base}"
    return f"{head}\n{format_poly(p)}\n"


def load_poly(text: str) -> Poly:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty polynomial file")
    fields = _header(lines[0], "poly", ("nvars", "domain"))
    if len(lines) != 2:
        raise FormatError("a polynomial file holds a header and exactly one expression line")
    n = _int_field(fields, "nvars")
    radical = _domain_radical(fields["domain"])
    expr = lines[1]
    try:
        p = parse(expr, nvars=n, base=_base_field(fields, detect_base(expr)))
    except ParseError as exc:
        raise FormatError(f"bad expression: {exc}") from None
    if radical is None:
        return p.to_float()
    _check_radical(p.terms.values(), radical, "polynomial")
    return p


def read_poly_arg(arg: str) -> Poly:
    """A polynomial file path, or else an inline expression."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return load_poly(fh.read())
    try:
        return parse(arg)
    except ParseError as exc:
        raise FormatError(f"{arg!r} is neither a file nor a valid expression: {exc}") from None


# -- pencils ---------------------------------------------------------------------


def _entry_text(x) -> str:
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        if x.imag == 0:
            return repr(x.real + 0.0)
    return format_number(x)


def dump_pencil(P: Pencil) -> str:
    head = f"pencil nvars={P.nvars} size={P.size} domain={P.domain} symmetry={P.symmetry}"
    if P.base != 1:
        head += f" base={P.base}"
    out = [head]
    for A in P.mats:
        for row in A:
            out.append(" ".join(_entry_text(x) for x in row))
    return "\n".join(out) + "\n"


def _parse_entry(tok: str, radical: int | None, where: str):
    try:
        value = parse(tok, nvars=0, allow_imag=True).const_term
    except ParseError as exc:
        raise FormatError(f"bad entry {tok!r} at {where}: {exc}") from None
    if radical is None:
        return to_complex(value)
    _check_radical([value], radical, f"entry at {where}")
    return value if not isinstance(value, int) else Fraction(value)


def load_pencil(text: str) -> Pencil:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty pencil file")
    fields = _header(lines[0], "pencil", ("nvars", "size", "domain", "symmetry"))
    n, k = _int_field(fields, "nvars"), _int_field(fields, "size")
    radical = _domain_radical(fields["domain"])
    symmetry = fields["symmetry"]
    if symmetry not in ("hermitian", "symmetric"):
        raise FormatError(f"unknown symmetry {symmetry!r}")
    body = lines[1:]
    if len(body) != n * k:
        raise FormatError(f"expected {n * k} matrix rows ({n} blocks of {k}), found {len(body)}")
    mats = []
    for b in range(n):
        rows = []
        for r in range(k):
            toks = body[b * k + r].split()
            if len(toks) != k:
                raise FormatError(f"matrix {b + 1}, row {r + 1}: expected {k} entries, found {len(toks)}")
            rows.append([_parse_entry(t, radical, f"matrix {b + 1}, row {r + 1}") for t in toks])
        mats.append(rows if radical is not None else np.array(rows, dtype=complex))
    try:
        return Pencil(mats, symmetry, _base_field(fields, 1), k)
    except (PreconditionError, DimensionError) as exc:
        raise FormatError(str(exc)) from None


def read_pencil_file(path: str) -> Pencil:
    with open(path, encoding="utf-8") as fh:
        return load_pencil(fh.read())


# -- transcripts -------------------------------------------------------------------


def _value_text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return ",".join(_value_text(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Poly):
        return format_poly(v)
    return format_number(v) if isinstance(v, (Fraction, complex)) else str(v)


class Transcript:
    """Ordered ``key: value`` records; keys may repeat."""

    def __init__(self):
        self.records: list[tuple[str, str]] = []

    def add(self, key: str, value) -> "Transcript":
        text = _value_text(value)
        if "\n" in text:
            raise ValueError(f"transcript value for {key!r} spans several lines")
        self.records.append((key, text))
        return self

    def get(self, key: str, default=None):
        for k, v in reversed(self.records):
            if k == key:
                return v
        return default

    def render(self) -> str:
        return "".join(f"{k}: {v}\n" for k, v in self.records)

    __str__ = render


def parse_transcript(text: str) -> list[tuple[str, str]]:
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition(": ")
        if not sep:
            key, sep, value = line.partition(":")
            if not sep:
                raise FormatError(f"not a key: value record: {line!r}")
        out.append((key.strip(), value.strip()))
    return out


def transcript_dict(text: str) -> dict[str, str]:
    """Records as a dict; later keys win."""
    return dict(parse_transcript(text))
