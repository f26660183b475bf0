"""Size bounds and nonexistence certificates for determinantal representations.

Every conclusion names one tag and lists the hypotheses it rests on, each
with the strength of its check.  Tags:

``cone-dimension-count``
    A cone in S(p) forces any representation down to size d, and then the
    d x d coefficient matrices must be linearly independent.
``simple-spectrum-crossing``
    Shifted homogenizations of polynomials with simple zeros and degree
    d not congruent to 0, 1, 7 mod 8 admit no representation for n >= 3
    (symmetric) or n >= 4 (hermitian).
``meshulam-symmetric-bound`` / ``meshulam-hermitian-bound``
    Lower bounds on the size from the rank-bounded subspace dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .polynomial import Poly, drop_first_variable, restrict, shifted_homogenize
from .realzero import (
    is_real_zero,
    no_full_line_quadratic,
    positive_ray_free,
    quadratic_form,
    real_roots,
    sample_directions,
    simple_zeros_sampled,
)
from .seeding import resolve_seed

PASSING = ("verified-exact", "verified-sampled", "asserted-by-caller")
TAGS = {
    "cone": "cone-dimension-count",
    "spectrum": "simple-spectrum-crossing",
    "symmetric-bound": "meshulam-symmetric-bound",
    "hermitian-bound": "meshulam-hermitian-bound",
    "none": "out-of-range",
}


def meshulam_alpha(k: int, d: int) -> int:
    """Largest dimension of a space of real symmetric k x k matrices of rank <= d."""
    if not 1 <= d <= k:
        raise PreconditionError(f"need 1 <= d <= k, got d={d}, k={k}")
    if d % 2 == 0:
        e = d // 2
        if 2 * k <= 5 * e + 1:
            return math.comb(d + 1, 2)
        return math.comb(e + 1, 2) + e * (k - e)
    e = (d - 1) // 2
    if 2 * k <= 5 * (e + 1):
        return math.comb(d + 1, 2)
    return math.comb(e + 1, 2) + e * (k - e) + 1


@dataclass(frozen=True)
class SizeBound:
    kind: str
    n: int
    d: int
    value: Fraction  # exact right-hand side
    ceiling: int
    tag: str
    hypothesis: str = "no-full-line"


def min_size_bound(n: int, d: int, kind: str) -> SizeBound | None:
    """Lower bound on the size of any representation, or None outside the valid range."""
    if n < 1 or d < 1:
        raise PreconditionError("n and d must be positive")
    if kind == "symmetric":
        if n <= math.comb(d + 1, 2) or d == 1:
            return None
        if d % 2 == 0:
            value = Fraction(2 * n, d) + Fraction(d - 2, 4)
        else:
            value = Fraction(2 * (n - 1), d - 1) + Fraction(d - 3, 4)
        tag = TAGS["symmetric-bound"]
    elif kind == "hermitian":
        if n <= math.comb(2 * d + 1, 2):
            return None
        value = Fraction(n, 2 * d) + Fraction(d - 1, 4)
        tag = TAGS["hermitian-bound"]
    else:
        raise PreconditionError(f"unknown kind {kind!r}")
    return SizeBound(kind, n, d, value, math.ceil(value), tag)


# -- hypotheses ------------------------------------------------------------------


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: str  # verified-exact | verified-sampled | asserted-by-caller | unverified | failed
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status in PASSING


@dataclass(frozen=True)
class Conclusion:
    kind: str  # symmetric | hermitian
    claim: str  # none-exists | size-lower-bound | no-conclusion
    tag: str
    hypotheses: tuple = ()
    bound: int | None = None
    note: str = ""


@dataclass
class ObstructionReport:
    polynomial: str
    nvars: int
    degree: int
    hypotheses: dict = field(default_factory=dict)
    conclusions: list = field(default_factory=list)
    base_polynomial: str | None = None

    def claims(self, kind: str) -> set[str]:
        return {c.claim for c in self.conclusions if c.kind == kind}

    def none_exists(self, kind: str) -> bool:
        return "none-exists" in self.claims(kind)

    def tags_for(self, kind: str, claim: str = "none-exists") -> set[str]:
        return {c.tag for c in self.conclusions if c.kind == kind and c.claim == claim}


def cone_hypothesis(p: Poly, samples: int = 256, seed: int | None = None, structural: bool = False) -> Hypothesis:
    """Search for a ray direction v with p(t v) of full degree and no roots for t >= 0.

    Such a direction stays valid under small perturbation, so S(p) then
    contains an open cone around it.
    """
    seed = resolve_seed(seed)
    for v in sample_directions(p.nvars, samples, seed):
        for s in (1, -1):
            a = tuple(s * x for x in v)
            if positive_ray_free(p, a):
                mode = "verified-exact" if p.is_exact else "verified-sampled"
                why = "shifted homogenization; " if structural else ""
                return Hypothesis("cone", mode, f"{why}ray-free direction {_fmt_vec(a)}")
    return Hypothesis("cone", "unverified", f"no ray-free direction among {samples} samples")


def no_line_hypothesis(p: Poly, samples: int = 512, seed: int | None = None) -> Hypothesis:
    """S(p) contains a line iff p(t v) = 1 for all t along some v != 0."""
    if p.degree == 2 and p.is_real:
        q = quadratic_form(p)
        if no_full_line_quadratic(q):
            return Hypothesis("no-full-line", "verified-exact" if q.exact else "verified-sampled", "ker [G; b^T] = 0")
        return Hypothesis("no-full-line", "failed", "ker [G; b^T] is nontrivial")
    if p.degree < 1:
        return Hypothesis("no-full-line", "failed", "constant polynomial")
    seed = resolve_seed(seed)
    worst = math.inf
    for a in sample_directions(p.nvars, samples, seed):
        u = restrict(p, a)
        if u.degree <= 0:
            return Hypothesis("no-full-line", "failed", f"p is constant along {_fmt_vec(a)}")
        norm = math.sqrt(sum(float(x) ** 2 for x in a))
        size = max(abs(complex(c)) / norm**j for j, c in enumerate(u.coeffs) if j)
        worst = min(worst, size)
    if worst < 1e-9:
        return Hypothesis("no-full-line", "unverified", "p is nearly constant along a sampled direction")
    return Hypothesis("no-full-line", "verified-sampled", f"{samples} directions, min top coefficient {worst:.3g}")


def _fmt_vec(a) -> str:
    return "(" + ",".join(str(x) for x in a) + ")"


def shifted_base(p: Poly) -> Poly | None:
    """The polynomial q with p = shifted_homogenize(q), if there is one."""
    if p.nvars < 2 or p.degree < 1 or p.const_term != 1:
        return None
    q = drop_first_variable(p)
    if q.degree != p.degree or q.const_term != 1:
        return None
    return q if shifted_homogenize(q) == p else None


def nonexistence_report(
    p: Poly,
    assert_cone: bool = False,
    assert_no_line: bool = False,
    samples: int = 256,
    seed: int | None = None,
) -> ObstructionReport:
    """Collect every conclusion whose hypotheses hold for p."""
    seed = resolve_seed(seed)
    verdict = is_real_zero(p, seed=seed)
    if not verdict.is_rz:
        raise PreconditionError(f"polynomial is not real zero (witness direction {verdict.witness_direction})")
    n, d = p.nvars, p.degree
    report = ObstructionReport(str(p), n, d)
    rz_mode = "verified-exact" if verdict.mode == "exact" else "verified-sampled"
    H = report.hypotheses
    H["real-zero"] = Hypothesis("real-zero", rz_mode, verdict.strategy)

    base = shifted_base(p)
    cone = cone_hypothesis(p, samples, seed, structural=base is not None)
    if not cone.holds and assert_cone:
        cone = Hypothesis("cone", "asserted-by-caller", cone.detail)
    H["cone"] = cone
    line = no_line_hypothesis(p, samples, seed)
    if not line.holds and line.status != "failed" and assert_no_line:
        line = Hypothesis("no-full-line", "asserted-by-caller", line.detail)
    H["no-full-line"] = line

    concluded = {"symmetric": False, "hermitian": False}
    used = ("real-zero", "cone", "no-full-line")
    if all(H[h].holds for h in used):
        if n > math.comb(d + 1, 2):
            report.conclusions.append(Conclusion("symmetric", "none-exists", TAGS["cone"], used))
            concluded["symmetric"] = True
        if n > d * d:
            report.conclusions.append(Conclusion("hermitian", "none-exists", TAGS["cone"], used))
            concluded["hermitian"] = True

    if base is not None:
        report.base_polynomial = str(base)
        _spectrum_conclusions(report, base, samples, seed, concluded, assert_no_line)

    for kind in ("symmetric", "hermitian"):
        if concluded[kind]:
            continue
        b = min_size_bound(n, d, kind)
        if b is not None and H["no-full-line"].holds:
            report.conclusions.append(Conclusion(kind, "size-lower-bound", b.tag, ("no-full-line",), b.ceiling))
        else:
            report.conclusions.append(Conclusion(kind, "no-conclusion", TAGS["none"]))
    return report


def _spectrum_conclusions(report, base: Poly, samples, seed, concluded, assert_no_line) -> None:
    H = report.hypotheses
    n, d = base.nvars, base.degree
    bv = is_real_zero(base, seed=seed)
    H["base-real-zero"] = Hypothesis(
        "base-real-zero",
        ("verified-exact" if bv.mode == "exact" else "verified-sampled") if bv.is_rz else "failed",
        bv.strategy,
    )
    mod = d % 8
    H["degree-mod-8"] = Hypothesis(
        "degree-mod-8", "failed" if mod in (0, 1, 7) else "verified-exact", f"d = {d}, d mod 8 = {mod}"
    )
    line = no_line_hypothesis(base, samples, seed)
    if not line.holds and line.status != "failed" and assert_no_line:
        line = Hypothesis("no-full-line", "asserted-by-caller", line.detail)
    H["base-no-full-line"] = Hypothesis("base-no-full-line", line.status, line.detail)
    simple = simple_zeros_sampled(base, min(samples, 64), seed) if bv.is_rz else False
    H["base-simple-zeros"] = Hypothesis(
        "base-simple-zeros", "verified-sampled" if simple else "failed", "homogenized restrictions square-free"
    )
    used = ("base-real-zero", "degree-mod-8", "base-no-full-line", "base-simple-zeros")
    if not all(H[h].holds for h in used):
        return
    note = "contingent on sampled precondition"
    if n >= 3:
        report.conclusions.append(Conclusion("symmetric", "none-exists", TAGS["spectrum"], used, note=note))
        concluded["symmetric"] = True
    if n >= 4:
        report.conclusions.append(Conclusion("hermitian", "none-exists", TAGS["spectrum"], used, note=note))
        concluded["hermitian"] = True


# -- compact example -------------------------------------------------------------------


def compact_counterexample(ptilde: Poly, r) -> Poly:
    """ptilde * r/(r-1) * (1 - ((x0+1)^2 + x1^2 + ... + xn^2)/r): compact S, p(0) = 1."""
    r = Fraction(r)
    if r <= 1:
        raise PreconditionError("r must exceed 1")
    if shifted_base(ptilde) is None:
        raise PreconditionError("input is not a shifted homogenization in x0..xn")
    n = ptilde.nvars
    ball = Poly.variable(0, n, 0) + 1
    ball = ball * ball
    for j in range(1, n):
        x = Poly.variable(j, n, 0)
        ball = ball + x * x
    factor = (Poly.constant(1, n, 0) - ball * (1 / r)) * (r / (r - 1))
    return (ptilde * factor).with_base(ptilde.base)


@dataclass(frozen=True)
class CompactCheck:
    real_zero: bool
    rz_mode: str
    radius_bound: float
    max_distance: float
    contained: bool
    directions: int
    note: str = "no representation via the limit argument; a theoretical conclusion, not machine-verified"


def check_compact(q: Poly, r, samples: int = 128, seed: int | None = None) -> CompactCheck:
    """RZ (sampled) and containment of S(q) in the ball of radius 2*sqrt(r)+1 around (-1, 0, ..., 0)."""
    seed = resolve_seed(seed)
    v = is_real_zero(q, samples=samples, seed=seed)
    bound = 2 * math.sqrt(float(Fraction(r))) + 1
    centre = np.zeros(q.nvars)
    centre[0] = -1.0
    worst, count = 0.0, 0
    for a in sample_directions(q.nvars, samples, seed):
        u = restrict(q, a)
        pos = [x for x in real_roots(u).expanded() if x > 0]
        if not pos:
            return CompactCheck(v.is_rz, v.mode, bound, math.inf, False, count + 1)
        edge = min(pos) * np.array([float(x) for x in a])
        worst = max(worst, float(np.linalg.norm(edge - centre)))
        count += 1
    return CompactCheck(v.is_rz, v.mode, bound, worst, worst <= bound, count)


def consistency_flags(report: ObstructionReport, power: int, kind: str = "hermitian") -> list[str]:
    """Contradictions between a report on p and a verified representation of p^power."""
    if power == 1 and report.none_exists(kind):
        return [f"report denies a {kind} representation of p, yet one of p itself was verified"]
    return []


__all__ = [
    "meshulam_alpha",
    "min_size_bound",
    "nonexistence_report",
    "compact_counterexample",
    "check_compact",
    "consistency_flags",
    "shifted_base",
    "cone_hypothesis",
    "no_line_hypothesis",
    "SizeBound",
    "Hypothesis",
    "Conclusion",
    "ObstructionReport",
    "CompactCheck",
    "TAGS",
]
