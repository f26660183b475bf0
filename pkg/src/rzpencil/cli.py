"""Command line entry point.

Exit codes: 0 verified, 1 property fails or pencils inequivalent,
2 inconclusive or only sampled, 3 usage or format error.

Commands that produce a file print it to stdout and the transcript to
stderr, unless ``--output`` is given; then the transcript goes to stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import numpy as np

from . import catalog
from .clifford import TAU_EQ, construct_quadratic, unitary_equiv_test
from .errors import BlockStructureError, ConeNotWitnessed, FormatError, RzPencilError
from .formats import Transcript, dump_pencil, dump_poly, load_pencil, read_poly_arg
from .obstruction import (
    check_compact,
    compact_counterexample,
    min_size_bound,
    nonexistence_report,
    PASSING,
)
from .pencil import K_EXACT, TAU_ID, Pencil, det_poly, double_to_symmetric, membership, verify_identity
from .polynomial import Poly, format_poly
from .realzero import TAU_PSD, TAU_ROOT, is_real_zero, rigid_membership
from .reduction import TAU_BLOCK, common_kernel_reduce, cone_reduce
from .seeding import resolve_seed

OK, FAILS, INCONCLUSIVE, USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _load_pencil_arg(arg: str) -> Pencil:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return load_pencil(fh.read())
    try:
        obj = catalog.get(arg)
    except KeyError:
        raise FormatError(f"{arg!r} is neither a pencil file nor a catalog pencil") from None
    if not isinstance(obj, Pencil):
        raise FormatError(f"catalog entry {arg!r} is a polynomial, not a pencil")
    return obj


def _load_poly_arg(arg: str) -> Poly:
    if not os.path.isfile(arg):
        try:
            obj = catalog.get(arg)
        except KeyError:
            obj = None
        if isinstance(obj, Poly):
            return obj
    return read_poly_arg(arg)


def _load_either(arg: str) -> Poly | Pencil:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
        head = text.lstrip().split(None, 1)[:1]
        return load_pencil(text) if head == ["pencil"] else _load_poly_arg(arg)
    try:
        return catalog.get(arg)
    except KeyError:
        return read_poly_arg(arg)


def _point(text: str) -> list[Fraction]:
    try:
        return [Fraction(v.strip()) for v in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad point {text!r}; expected comma-separated rationals") from None


def _emit(args, body: str, tr: Transcript) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
        tr.add("output", args.output)
        sys.stdout.write(tr.render())
    else:
        sys.stdout.write(body)
        sys.stderr.write(tr.render())


def _start(command: str, seed: int | None = None) -> Transcript:
    tr = Transcript().add("command", command)
    if seed is not None:
        tr.add("seed", seed)
    return tr


# -- subcommands ------------------------------------------------------------------


def cmd_check_rz(args) -> int:
    p = _load_poly_arg(args.poly)
    seed = resolve_seed(args.seed)
    strategy = "quadratic" if args.exact else ("sampled" if args.sampled else "auto")
    v = is_real_zero(p, strategy=strategy, samples=args.sampled or 512, seed=seed)
    tr = _start("check-rz", seed)
    tr.add("polynomial", format_poly(p)).add("strategy", v.strategy).add("samples", v.samples)
    tr.add("tau_root", TAU_ROOT).add("real_zero", v.is_rz)
    if v.witness_direction is not None:
        tr.add("witness_direction", list(v.witness_direction)).add("witness_mode", "proved")
    tr.add("mode", "proved" if v.mode == "exact" or not v.is_rz else "sampled")
    sys.stdout.write(tr.render())
    if not v.is_rz:
        return FAILS
    return OK if v.mode == "exact" else INCONCLUSIVE


def cmd_det(args) -> int:
    P = _load_pencil_arg(args.pencil)
    tr = _start("det").add("size", P.size).add("domain", P.domain)
    if args.exact and not P.exact:
        raise FormatError("--exact needs a pencil with exact entries")
    if args.verify is None:
        q = det_poly(P)
        tr.add("determinant", format_poly(q)).add("mode", "proved" if P.exact else "float")
        sys.stdout.write(tr.render())
        return OK if P.exact else INCONCLUSIVE
    target = _load_poly_arg(args.verify)
    seed = resolve_seed(args.seed)
    v = verify_identity(P, target, args.power, trials=args.trials, seed=seed)
    tr.add("seed", seed).add("target", format_poly(target)).add("power", args.power)
    tr.add("tau_id", TAU_ID).add("identity", v.passed).add("mode", v.mode)
    tr.add("points", v.points).add("mismatches", v.mismatches).add("max_error", v.max_error)
    if v.note:
        tr.add("note", v.note)
    sys.stdout.write(tr.render())
    if not v.passed:
        return FAILS
    return OK if v.mode == "proved" else INCONCLUSIVE


def cmd_member(args) -> int:
    obj = _load_either(args.object)
    a = _point(args.point)
    tr = _start("member").add("point", a)
    if isinstance(obj, Pencil):
        inside = membership(obj, a)
        tr.add("set", "spectrahedron").add("tau_psd", TAU_PSD).add("mode", "proved" if obj.exact else "float")
    else:
        inside = rigid_membership(obj, a)
        tr.add("set", "rigidly-convex").add("mode", "proved" if obj.is_exact else "float")
    tr.add("member", inside)
    sys.stdout.write(tr.render())
    return OK if inside else FAILS


def cmd_reduce(args) -> int:
    P = _load_pencil_arg(args.pencil)
    seed = resolve_seed(args.seed)
    tr = _start("reduce", seed).add("input_size", P.size)
    res = common_kernel_reduce(P, seed)
    tr.add("common_kernel_removed", res.removed)
    out, preserved = res.pencil, res.det_preserved
    if args.cone:
        hints = [_point(h) for h in args.hint or ()]
        cres = cone_reduce(out, hints, seed=seed)
        tr.add("cone_removed", cres.removed).add("tau_block", TAU_BLOCK)
        if cres.direction is not None:
            tr.add("cone_direction", list(cres.direction))
        out, preserved = cres.pencil, preserved and cres.det_preserved
    tr.add("output_size", out.size).add("determinant_preserved", preserved)
    tr.add("mode", "proved" if out.exact else "float-sampled")
    _emit(args, dump_pencil(out), tr)
    if not preserved:
        return FAILS
    return OK if out.exact else INCONCLUSIVE


def cmd_double(args) -> int:
    P = _load_pencil_arg(args.pencil)
    D = double_to_symmetric(P)
    seed = resolve_seed(args.seed)
    tr = _start("double", seed).add("input_size", P.size).add("output_size", D.size).add("tau_id", TAU_ID)
    if P.exact and P.size <= K_EXACT:
        v = verify_identity(D, det_poly(P), 2, seed=seed)
        tr.add("identity", v.passed).add("mode", v.mode).add("points", v.points).add("mismatches", v.mismatches)
        _emit(args, dump_pencil(D), tr)
        if not v.passed:
            return FAILS
        return OK if v.mode == "proved" else INCONCLUSIVE
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        a = rng.standard_normal(P.nvars)
        d1 = np.linalg.det(P.to_float().evaluate(a)).real
        d2 = np.linalg.det(D.to_float().evaluate(a)).real
        worst = max(worst, abs(d2 - d1 * d1) / max(1.0, d1 * d1))
    tr.add("max_relative_error", float(worst)).add("identity", bool(worst <= TAU_ID))
    tr.add("mode", "float-sampled")
    _emit(args, dump_pencil(D), tr)
    return INCONCLUSIVE if worst <= TAU_ID else FAILS


def cmd_construct(args) -> int:
    p = _load_poly_arg(args.poly)
    seed = resolve_seed(args.seed)
    c = construct_quadratic(p, args.variant, trials=args.trials, seed=seed)
    v = c.verdict
    tr = _start("construct-quadratic", seed).add("polynomial", format_poly(p))
    tr.add("variant", args.variant).add("size", c.size).add("power", c.power)
    tr.add("exact_square_root", c.exact_root)
    state = {"proved": "proved (grid)", "sampled": "sampled"}.get(v.mode, v.mode)
    tr.add("verification", f"det = p^{c.power}, {state}" if v.passed else f"det != p^{c.power}")
    tr.add("mode", v.mode).add("points", v.points).add("mismatches", v.mismatches)
    _emit(args, dump_pencil(c.pencil), tr)
    if not v.passed:
        return FAILS
    return OK if v.mode == "proved" else INCONCLUSIVE


def cmd_equiv(args) -> int:
    P1, P2 = _load_pencil_arg(args.pencil1), _load_pencil_arg(args.pencil2)
    seed = resolve_seed(args.seed)
    v = unitary_equiv_test(P1, P2, word_length=args.words, trials=args.trials, seed=seed)
    tr = _start("equiv", seed).add("verdict", v.verdict).add("tau_eq", TAU_EQ)
    if v.witness_word is not None:
        tr.add("witness_word", list(v.witness_word))
    if v.traces is not None:
        tr.add("witness_values", list(v.traces))
    if v.verdict == "inequivalent":
        tr.add("witness_mode", "proved" if v.witness_exact else "float")
    if v.residual is not None:
        tr.add("residual", v.residual)
    if v.note:
        tr.add("note", v.note)
    sys.stdout.write(tr.render())
    return {"equivalent": OK, "inequivalent": FAILS}.get(v.verdict, INCONCLUSIVE)


def cmd_bounds(args) -> int:
    b = min_size_bound(args.n, args.d, args.kind)
    tr = _start("bounds").add("n", args.n).add("d", args.d).add("kind", args.kind)
    if b is None:
        tr.add("applicable", False).add("bound", "none")
        sys.stdout.write(tr.render())
        return INCONCLUSIVE
    tr.add("applicable", True).add("value", b.value).add("ceiling", b.ceiling)
    tr.add("bound", f"k >= {b.ceiling}").add("tag", b.tag).add("hypothesis", b.hypothesis)
    sys.stdout.write(tr.render())
    return OK


def report_transcript(report, seed: int) -> Transcript:
    tr = _start("obstruct", seed).add("polynomial", report.polynomial)
    tr.add("nvars", report.nvars).add("degree", report.degree)
    if report.base_polynomial is not None:
        tr.add("base_polynomial", report.base_polynomial)
    for h in report.hypotheses.values():
        tr.add(f"hypothesis.{h.name}", h.status)
        if h.detail:
            tr.add(f"hypothesis.{h.name}.detail", h.detail)
    for c in report.conclusions:
        parts = [c.kind, c.claim, c.tag]
        if c.bound is not None:
            parts.append(f"k >= {c.bound}")
        if c.hypotheses:
            parts.append("needs " + "+".join(c.hypotheses))
        if c.note:
            parts.append(c.note)
        tr.add("conclusion", " | ".join(parts))
    return tr


def _firm(report, c) -> bool:
    return all(report.hypotheses[h].status in (PASSING[0], PASSING[2]) for h in c.hypotheses)


def cmd_obstruct(args) -> int:
    p = _load_poly_arg(args.poly)
    seed = resolve_seed(args.seed)
    rep = nonexistence_report(p, args.assert_cone, args.assert_no_line, samples=args.samples, seed=seed)
    tr = report_transcript(rep, seed)
    firm = [c for c in rep.conclusions if c.claim == "none-exists" and _firm(rep, c)]
    tr.add("mode", "proved" if firm else "sampled")
    sys.stdout.write(tr.render())
    return OK if firm else INCONCLUSIVE


def cmd_counterexample(args) -> int:
    p = _load_poly_arg(args.poly)
    try:
        r = Fraction(args.r)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad --r value {args.r!r}") from None
    q = compact_counterexample(p, r)
    tr = _start("counterexample").add("r", r).add("degree", q.degree)
    code = OK
    if args.check:
        seed = resolve_seed(args.seed)
        cc = check_compact(q, r, seed=seed)
        tr.add("seed", seed).add("real_zero", cc.real_zero).add("real_zero_mode", cc.rz_mode)
        tr.add("radius_bound", cc.radius_bound).add("max_distance", cc.max_distance)
        tr.add("contained", cc.contained).add("directions", cc.directions).add("note", cc.note)
        code = INCONCLUSIVE if cc.real_zero and cc.contained else FAILS
    _emit(args, dump_poly(q), tr)
    return code


def cmd_examples(args) -> int:
    if args.name in (None, "list"):
        sys.stdout.write("".join(f"{n}\n" for n in catalog.names()))
        return OK
    try:
        obj = catalog.get(args.name)
    except KeyError as exc:
        raise FormatError(str(exc.args[0])) from None
    body = dump_pencil(obj) if isinstance(obj, Pencil) else dump_poly(obj)
    _emit(args, body, _start("examples").add("name", args.name))
    return OK


# -- argument parsing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rzpencil", description="Real zero polynomials and determinantal representations.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, output=False, seeded=True):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=func)
        if seeded:
            sp.add_argument("--seed", type=int, default=None, help="overrides RZPENCIL_SEED")
        if output:
            sp.add_argument("-o", "--output", help="write the produced file here")
        return sp

    sp = add("check-rz", cmd_check_rz, "decide or semidecide the real zero property")
    sp.add_argument("poly", help="polynomial file, catalog name or inline expression")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact decision (quadratics)")
    mode.add_argument("--sampled", type=int, metavar="N", help="sample N directions")

    sp = add("det", cmd_det, "determinant of a pencil, or check it against a power of a polynomial")
    sp.add_argument("pencil")
    sp.add_argument("--exact", action="store_true", help="require exact arithmetic")
    sp.add_argument("--verify", metavar="POLY", help="target polynomial")
    sp.add_argument("--power", type=int, default=1)
    sp.add_argument("--trials", type=int, default=200)

    sp = add("member", cmd_member, "membership in a spectrahedron or rigidly convex set", seeded=False)
    sp.add_argument("object", help="pencil or polynomial")
    sp.add_argument("--point", required=True, help="comma-separated coordinates")

    sp = add("reduce", cmd_reduce, "remove the common kernel, optionally split off the cone block", True)
    sp.add_argument("pencil")
    sp.add_argument("--cone", action="store_true")
    sp.add_argument("--hint", action="append", help="candidate PSD direction (repeatable)")

    sp = add("double", cmd_double, "real symmetric pencil of twice the size with det squared", True)
    sp.add_argument("pencil")

    sp = add("construct-quadratic", cmd_construct, "Clifford representation of a power of a quadratic", True)
    sp.add_argument("poly")
    sp.add_argument("--variant", choices=("standard", "negated"), default="standard")
    sp.add_argument("--trials", type=int, default=200)

    sp = add("equiv", cmd_equiv, "unitary equivalence of two pencils")
    sp.add_argument("pencil1")
    sp.add_argument("pencil2")
    sp.add_argument("--words", type=int, default=4, help="maximum trace word length")
    sp.add_argument("--trials", type=int, default=64)

    sp = add("bounds", cmd_bounds, "lower bound on representation size", seeded=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--kind", choices=("symmetric", "hermitian"), required=True)

    sp = add("obstruct", cmd_obstruct, "non-existence report for determinantal representations")
    sp.add_argument("poly")
    sp.add_argument("--assert-no-line", action="store_true")
    sp.add_argument("--assert-cone", action="store_true")
    sp.add_argument("--samples", type=int, default=256)

    sp = add("counterexample", cmd_counterexample, "compact real zero polynomial from a shifted one", True)
    sp.add_argument("poly")
    sp.add_argument("--r", required=True, help="radius parameter r > 1")
    sp.add_argument("--check", action="store_true", help="sample the real zero and compactness checks")

    sp = add("examples", cmd_examples, "print a named polynomial or pencil", True, False)
    sp.add_argument("name", nargs="?", help="catalog name, or 'list'")
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else USAGE
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"rzpencil: format error: {exc}", file=sys.stderr)
        return USAGE
    except ConeNotWitnessed as exc:
        print(f"rzpencil: {exc}", file=sys.stderr)
        return INCONCLUSIVE
    except BlockStructureError as exc:
        print(f"rzpencil: {exc}", file=sys.stderr)
        return FAILS
    except (RzPencilError, ValueError, OSError) as exc:
        print(f"rzpencil: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
