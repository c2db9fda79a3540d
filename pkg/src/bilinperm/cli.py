"""bilinperm command line.

Exit codes: 0 success, 1 verification mismatch, 2 invalid spec,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import decomposition as dec
from . import oracle
from .errors import FieldError, FieldTooLarge, InvalidParameter
from .field import DEFAULT_ENUM_BOUND, FieldCtx
from .inverses import blokhuis_as_laigle_chapuy, build_g, selector
from .perms import LaigleChapuySpec, TowerSpec
from .specfile import build_spec, describe, inverse_paths, parse_specfile

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_BOUND = 0, 1, 2, 3
TRACE_LEMMA_MAX_R = 12


class Report:
    def __init__(self, out):
        self.out = out
        self.failed = False

    def line(self, text=""):
        print(text, file=self.out)

    def check(self, name, mismatches, total, witness=None, ctx=None):
        if mismatches:
            self.failed = True
            w = "" if witness is None else f" first={ctx.to_hex(witness) if ctx else witness}"
            self.line(f"[FAIL] {name}: {mismatches}/{total} mismatches{w}")
        else:
            self.line(f"[PASS] {name}: {total}/{total}")


def _load(args):
    text = Path(args.spec).read_text()
    sf = parse_specfile(text, getattr(args, "field", None))
    return sf, build_spec(sf)


def cmd_construct(args, out) -> int:
    sf, spec = _load(args)
    rep = Report(out)
    rep.line(describe(spec))
    rep.line("hypotheses: all satisfied")
    if args.table:
        table = oracle.tabulate(spec.ctx, spec, args.max_n)
        rep.line(f"bijective: {'yes' if table.bijective else 'no'}")
        out.write(oracle.to_hex_lines(spec.ctx, table.forward))
    return EXIT_OK


def run_verify(spec, checks, rep: Report, max_n=DEFAULT_ENUM_BOUND, corrupt_a=None):
    """Round-trip and agreement checks of every inverse path against the oracle table."""
    ctx = spec.ctx
    Q = ctx.order
    table = oracle.tabulate(ctx, spec, max_n)
    rep.check("forward map is a bijection (oracle)", 0 if table.bijective else 1, Q)
    if not table.bijective:
        return
    paths = inverse_paths(spec, corrupt_a)
    if "roundtrip" in checks:
        for name, h in paths.items():
            bad, wit = 0, None
            for x in range(Q):
                if h(table.forward[x]) != x or spec(h(x)) != x:
                    bad += 1
                    wit = x if wit is None else wit
            rep.check(f"roundtrip {name}", bad, Q, wit, ctx)
    if "agreement" in checks:
        for name, h in paths.items():
            bad, wit = oracle.first_mismatch(ctx, table.inverse, h, max_n)
            rep.check(f"agreement {name} vs oracle inverse", bad, Q, wit, ctx)
    if "lemmas" in checks:
        _verify_lemmas(spec, rep, max_n)


def _verify_lemmas(spec, rep: Report, max_n):
    ctx = spec.ctx
    Q = ctx.order
    if isinstance(spec, TowerSpec):
        bad, wit = 0, None
        for x in range(Q):
            lhs = dec.tower_split(spec, spec(x))
            if dec.tower_triangular_system(spec, dec.tower_split(spec, x)) != lhs:
                bad += 1
                wit = x if wit is None else wit
        rep.check("tower triangular system commutes with F", bad, Q, wit, ctx)
        return
    lc = spec if isinstance(spec, LaigleChapuySpec) else blokhuis_as_laigle_chapuy(ctx, spec.a)
    g = build_g(ctx, lc.L)
    diagram = cross = sel = 0
    for x in range(Q):
        Fx = lc(x)
        if dec.phi(ctx, Fx) != dec.triangular_forward(lc, dec.phi(ctx, x)):
            diagram += 1
        if dec.vanishing_cross_term(lc, g, x):
            cross += 1
        t = ctx.trace_to(x)
        zero = (lc.L(t) ^ ctx.mul(lc.a, t)) == 0
        if zero != (selector(lc, g, Fx) == 0):
            sel += 1
    rep.check("phi o F = triangular system o phi", diagram, Q)
    rep.check("cross term vanishes", cross, Q)
    rep.check("selector zero iff L(Tr x) + a Tr x = 0", sel, Q)
    if ctx.n >= 3:
        bad = 0
        for c in ctx.subfield_elements()[1:]:
            d = dec.p_c_inverse_coeffs(ctx, c)
            if not dec.check_recurrence(ctx, c, d):
                bad += 1
        rep.check("P_c inverse coefficients solve the recurrence", bad, ctx.q - 1)
    r_max = min(TRACE_LEMMA_MAX_R, max_n)
    bad = [r for r in range(1, r_max + 1) if not dec.aux_trace_lemma_check(r)]
    rep.check(f"Tr(1/(e + 1/e)) = 0 for r = 1..{r_max}", len(bad), r_max, bad[0] if bad else None)


def cmd_verify(args, out) -> int:
    sf, spec = _load(args)
    checks = sf.checks if args.check is None else (
        ["roundtrip", "agreement", "lemmas"] if args.check == "all" else [args.check])
    corrupt = None if args.corrupt_a is None else spec.ctx.from_hex(args.corrupt_a)
    rep = Report(out)
    rep.line(describe(spec))
    if corrupt is not None:
        rep.line(f"mutation: inverse evaluators use a = {spec.ctx.to_hex(corrupt)}")
    run_verify(spec, checks, rep, args.max_n, corrupt)
    rep.line(f"result: {'FAIL' if rep.failed else 'PASS'}")
    return EXIT_MISMATCH if rep.failed else EXIT_OK


def cmd_lemma(args, out) -> int:
    rep = Report(out)
    for r in range(1, args.max_r + 1):
        if r > args.max_n:
            raise FieldTooLarge(f"r={r} exceeds enumeration bound {args.max_n}")
        rep.check(f"Tr_(2^{r}/2)(1/(e + 1/e)) = 0", 0 if dec.aux_trace_lemma_check(r) else 1, 1 << r)
    return EXIT_MISMATCH if rep.failed else EXIT_OK


def cmd_decompose(args, out) -> int:
    sf, spec = _load(args)
    ctx = spec.ctx
    rep = Report(out)
    rep.line(describe(spec))
    if isinstance(spec, TowerSpec):
        chain = " + ".join([f"GF(2^{spec.degree(1)})"] + [
            f"ker T_{spec.degree(i + 1)}:{spec.degree(i)}" for i in range(1, spec.h + 1)])
        rep.line(f"decomposition: GF(2^{ctx.N}) = {chain}")
        rep.line("system:")
        rep.line("  x_0 -> x_0 L_1(x_0)")
        for i in range(1, spec.h + 1):
            s = ctx.to_hex(spec.partial_sum(i + 1))
            ys = " + ".join(f"x_{j}" for j in range(i))
            rep.line(f"  x_{i} -> x_{i} [L_{i}(y_{i}) + {s} y_{i}] + {s} x_{i}^2,  y_{i} = {ys}")
        bad = sum(dec.tower_triangular_system(spec, dec.tower_split(spec, x))
                  != dec.tower_split(spec, spec(x)) for x in ctx.elements(args.max_n))
        rep.check("commutative diagram", bad, ctx.order)
    else:
        if not isinstance(spec, LaigleChapuySpec):
            spec = blokhuis_as_laigle_chapuy(ctx, spec.a)
            rep.line(f"as laigle-chapuy: f = (1 + a) F with a' = {ctx.to_hex(spec.a)}")
        rep.line(f"decomposition: GF({ctx.q}^{ctx.n}) = GF({ctx.q}) + ker Tr via x -> (Tr x, x + Tr x)")
        a = ctx.to_hex(spec.a)
        rep.line(f"system: (y, z) -> (y L(y), {a} z^2 + (L(y) + {a} y) z),  L = {spec.L.serialize()}")
        bad = sum(dec.phi(ctx, spec(x)) != dec.triangular_forward(spec, dec.phi(ctx, x))
                  for x in ctx.elements(args.max_n))
        rep.check("commutative diagram", bad, ctx.order)
    return EXIT_MISMATCH if rep.failed else EXIT_OK


def cmd_table(args, out) -> int:
    sf, spec = _load(args)
    ctx = spec.ctx
    if args.fn == "forward":
        fn = spec
    elif args.fn == "oracle-inverse":
        table = oracle.tabulate(ctx, spec, args.max_n)
        fn = table.inverse.__getitem__
    else:
        paths = inverse_paths(spec)
        if args.fn not in paths:
            raise FieldError(f"{spec.variant} has no evaluator {args.fn!r}; "
                             f"choose from {', '.join(paths)}")
        fn = paths[args.fn]
    if args.x is not None:
        print(ctx.to_hex(fn(ctx.from_hex(args.x))), file=out)
    else:
        out.write(oracle.to_hex_lines(ctx, [fn(x) for x in ctx.elements(args.max_n)]))
    return EXIT_OK


def export_tables(spec, fmt: str, outdir: Path, max_n=DEFAULT_ENUM_BOUND) -> list[Path]:
    ctx = spec.ctx
    table = oracle.tabulate(ctx, spec, max_n)
    if not table.bijective:
        raise InvalidParameter("forward map is not a bijection", "permutation")
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    manifest = outdir / "export.txt"
    manifest.write_text(f"field = {ctx.descriptor()}\nformat = {fmt}\nfamily = {spec.variant}\n")
    written.append(manifest)
    if fmt == "hex":
        for name, values in (("forward", table.forward), ("inverse", table.inverse)):
            p = outdir / f"{name}.hex"
            p.write_text(oracle.to_hex_lines(ctx, values))
            written.append(p)
    elif fmt == "bin":
        p = outdir / "tables.bin"
        p.write_bytes(oracle.to_bytes(ctx, table.forward) + oracle.to_bytes(ctx, table.inverse))
        written.append(p)
    else:
        raise FieldError(f"unknown export format {fmt!r}")
    if ctx.N <= oracle.INTERPOLATION_BOUND:
        for name in ("forward", "inverse"):
            values = table.forward if name == "forward" else table.inverse
            coeffs = oracle.interpolate_coeffs(oracle.PermTable(ctx, values))
            p = outdir / f"coeffs_{name}.hex"
            p.write_text(oracle.to_hex_lines(ctx, coeffs))
            written.append(p)
    return written


def import_tables(outdir: Path):
    """Read back an export directory: (ctx, forward, inverse)."""
    meta = dict(line.split(" = ", 1) for line in (outdir / "export.txt").read_text().splitlines())
    ctx = FieldCtx.from_descriptor(meta["field"])
    if meta["format"] == "hex":
        fwd = oracle.from_hex_lines(ctx, (outdir / "forward.hex").read_text())
        inv = oracle.from_hex_lines(ctx, (outdir / "inverse.hex").read_text())
    else:
        values = oracle.from_bytes(ctx, (outdir / "tables.bin").read_bytes())
        if len(values) != 2 * ctx.order:
            raise FieldError("binary table pair has the wrong length")
        fwd, inv = values[:ctx.order], values[ctx.order:]
    return ctx, fwd, inv


def cmd_export(args, out) -> int:
    sf, spec = _load(args)
    for p in export_tables(spec, args.export, Path(args.out), args.max_n):
        print(p, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bilinperm",
        description="Bilinear permutation polynomials over GF(2^N) and their inverses.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help, spec=True):
        p = sub.add_parser(name, help=help)
        if spec:
            p.add_argument("--spec", required=True, help="spec file path")
            p.add_argument("--field", help="override the spec file's field descriptor")
        p.add_argument("--max-n", type=int, default=DEFAULT_ENUM_BOUND,
                       help="enumeration bound on N (default %(default)s)")
        p.set_defaults(func=fn)
        return p

    p = add("construct", cmd_construct, "validate a spec and describe it")
    p.add_argument("--table", action="store_true", help="also print the forward table")

    p = add("verify", cmd_verify, "run the exhaustive verification suite")
    p.add_argument("--check", choices=["roundtrip", "agreement", "lemmas", "all"])
    p.add_argument("--corrupt-a", metavar="HEX",
                   help="mutation hook: evaluate the inverse formulas with this a")

    p = add("lemma", cmd_lemma, "check Tr(1/(e + 1/e)) = 0 on GF(2^r)", spec=False)
    p.add_argument("--max-r", type=int, default=TRACE_LEMMA_MAX_R)

    add("decompose", cmd_decompose, "print the triangular system and check the diagram")

    p = add("table", cmd_table, "print one evaluator as a hex table (or one value)")
    p.add_argument("--fn", default="forward",
                   help="forward, oracle-inverse, closed, piecewise, via-laigle-chapuy, decomposition")
    p.add_argument("--x", metavar="HEX", help="evaluate at a single element")

    p = add("export", cmd_export, "write forward/inverse tables and coefficients")
    p.add_argument("--export", choices=["hex", "bin"], default="hex")
    p.add_argument("--out", required=True, metavar="DIR")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except FieldTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND
    except InvalidParameter as e:
        print(f"error: {e} [hypothesis: {e.hypothesis}]", file=sys.stderr)
        return EXIT_INVALID
    except (FieldError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
