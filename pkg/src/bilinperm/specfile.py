"""Flat key/value spec files and the per-family inverse paths they drive.

Format: one ``key = value`` per line, ``#`` starts a comment, Elements are
hex.  Keys::

    field   = gf2:N[:modulus-hex[:m]]
    family  = blokhuis | laigle-chapuy | tower
    a       = <hex>                        blokhuis, laigle-chapuy
    L       = lin:s:a0,a1,...              laigle-chapuy
    degrees = d_1,...,d_h                  tower (n is the field degree)
    c       = c_1,...,c_h                  tower
    c0      = <hex>                        tower
    l       = <int>                        tower
    checks  = roundtrip,agreement,lemmas   optional, default all
"""

from __future__ import annotations

from dataclasses import dataclass, field as _field
from typing import Callable

from . import decomposition as dec
from . import inverses as inv
from .errors import FieldError, InvalidParameter
from .field import FieldCtx
from .linearized import LinearizedPoly
from .perms import BlokhuisSpec, LaigleChapuySpec, TowerSpec

FAMILIES = ("blokhuis", "laigle-chapuy", "tower")
CHECKS = ("roundtrip", "agreement", "lemmas")


@dataclass
class SpecFile:
    field: FieldCtx
    family: str
    params: dict
    checks: list = _field(default_factory=lambda: list(CHECKS))


def parse_specfile(text: str, field_override: str | None = None) -> SpecFile:
    kv = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FieldError(f"line {lineno}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        kv[k] = v
    desc = field_override or kv.pop("field", None)
    kv.pop("field", None)
    if not desc:
        raise FieldError("spec file has no field")
    family = kv.pop("family", "").lower()
    if family not in FAMILIES:
        raise FieldError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    checks = [c.strip() for c in kv.pop("checks", ",".join(CHECKS)).split(",") if c.strip()]
    if "all" in checks:
        checks = list(CHECKS)
    for c in checks:
        if c not in CHECKS:
            raise FieldError(f"unknown check {c!r}")
    return SpecFile(FieldCtx.from_descriptor(desc), family, kv, checks)


def _hex_list(ctx, text):
    return tuple(ctx.from_hex(h) for h in text.split(",") if h.strip())


def _need(params, key, family):
    if key not in params:
        raise InvalidParameter(f"{family} spec needs '{key}'", f"'{key}' present")
    return params[key]


def build_spec(sf: SpecFile):
    """Parse parameters and construct the validated permutation spec."""
    ctx, p = sf.field, sf.params
    if sf.family == "blokhuis":
        return BlokhuisSpec(ctx, ctx.from_hex(_need(p, "a", "blokhuis")))
    if sf.family == "laigle-chapuy":
        L = LinearizedPoly.parse(ctx, _need(p, "L", "laigle-chapuy"))
        return LaigleChapuySpec(ctx, ctx.from_hex(_need(p, "a", "laigle-chapuy")), L)
    degrees = tuple(int(d) for d in _need(p, "degrees", "tower").split(","))
    return TowerSpec(ctx, degrees, _hex_list(ctx, _need(p, "c", "tower")),
                     int(_need(p, "l", "tower")), ctx.from_hex(_need(p, "c0", "tower")))


def describe(spec) -> str:
    ctx = spec.ctx
    if isinstance(spec, BlokhuisSpec):
        body = f"f(x) = x (Tr(x) + a x), a = {ctx.to_hex(spec.a)}"
    elif isinstance(spec, LaigleChapuySpec):
        body = (f"F(x) = x (L(Tr(x)) + a Tr(x) + a x), a = {ctx.to_hex(spec.a)}, "
                f"L = {spec.L.serialize()}")
    else:
        cs = ",".join(ctx.to_hex(c) for c in spec.cs)
        body = (f"F_{spec.h + 1}(x) = x L_{spec.h + 1}(x), degrees = "
                f"{','.join(map(str, spec.degrees))}|{ctx.N}, c = {cs}, "
                f"c0 = {ctx.to_hex(spec.c0)}, l = {spec.l}, u = {spec.u}")
        return f"{spec.variant} over {ctx.descriptor()}: {body}"
    return f"{spec.variant} over {ctx.descriptor()} (q = {ctx.q}, n = {ctx.n}): {body}"


def inverse_paths(spec, corrupt_a: int | None = None) -> dict[str, Callable[[int], int]]:
    """Every formula path to the compositional inverse, keyed by name.

    ``corrupt_a`` replaces the parameter a (for towers, the top partial sum)
    in the closed-form and piecewise evaluators only; it exists so the
    verifier can be shown to catch a wrong inverse.
    """
    ctx = spec.ctx
    if isinstance(spec, BlokhuisSpec):
        a = spec.a if corrupt_a is None else corrupt_a
        lc = inv.blokhuis_as_laigle_chapuy(ctx, spec.a)
        g = inv.build_g(ctx, lc.L)
        a_lc = lc.a if corrupt_a is None else ctx.mul(corrupt_a, ctx.inv(1 ^ corrupt_a))
        scale = ctx.inv(1 ^ spec.a)
        return {
            "closed": lambda x: inv._inv_bipp(ctx, a, x),
            "via-laigle-chapuy": lambda x: inv.closed_inverse(
                ctx, ctx.N, ctx.m, a_lc, g, ctx.mul(x, scale)),
            "piecewise": lambda x: inv.piecewise_inverse(
                ctx, ctx.N, ctx.m, a_lc, g, ctx.mul(x, scale)),
            "decomposition": lambda x: dec.inverse_via_decomposition(lc, g, ctx.mul(x, scale)),
        }
    if isinstance(spec, LaigleChapuySpec):
        a = spec.a if corrupt_a is None else corrupt_a
        g = inv.build_g(ctx, spec.L)
        return {
            "closed": lambda x: inv.closed_inverse(ctx, ctx.N, ctx.m, a, g, x),
            "piecewise": lambda x: inv.piecewise_inverse(ctx, ctx.N, ctx.m, a, g, x),
            "decomposition": lambda x: dec.inverse_via_decomposition(spec, g, x),
        }
    top = spec.h + 1
    base = dec.tower_base_inverse(spec)
    if corrupt_a is None:
        closed = lambda x: inv.eval_inv_tower(spec, top, x)  # noqa: E731
    else:
        lower = lambda t: inv.eval_inv_tower(spec, top - 1, t)  # noqa: E731
        closed = lambda x: inv.closed_inverse(  # noqa: E731
            ctx, ctx.N, spec.degree(top - 1), corrupt_a, lower, x)
    return {
        "closed": closed,
        "decomposition": lambda x: dec.tower_inverse_via_decomposition(spec, x, base),
    }
