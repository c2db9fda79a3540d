"""Closed-form compositional inverses of the bilinear permutation families.

Fractions are rendered with total inverses: 1/g becomes g^(q-2) where g
lives in F_q, so the selector S^(q-1) is an exact 0/1 indicator.  All
exponents are formed as integers before exponentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import InvalidParameter
from .field import FieldCtx
from .linearized import LinearizedPoly, eval_lin
from .perms import BlokhuisSpec, LaigleChapuySpec, TowerSpec


@dataclass(frozen=True)
class SubfieldInverse:
    """g: F_q -> F_q with g(y L(y)) = y, stored as a lookup table."""

    table: dict
    closed_form: Callable[[int], int] | None = None

    def __call__(self, y: int) -> int:
        return self.table[y]


def invert_on_subfield(ctx: FieldCtx, f: Callable[[int], int], d: int | None = None,
                       closed_form=None) -> SubfieldInverse:
    sub = ctx.subfield_elements(d)
    table = {f(y): y for y in sub}
    if len(table) != len(sub) or not set(table) <= set(sub):
        raise InvalidParameter("map does not permute the subfield", "x L(x) permutes F_q")
    return SubfieldInverse(table, closed_form)


def build_g(ctx: FieldCtx, L: LinearizedPoly) -> SubfieldInverse:
    return invert_on_subfield(ctx, lambda y: ctx.mul(y, eval_lin(L, y)))


def build_g_monomial(ctx: FieldCtx, c0: int, l: int, u: int, d: int | None = None) -> SubfieldInverse:
    """g for L(x) = c0 x^(2^l) on GF(2^d), with closed form (x/c0)^u."""
    def closed(x):
        return ctx.pow(ctx.mul(x, ctx.inv(c0)), u)
    return invert_on_subfield(
        ctx, lambda y: ctx.mul(c0, ctx.pow(y, (1 << l) + 1)), d, closed)


# -- generic forms over a pair of nested fields GF(2^m) < GF(2^D) ------------

def _half_sum(ctx: FieldCtx, x: int, D: int, m: int) -> int:
    """sum_{k=0}^{(D/m-1)/2} x^(q^(2k))."""
    s = 0
    for k in range((D // m - 1) // 2 + 1):
        s ^= ctx.frobenius(x, 2 * k * m)
    return s


def _selector_base(ctx: FieldCtx, m: int, a: int, t: int, g_t: int) -> int:
    """t/g(t) + a g(t) with 1/g rendered as g^(q-2)."""
    q = 1 << m
    return ctx.mul(t, ctx.pow(g_t, q - 2)) ^ ctx.mul(a, g_t)


def closed_inverse(ctx: FieldCtx, D: int, m: int, a: int, g, x: int) -> int:
    q = 1 << m
    n = D // m
    t = ctx.relative_trace(x, D, m)
    g_t = g(t)
    s = _selector_base(ctx, m, a, t, g_t)
    A = ctx.pow(a, (1 << (m - 1)) - 1)

    head = ctx.mul(A, ctx.pow(x, 1 << (D - 1)))
    tail = 0
    for k in range(1, (n - 1) // 2 + 1):
        tail ^= ctx.pow(x, 1 << ((2 * k - 1) * m - 1))
    middle = ctx.mul(g_t ^ ctx.mul(A, tail), ctx.pow(s, q - 1))

    xs = _half_sum(ctx, x, D, m)
    rest = 0
    for j in range(m - 1):
        coef = ctx.mul(ctx.pow(a, (1 << j) - 1), ctx.pow(s, q - (1 << (j + 1))))
        rest ^= ctx.mul(coef, ctx.frobenius(xs, j))
    return head ^ middle ^ rest


def piecewise_inverse(ctx: FieldCtx, D: int, m: int, a: int, g, x: int) -> int:
    t = ctx.relative_trace(x, D, m)
    g_t = g(t)
    s = _selector_base(ctx, m, a, t, g_t)
    if s == 0:
        return ctx.sqrt(ctx.mul(x, ctx.inv(a)))
    s_inv = ctx.inv(s)
    xs = _half_sum(ctx, x, D, m)
    acc = g_t
    for j in range(m):
        coef = ctx.mul(ctx.pow(a, (1 << j) - 1), ctx.pow(s_inv, (1 << (j + 1)) - 1))
        acc ^= ctx.mul(coef, ctx.frobenius(xs, j))
    return acc


def selector(spec: LaigleChapuySpec, g: SubfieldInverse, x: int) -> int:
    """(Tr(x)/g(Tr(x)) + a g(Tr(x)))^(q-1), which is 0 or 1."""
    ctx = spec.ctx
    t = ctx.trace_to(x)
    return ctx.pow(_selector_base(ctx, ctx.m, spec.a, t, g(t)), ctx.q - 1)


# -- public evaluators --------------------------------------------------------

def eval_inv_gbipp_closed(spec: LaigleChapuySpec, g: SubfieldInverse, x: int) -> int:
    ctx = spec.ctx
    return closed_inverse(ctx, ctx.N, ctx.m, spec.a, g, x)


def eval_inv_gbipp_piecewise(spec: LaigleChapuySpec, g: SubfieldInverse, x: int) -> int:
    ctx = spec.ctx
    return piecewise_inverse(ctx, ctx.N, ctx.m, spec.a, g, x)


def eval_inv_bipp(ctx: FieldCtx, a: int, x: int) -> int:
    """Inverse of x (Tr(x) + a x), written directly in terms of a and 1 + a."""
    BlokhuisSpec(ctx, a)
    return _inv_bipp(ctx, a, x)


def _inv_bipp(ctx: FieldCtx, a: int, x: int) -> int:
    m, n = ctx.m, ctx.n
    half = 1 << (m - 1)
    b = 1 ^ a
    t = ctx.trace_to(x)
    A = ctx.pow(a, half - 1)

    acc = ctx.mul(A, ctx.pow(x, 1 << (n * m - 1)))
    acc ^= ctx.mul(ctx.pow(b, half - 1), ctx.pow(t, half))
    tail = 0
    for k in range(1, (n - 1) // 2 + 1):
        tail ^= ctx.pow(x, 1 << ((2 * k - 1) * m - 1))
    acc ^= ctx.mul(ctx.mul(A, ctx.pow(t, half * ((1 << m) - 1))), tail)

    xs = _half_sum(ctx, x, ctx.N, m)
    for j in range(m - 1):
        coef = ctx.mul(ctx.pow(a, (1 << j) - 1), ctx.pow(b, half + (1 << j) - 1))
        coef = ctx.mul(coef, ctx.pow(t, half - (1 << j)))
        acc ^= ctx.mul(coef, ctx.frobenius(xs, j))
    return acc


def blokhuis_as_laigle_chapuy(ctx: FieldCtx, a: int) -> LaigleChapuySpec:
    """The Laigle-Chapuy spec with L(x) = x and parameter a/(1+a)."""
    return LaigleChapuySpec(ctx, ctx.div(a, 1 ^ a), LinearizedPoly.identity(ctx))


def eval_inv_tower(spec: TowerSpec, i: int, x: int) -> int:
    """F_i^{-1}: (x/c_0)^u at level 1, the closed form one level down otherwise."""
    spec.require_level_element(i, x)
    return _inv_tower(spec, i, x)


def _inv_tower(spec: TowerSpec, i: int, x: int) -> int:
    ctx = spec.ctx
    if i == 1:
        return ctx.pow(ctx.mul(x, ctx.inv(spec.c0)), spec.u)
    D, d = spec.degree(i), spec.degree(i - 1)
    return closed_inverse(ctx, D, d, spec.partial_sum(i),
                          lambda t: _inv_tower(spec, i - 1, t), x)
