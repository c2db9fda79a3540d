"""Inverse computation through the direct sum GF(q^n) = F_q + ker Tr.

Under x -> (Tr(x), x + Tr(x)) the Laigle-Chapuy map becomes the
triangular system (y, z) -> (y L(y), a z^2 + (L(y) + a y) z), whose first
coordinate ignores z.  Inverting it needs g on F_q and the inverse of
P_c(z) = z^2 + c z on ker Tr.  This path never touches the closed-form
evaluators in :mod:`bilinperm.inverses`, so comparing the two is a real
cross-check.

Functions that work on a nested pair GF(2^m) < GF(2^D) inside the context
take ``m`` and ``D`` explicitly, defaulting to ``ctx.m`` and ``ctx.N``;
the tower variant reuses them one level at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .errors import FieldError, InvalidParameter, InvalidSplit
from .field import FieldCtx
from .inverses import SubfieldInverse, invert_on_subfield
from .linearized import eval_lin
from .perms import LaigleChapuySpec, TowerSpec, _L_level


@dataclass(frozen=True)
class SplitPoint:
    y: int
    z: int


def _levels(ctx: FieldCtx, m, D):
    return (ctx.m if m is None else m), (ctx.N if D is None else D)


def validate_split(ctx: FieldCtx, pt: SplitPoint, m=None, D=None) -> SplitPoint:
    m, D = _levels(ctx, m, D)
    if not ctx.is_in_subfield(pt.y, m):
        raise InvalidSplit(f"y = {pt.y:#x} is not in GF(2^{m})")
    if not ctx.is_in_subfield(pt.z, D) or ctx.relative_trace(pt.z, D, m):
        raise InvalidSplit(f"z = {pt.z:#x} is not in ker T_{D}:{m}")
    return pt


def phi(ctx: FieldCtx, x: int) -> SplitPoint:
    if ctx.n % 2 == 0:
        raise InvalidParameter("direct sum needs n odd", "n odd")
    t = ctx.trace_to(x)
    return SplitPoint(t, x ^ t)


def phi_inv(ctx: FieldCtx, pt: SplitPoint) -> int:
    validate_split(ctx, pt)
    return pt.y ^ pt.z


def triangular_forward(spec: LaigleChapuySpec, pt: SplitPoint) -> SplitPoint:
    ctx, a = spec.ctx, spec.a
    y, z = pt.y, pt.z
    Ly = eval_lin(spec.L, y)
    return SplitPoint(ctx.mul(y, Ly), ctx.mul(a, ctx.sqr(z)) ^ ctx.mul(Ly ^ ctx.mul(a, y), z))


def _check_c(ctx: FieldCtx, c: int, m: int):
    if c == 0 or not ctx.is_in_subfield(c, m):
        raise InvalidParameter(f"c = {c:#x} is not in GF(2^{m})*", "c in F_q*")


def _check_kernel(ctx: FieldCtx, w: int, m: int, D: int):
    if not ctx.is_in_subfield(w, D) or ctx.relative_trace(w, D, m):
        raise InvalidSplit(f"{w:#x} is not in ker T_{D}:{m}")


def p_c_eval(ctx: FieldCtx, c: int, z: int, m=None, D=None) -> int:
    m, D = _levels(ctx, m, D)
    _check_c(ctx, c, m)
    _check_kernel(ctx, z, m, D)
    return ctx.sqr(z) ^ ctx.mul(c, z)


def p_c_inverse(ctx: FieldCtx, c: int, w: int, m=None, D=None) -> int:
    """sum_{j<m} c^-(2^(j+1)-1) (sum_{k=0}^{(n-1)/2} w^(q^(2k)))^(2^j), valid on ker Tr only."""
    m, D = _levels(ctx, m, D)
    _check_c(ctx, c, m)
    _check_kernel(ctx, w, m, D)
    ws = 0
    for k in range((D // m - 1) // 2 + 1):
        ws ^= ctx.frobenius(w, 2 * k * m)
    c_inv = ctx.inv(c)
    acc = 0
    for j in range(m):
        acc ^= ctx.mul(ctx.pow(c_inv, (1 << (j + 1)) - 1), ctx.frobenius(ws, j))
    return acc


def p_c_inverse_linear_solve(ctx: FieldCtx, c: int, w: int, m=None, D=None) -> int:
    """Preimage of ``w`` under P_c inside ker Tr, by GF(2) elimination.

    Solves P_c(z) = w subject to z in GF(2^D) and T_{D:m}(z) = 0.  The
    stacked map is injective: the only nonzero root of P_c is c, and the
    trace of c is c itself.
    """
    m, D = _levels(ctx, m, D)
    _check_c(ctx, c, m)
    N = ctx.N

    def stacked(z):
        in_field = ctx.frobenius(z, D) ^ z
        return ((ctx.sqr(z) ^ ctx.mul(c, z)) | (in_field << N)
                | (ctx.relative_trace(z, D, m) << (2 * N)))

    sol = gf2.solve(gf2.basis_images(N, stacked), w)
    if sol is None:
        raise InvalidSplit(f"{w:#x} has no preimage in ker T_{D}:{m}")
    return sol


def recurrence_rhs(i: int, m: int) -> int:
    """1 when i = k m for some 1 <= k, else 0 (caller keeps i < D)."""
    return 1 if i >= m and i % m == 0 else 0


def check_recurrence(ctx: FieldCtx, c: int, d: list[int], m=None) -> bool:
    """d_{i-1}^2 + c d_i equals the indicator of i = k m (1 <= k <= n-1), cyclically."""
    m = ctx.m if m is None else m
    D = len(d)
    return all(ctx.sqr(d[i - 1]) ^ ctx.mul(c, d[i]) == recurrence_rhs(i, m) for i in range(D))


def p_c_inverse_coeffs_closed(ctx: FieldCtx, c: int, m=None, D=None) -> list[int]:
    """d_{km+j} = c^-(2^(j+1)-1) for even k, 0 for odd k."""
    m, D = _levels(ctx, m, D)
    c_inv = ctx.inv(c)
    return [ctx.pow(c_inv, (1 << (i % m + 1)) - 1) if (i // m) % 2 == 0 else 0
            for i in range(D)]


def p_c_inverse_coeffs(ctx: FieldCtx, c: int, m=None, D=None) -> list[int]:
    """Coefficients d_0..d_{D-1} of P_c^{-1} = sum d_i x^(2^i), from the cyclic recurrence.

    Forward substitution expresses every d_i through a trial d_0; closing the
    cycle (the i = 0 equation) leaves a GF(2)-affine condition on d_0.  That
    condition alone does not pin d_0 down: adding c Tr(t x / c) to any
    solution gives another, and those terms vanish on ker Tr.  The solution
    with d_m = 0 (the first odd block empty) is selected, which makes it
    unique.
    """
    m, D = _levels(ctx, m, D)
    _check_c(ctx, c, m)
    if D // m < 3:
        raise InvalidParameter("ker Tr is trivial for n = 1", "n >= 3")
    c_inv = ctx.inv(c)
    N = ctx.N

    def substitute(d0):
        d = [d0]
        for i in range(1, D):
            d.append(ctx.mul(ctx.sqr(d[-1]) ^ recurrence_rhs(i, m), c_inv))
        return d

    def constraints(d0):
        d = substitute(d0)
        closure = ctx.sqr(d[-1]) ^ ctx.mul(c, d[0])
        return closure | (d[m] << N)

    base = constraints(0)
    images = [constraints(1 << b) ^ base for b in range(N)]
    pivots, kernel = gf2.eliminate(images)
    if kernel:
        raise FieldError("recurrence does not determine d_0")  # pragma: no cover
    d0 = gf2.solve(images, base, pivots)
    if d0 is None:
        raise FieldError("recurrence is inconsistent")  # pragma: no cover
    d = substitute(d0)
    if d != p_c_inverse_coeffs_closed(ctx, c, m, D):
        raise FieldError("recurrence solution disagrees with the closed form")  # pragma: no cover
    return d


def eval_coeffs(ctx: FieldCtx, d: list[int], x: int) -> int:
    acc = 0
    for i, di in enumerate(d):
        if di:
            acc ^= ctx.mul(di, ctx.frobenius(x, i))
    return acc


def triangular_inverse(spec: LaigleChapuySpec, g: SubfieldInverse, pt: SplitPoint) -> SplitPoint:
    ctx, a = spec.ctx, spec.a
    Y, Z = pt.y, pt.z
    y = g(Y)
    a_inv = ctx.inv(a)
    sel = ctx.mul(Y, ctx.pow(y, ctx.q - 2)) ^ ctx.mul(a, y)
    if sel == 0:
        return SplitPoint(ctx.sqrt(ctx.mul(Y, a_inv)), ctx.sqrt(ctx.mul(Z, a_inv)))
    # a z^2 + (L(y) + a y) z = Z  <=>  P_c(z) = Z/a with c = sel/a
    return SplitPoint(y, p_c_inverse(ctx, ctx.mul(sel, a_inv), ctx.mul(Z, a_inv)))


def inverse_via_decomposition(spec: LaigleChapuySpec, g: SubfieldInverse, X: int) -> int:
    ctx = spec.ctx
    return phi_inv(ctx, triangular_inverse(spec, g, phi(ctx, X)))


def vanishing_cross_term(spec: LaigleChapuySpec, g: SubfieldInverse, X: int) -> int:
    """sum_j a^(2^j-1) Tr(X)^(2^j) / S^(2^(j+1)-1) for nonzero selector S, else 0.

    Zero for every X; this is the simplification that turns the
    decomposition-path inverse into the closed form.
    """
    ctx, a = spec.ctx, spec.a
    t = ctx.trace_to(X)
    g_t = g(t)
    s = ctx.mul(t, ctx.pow(g_t, ctx.q - 2)) ^ ctx.mul(a, g_t)
    if s == 0:
        return 0
    s_inv = ctx.inv(s)
    acc = 0
    for j in range(ctx.m):
        term = ctx.mul(ctx.pow(a, (1 << j) - 1), ctx.frobenius(t, j))
        acc ^= ctx.mul(term, ctx.pow(s_inv, (1 << (j + 1)) - 1))
    return acc


def aux_trace_lemma_check(r: int) -> bool:
    """Absolute trace of 1/(e + 1/e) vanishes on all of GF(2^r), with 1/0 read as 0."""
    ctx = FieldCtx(r)
    for e in ctx.elements():
        if ctx.trace_to(ctx.inv(e ^ ctx.inv(e)), 1):
            return False
    return True


# -- tower variant ------------------------------------------------------------

def tower_split(spec: TowerSpec, x: int) -> list[int]:
    """x -> (x_0, ..., x_h) with x_0 = T_{n:d_1}(x), x_i = T_{n:d_(i+1)}(x) + T_{n:d_i}(x)."""
    ctx = spec.ctx
    traces = [ctx.trace_to(x, spec.degree(i)) for i in range(1, spec.h + 2)]
    return [traces[0]] + [traces[i] ^ traces[i - 1] for i in range(1, spec.h + 1)]


def _check_components(spec: TowerSpec, xs):
    ctx = spec.ctx
    if len(xs) != spec.h + 1:
        raise InvalidSplit(f"expected {spec.h + 1} components, got {len(xs)}")
    if not ctx.is_in_subfield(xs[0], spec.degree(1)):
        raise InvalidSplit(f"x_0 = {xs[0]:#x} is not in GF(2^{spec.degree(1)})")
    for i in range(1, spec.h + 1):
        lo, hi = spec.degree(i), spec.degree(i + 1)
        if not ctx.is_in_subfield(xs[i], hi) or ctx.relative_trace(xs[i], hi, lo):
            raise InvalidSplit(f"x_{i} = {xs[i]:#x} is not in ker T_{hi}:{lo}")


def tower_join(spec: TowerSpec, xs) -> int:
    _check_components(spec, xs)
    acc = 0
    for v in xs:
        acc ^= v
    return acc


def tower_triangular_system(spec: TowerSpec, xs) -> list[int]:
    """(x_0 L_1(x_0), ..., x_i [L_i(y_i) + s_i y_i] + s_i x_i^2, ...) with y_i = x_0 + ... + x_(i-1), s_i = c_1 + ... + c_i."""
    _check_components(spec, xs)
    ctx = spec.ctx
    out = [ctx.mul(xs[0], _L_level(spec, 1, xs[0]))]
    y = xs[0]
    for i in range(1, spec.h + 1):
        s = spec.partial_sum(i + 1)
        inner = _L_level(spec, i, y) ^ ctx.mul(s, y)
        out.append(ctx.mul(xs[i], inner) ^ ctx.mul(s, ctx.sqr(xs[i])))
        y ^= xs[i]
    return out


def tower_triangular_inverse(spec: TowerSpec, Ys, base: SubfieldInverse | None = None) -> list[int]:
    """Invert the tower system one component at a time.

    The bottom component is inverted by table lookup (``base``, built by
    brute force over GF(2^d_1) when omitted); each later one is a P_c
    inversion on ker T_{d_(i+1):d_i}.
    """
    _check_components(spec, Ys)
    ctx = spec.ctx
    if base is None:
        base = tower_base_inverse(spec)
    xs = [base(Ys[0])]
    y = xs[0]
    for i in range(1, spec.h + 1):
        s = spec.partial_sum(i + 1)
        s_inv = ctx.inv(s)
        c = ctx.mul(_L_level(spec, i, y), s_inv) ^ y
        w = ctx.mul(Ys[i], s_inv)
        if c == 0:
            xi = ctx.sqrt(w)
        else:
            xi = p_c_inverse(ctx, c, w, spec.degree(i), spec.degree(i + 1))
        xs.append(xi)
        y ^= xi
    return xs


def tower_base_inverse(spec: TowerSpec) -> SubfieldInverse:
    ctx = spec.ctx
    return invert_on_subfield(ctx, lambda v: ctx.mul(v, _L_level(spec, 1, v)), spec.degree(1))


def tower_inverse_via_decomposition(spec: TowerSpec, X: int, base: SubfieldInverse | None = None) -> int:
    return tower_join(spec, tower_triangular_inverse(spec, tower_split(spec, X), base))
