"""The three bilinear permutation families over GF(2^N).

* Blokhuis: f(x) = x (Tr(x) + a x), a in F_q minus {0, 1}.
* Laigle-Chapuy: F(x) = x (L(Tr(x)) + a Tr(x) + a x), a in F_q*, with
  x L(x) a permutation of F_q.
* Tower (Dempwolff-Mueller): F_{h+1}(x) = x L_{h+1}(x) built from a chain
  of subfields d_1 | d_2 | ... | d_h | n.

Every spec validates its hypotheses eagerly and raises
:class:`InvalidParameter` naming the one that failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidParameter, InvalidSubfield, NoInverse
from .field import FieldCtx
from .linearized import LinearizedPoly, eval_lin


def _require_odd_n(ctx: FieldCtx):
    if ctx.n % 2 == 0:
        raise InvalidParameter(f"n = N/m = {ctx.n} must be odd", "n odd")


@dataclass(frozen=True)
class BlokhuisSpec:
    ctx: FieldCtx
    a: int

    variant = "blokhuis"

    def __post_init__(self):
        ctx = self.ctx
        if ctx.q == 2:
            raise InvalidParameter(
                "parameter set F_2\\{0,1} is empty (q = 2)", "a in F_q\\{0,1}")
        _require_odd_n(ctx)
        if not ctx.is_in_subfield(self.a, ctx.m):
            raise InvalidParameter(f"a = {self.a:#x} is not in F_q", "a in F_q\\{0,1}")
        if self.a in (0, 1):
            raise InvalidParameter(f"a = {self.a} must avoid {{0, 1}}", "a in F_q\\{0,1}")

    def __call__(self, x: int) -> int:
        ctx = self.ctx
        return ctx.mul(x, ctx.relative_trace(x, ctx.N, ctx.m) ^ ctx.mul(self.a, x))


def eval_bipp(ctx: FieldCtx, a: int, x: int) -> int:
    return BlokhuisSpec(ctx, a)(x)


def permutes_subfield(ctx: FieldCtx, L: LinearizedPoly, d: int | None = None) -> bool:
    """Exhaustively test whether y -> y L(y) permutes GF(2^d)."""
    sub = ctx.subfield_elements(d)
    image = {ctx.mul(y, eval_lin(L, y)) for y in sub}
    return image == set(sub)


@dataclass(frozen=True)
class LaigleChapuySpec:
    ctx: FieldCtx
    a: int
    L: LinearizedPoly

    variant = "laigle-chapuy"

    def __post_init__(self):
        ctx = self.ctx
        _require_odd_n(ctx)
        if self.L.ctx != ctx:
            raise InvalidParameter("L is defined over a different field", "L over F_q")
        if not all(ctx.is_in_subfield(c, ctx.m) for c in self.L.coeffs):
            raise InvalidParameter("L has coefficients outside F_q", "L over F_q")
        if self.a == 0 or not ctx.is_in_subfield(self.a, ctx.m):
            raise InvalidParameter(f"a = {self.a:#x} is not in F_q*", "a in F_q*")
        if not permutes_subfield(ctx, self.L):
            raise InvalidParameter("x L(x) does not permute F_q", "x L(x) permutes F_q")
        # L(t) + a t only ever sees t = Tr(x) in F_q
        inner = {t: eval_lin(self.L, t) ^ ctx.mul(self.a, t) for t in ctx.subfield_elements()}
        object.__setattr__(self, "_inner", inner)

    def __call__(self, x: int) -> int:
        ctx = self.ctx
        t = ctx.relative_trace(x, ctx.N, ctx.m)
        return ctx.mul(x, self._inner[t] ^ ctx.mul(self.a, x))


def eval_gbipp(spec: LaigleChapuySpec, x: int) -> int:
    return spec(x)


def compute_u(d1: int, l: int) -> int:
    """Least positive u with u (2^l + 1) = 1 mod 2^d1 - 1."""
    M = (1 << d1) - 1
    e = (1 << l) + 1
    if gcd(M, e) != 1:
        raise NoInverse(f"gcd(2^{d1}-1, 2^{l}+1) = {gcd(M, e)} != 1")
    return pow(e, -1, M) or M


@dataclass(frozen=True)
class TowerSpec:
    """Chain d_1 | ... | d_h | n = ctx.N with coefficients c_0, c_1..c_h and exponent l.

    Levels are numbered 1..h+1; level i lives in GF(2^{d_i}) with d_{h+1} = n.
    """

    ctx: FieldCtx
    degrees: tuple[int, ...]
    cs: tuple[int, ...]
    l: int
    c0: int

    variant = "tower"

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        object.__setattr__(self, "cs", tuple(self.cs))
        ctx, ds, cs = self.ctx, self.degrees, self.cs
        if not ds or len(ds) != len(cs):
            raise InvalidParameter(
                "need h >= 1 degrees and exactly one c_i per degree", "h >= 1")
        chain = ds + (ctx.N,)
        for lo, hi in zip(chain, chain[1:]):
            if lo < 1 or hi % lo:
                raise InvalidParameter(
                    f"degree chain {chain} is not a divisor chain", "d_1 | d_2 | ... | d_h | n")
        # n/d_1 is the product of the chain quotients, so this also makes each one odd
        if (ctx.N // ds[0]) % 2 == 0:
            raise InvalidParameter(f"n/d_1 = {ctx.N // ds[0]} is even", "n/d_1 odd")
        d1 = ds[0]
        if not 1 <= self.l < d1:
            raise InvalidParameter(f"l = {self.l} not in [1, d_1)", "1 <= l < d_1")
        if gcd((1 << d1) - 1, (1 << self.l) + 1) != 1:
            raise InvalidParameter(
                f"gcd(2^{d1}-1, 2^{self.l}+1) != 1", "gcd(2^{d_1}-1, 2^l+1) = 1")
        if self.c0 == 0 or not ctx.is_in_subfield(self.c0, d1):
            raise InvalidParameter(f"c_0 = {self.c0:#x} not in F_(2^{d1})*", "c_0 in F_(2^d_1)*")
        total = 0
        for i, (d, c) in enumerate(zip(ds, cs), start=1):
            if c == 0 or not ctx.is_in_subfield(c, d):
                raise InvalidParameter(f"c_{i} = {c:#x} not in F_(2^{d})*", f"c_{i} in F_(2^d_{i})*")
            total ^= c
            if total == 0:
                raise InvalidParameter(
                    f"partial sum c_1 + ... + c_{i} = 0", "sum_(j<=i) c_j != 0")

    @property
    def h(self) -> int:
        return len(self.degrees)

    @property
    def u(self) -> int:
        return compute_u(self.degrees[0], self.l)

    def degree(self, i: int) -> int:
        """d_i for 1 <= i <= h+1."""
        self._check_level(i)
        return self.degrees[i - 1] if i <= self.h else self.ctx.N

    def partial_sum(self, i: int) -> int:
        """a_i = c_1 + ... + c_{i-1}."""
        s = 0
        for c in self.cs[: i - 1]:
            s ^= c
        return s

    def _check_level(self, i: int):
        if not 1 <= i <= self.h + 1:
            raise InvalidParameter(f"level {i} not in [1, {self.h + 1}]", "1 <= i <= h+1")

    def require_level_element(self, i: int, x: int):
        d = self.degree(i)
        if not self.ctx.is_in_subfield(x, d):
            raise InvalidSubfield(f"{x:#x} is not in level {i} field GF(2^{d})")

    def __call__(self, x: int) -> int:
        return eval_tower_F(self, self.h + 1, x)


def tower_L_direct(spec: TowerSpec, x: int) -> int:
    """L_{h+1}(x) = (sum c_i) x + sum c_i T_{n:d_i}(x) + c_0 T_{n:d_1}(x)^(2^l)."""
    ctx = spec.ctx
    total = spec.partial_sum(spec.h + 1)
    acc = ctx.mul(total, x)
    for d, c in zip(spec.degrees, spec.cs):
        acc ^= ctx.mul(c, ctx.trace_to(x, d))
    t1 = ctx.trace_to(x, spec.degrees[0])
    return acc ^ ctx.mul(spec.c0, ctx.frobenius(t1, spec.l))


def _L_level(spec: TowerSpec, i: int, x: int) -> int:
    ctx = spec.ctx
    if i == 1:
        return ctx.mul(spec.c0, ctx.frobenius(x, spec.l))
    t = ctx.relative_trace(x, spec.degree(i), spec.degree(i - 1))
    a = spec.partial_sum(i)
    return _L_level(spec, i - 1, t) ^ ctx.mul(a, t) ^ ctx.mul(a, x)


def tower_L_recursive(spec: TowerSpec, i: int, x: int) -> int:
    """L_i on GF(2^{d_i}): L_1(x) = c_0 x^(2^l), L_i(x) = L_{i-1}(T(x)) + a_i T(x) + a_i x."""
    spec.require_level_element(i, x)
    return _L_level(spec, i, x)


def eval_tower_F(spec: TowerSpec, i: int, x: int) -> int:
    spec.require_level_element(i, x)
    return spec.ctx.mul(x, _L_level(spec, i, x))


def tower_level_L(spec: TowerSpec, i: int) -> LinearizedPoly:
    """L_i written as a 2-linearized polynomial over GF(2^N) (coefficients read off by assembly).

    Only meaningful as a map on GF(2^{d_i}); used to feed level i into the
    Laigle-Chapuy machinery.
    """
    ctx = spec.ctx
    N = ctx.N
    coeffs = [0] * N
    if i == 1:
        coeffs[spec.l] = spec.c0
        return LinearizedPoly(ctx, 1, tuple(coeffs))
    prev = tower_level_L(spec, i - 1).coeffs
    D, d = spec.degree(i), spec.degree(i - 1)
    a = spec.partial_sum(i)
    # T_{D:d}(x) = sum_k x^(2^(d k)); L_{i-1}(T) expands term by term
    for k in range(D // d):
        s = d * k
        coeffs[s % N] ^= a
        for e, b in enumerate(prev):
            if b:
                coeffs[(e + s) % N] ^= b
    coeffs[0] ^= a
    return LinearizedPoly(ctx, 1, tuple(coeffs))
