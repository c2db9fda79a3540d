"""Linearized polynomials L(x) = sum a_i x^(2^(s*i)) over a FieldCtx."""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .errors import FieldError, InvalidSubfield
from .field import FieldCtx


@dataclass(frozen=True)
class LinearizedPoly:
    """Coefficients ``(a_0, ..., a_{k-1})`` with base power 2^step.

    ``step = ctx.m`` gives a q-linearized polynomial, ``step = 1`` a
    2-linearized one.
    """

    ctx: FieldCtx
    step: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.step < 1 or self.ctx.N % self.step:
            raise InvalidSubfield(f"step {self.step} does not divide N={self.ctx.N}")
        object.__setattr__(self, "coeffs", tuple(self.ctx.check(a) for a in self.coeffs))

    @classmethod
    def identity(cls, ctx: FieldCtx, step: int | None = None) -> "LinearizedPoly":
        return cls(ctx, ctx.m if step is None else step, (1,))

    @classmethod
    def trace(cls, ctx: FieldCtx, d: int | None = None) -> "LinearizedPoly":
        """The trace map GF(2^N) -> GF(2^d) as a d-linearized polynomial."""
        d = ctx.m if d is None else d
        return cls(ctx, d, (1,) * (ctx.N // d))

    def __call__(self, x: int) -> int:
        return eval_lin(self, x)

    def serialize(self) -> str:
        return f"lin:{self.step}:" + ",".join(self.ctx.to_hex(a) for a in self.coeffs)

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str) -> "LinearizedPoly":
        parts = text.strip().split(":")
        if len(parts) != 3 or parts[0] != "lin":
            raise FieldError(f"bad linearized polynomial {text!r}")
        coeffs = tuple(ctx.from_hex(h) for h in parts[2].split(",") if h)
        return cls(ctx, int(parts[1]), coeffs)


def eval_lin(L: LinearizedPoly, x: int) -> int:
    ctx = L.ctx
    acc = 0
    for i, a in enumerate(L.coeffs):
        if a:
            acc ^= ctx.mul(a, ctx.frobenius(x, L.step * i))
    return acc


def dickson_matrix(L: LinearizedPoly) -> list[list[int]]:
    """D_L with entry (r, c) = a_{(c-r) mod n}^(q^r), q = 2^step, n = N/step."""
    ctx = L.ctx
    n = ctx.N // L.step
    if len(L.coeffs) > n:
        raise FieldError(f"{len(L.coeffs)} coefficients exceed n={n}")
    a = list(L.coeffs) + [0] * (n - len(L.coeffs))
    return [[ctx.frobenius(a[(c - r) % n], L.step * r) for c in range(n)] for r in range(n)]


def field_det(ctx: FieldCtx, M: list[list[int]]) -> int:
    """Determinant over GF(2^N) by cofactor expansion along the first row.

    Exponential in the size; intended for n <= 4 cross-checks.
    """
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    det = 0
    for c in range(n):
        if M[0][c]:
            minor = [row[:c] + row[c + 1:] for row in M[1:]]
            det ^= ctx.mul(M[0][c], field_det(ctx, minor))
    return det


def evaluation_matrix(L: LinearizedPoly) -> list[int]:
    """Images of the GF(2)-basis 1, t, ..., t^(N-1) under L."""
    return gf2.basis_images(L.ctx.N, L)


def is_permutation_linear(L: LinearizedPoly) -> bool:
    return gf2.rank(evaluation_matrix(L)) == L.ctx.N


def kernel_basis(L: LinearizedPoly) -> list[int]:
    # a null-space mask over basis inputs is itself the kernel element
    return gf2.null_space(evaluation_matrix(L))


def span(vectors) -> set[int]:
    out = {0}
    for v in vectors:
        out |= {w ^ v for w in out}
    return out
