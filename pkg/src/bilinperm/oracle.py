"""Brute-force ground truth on enumerable fields.

Tables are the canonical reference: a permutation is checked by
tabulating it, and every formula-path inverse is compared against the
inverse table.  Coefficient recovery by interpolation is a secondary
diagnostic and is vectorized with numpy over the context's exp/log tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import FieldError, FieldTooLarge
from .field import DEFAULT_ENUM_BOUND, FieldCtx

INTERPOLATION_BOUND = 12


@dataclass
class PermTable:
    ctx: FieldCtx
    forward: list[int]
    inverse: list[int] | None = None

    @property
    def bijective(self) -> bool:
        return self.inverse is not None


def _invert(order: int, forward: list[int]) -> list[int] | None:
    inverse = [-1] * order
    for x, y in enumerate(forward):
        if inverse[y] != -1:
            return None
        inverse[y] = x
    return inverse


def tabulate(ctx: FieldCtx, f: Callable[[int], int], bound: int = DEFAULT_ENUM_BOUND) -> PermTable:
    forward = [f(x) for x in ctx.elements(bound)]
    for y in forward:
        ctx.check(y)
    return PermTable(ctx, forward, _invert(ctx.order, forward))


def check_inverse_pair(ctx: FieldCtx, f, h, bound: int = DEFAULT_ENUM_BOUND) -> bool:
    return all(h(f(x)) == x and f(h(x)) == x for x in ctx.elements(bound))


def first_mismatch(ctx: FieldCtx, expected: list[int], h, bound: int = DEFAULT_ENUM_BOUND):
    """Count points where ``h`` disagrees with a reference table; return (count, first witness)."""
    count, witness = 0, None
    for x in ctx.elements(bound):
        if h(x) != expected[x]:
            count += 1
            if witness is None:
                witness = x
    return count, witness


# -- interpolation ------------------------------------------------------------

@lru_cache(maxsize=8)
def _np_tables(ctx: FieldCtx):
    if ctx._log is None:
        raise FieldTooLarge("exp/log tables unavailable for this field")
    return np.array(ctx._exp, dtype=np.int64), np.array(ctx._log, dtype=np.int64)


def _vmul(ctx: FieldCtx, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    exp, log = _np_tables(ctx)
    out = exp[log[x] + log[y]]
    out[(x == 0) | (y == 0)] = 0
    return out


def interpolate_coeffs(table: PermTable, bound: int = INTERPOLATION_BOUND) -> list[int]:
    """Coefficients c_0..c_{Q-1} of the reduced polynomial taking the table's values.

    Lagrange over the whole field collapses to c_0 = f(0) and
    c_k = sum_x f(x) x^(Q-1-k) for k >= 1 (characteristic 2, 0^0 = 1).
    """
    ctx = table.ctx
    if ctx.N > bound:
        raise FieldTooLarge(f"N={ctx.N} exceeds interpolation bound {bound}")
    Q = ctx.order
    group = Q - 1
    exp, log = _np_tables(ctx)
    f = np.array(table.forward, dtype=np.int64)
    coeffs = [int(f[0])]
    xs = np.arange(1, Q, dtype=np.int64)
    fx = f[1:]
    live = fx != 0
    log_x = log[xs[live]]
    log_f = log[fx[live]]
    for k in range(1, Q):
        # x^(Q-1-k) = x^(-k) for x != 0
        terms = exp[(log_f - k * log_x) % group]
        c = int(np.bitwise_xor.reduce(terms)) if terms.size else 0
        if k == group:
            c ^= int(f[0])
        coeffs.append(c)
    return coeffs


def evaluate_coeffs(ctx: FieldCtx, coeffs: list[int]) -> list[int]:
    """Evaluate sum c_k x^k at every field element (Horner, vectorized)."""
    if len(coeffs) > ctx.order:
        raise FieldError("more coefficients than field elements")
    xs = np.arange(ctx.order, dtype=np.int64)
    acc = np.zeros(ctx.order, dtype=np.int64)
    for c in reversed(coeffs):
        acc = _vmul(ctx, acc, xs) ^ c
    return [int(v) for v in acc]


# -- table I/O ----------------------------------------------------------------

def hex_width(ctx: FieldCtx) -> int:
    return max(1, (ctx.N + 3) // 4)


def byte_width(ctx: FieldCtx) -> int:
    return (ctx.N + 7) // 8


def to_hex_lines(ctx: FieldCtx, values: list[int]) -> str:
    w = hex_width(ctx)
    return "".join(f"{v:0{w}x}\n" for v in values)


def from_hex_lines(ctx: FieldCtx, text: str) -> list[int]:
    values = [ctx.from_hex(line) for line in text.split() if line]
    if len(values) != ctx.order:
        raise FieldError(f"expected {ctx.order} entries, got {len(values)}")
    return values


def to_bytes(ctx: FieldCtx, values: list[int]) -> bytes:
    w = byte_width(ctx)
    return b"".join(v.to_bytes(w, "little") for v in values)


def from_bytes(ctx: FieldCtx, data: bytes) -> list[int]:
    w = byte_width(ctx)
    if len(data) % w:
        raise FieldError("truncated binary table")
    return [ctx.check(int.from_bytes(data[i:i + w], "little")) for i in range(0, len(data), w)]
