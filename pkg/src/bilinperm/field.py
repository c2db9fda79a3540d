"""Arithmetic in GF(2^N) as a single binary extension of GF(2).

Field elements are plain Python ints: bit i is the coefficient of t^i in
the polynomial basis, so 0 and 1 are the zero and one of every field and
addition is ``^``.  A :class:`FieldCtx` fixes the modulus and carries the
subfield degree ``m`` (q = 2^m) used by the permutation constructions,
with ``N = m * n``.

Multiplication is carry-less multiplication reduced by the modulus.  For
N up to :data:`TABLE_LIMIT` the context also builds exp/log tables over a
primitive element, which every hot path uses; the carry-less kernel stays
available as :func:`clmul_mod` and is what the tables are checked against.
"""

from __future__ import annotations

from .errors import DivisionByZero, FieldError, FieldTooLarge, InvalidSubfield

# Lexicographically smallest irreducible polynomial of each degree over GF(2).
IRREDUCIBLE = {
    1: 0x2, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B, 17: 0x20009, 18: 0x40009, 19: 0x80027,
    20: 0x100009,
}

DEFAULT_ENUM_BOUND = 20
TABLE_LIMIT = 20


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[t] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length()
    while a.bit_length() >= df:
        a ^= f << (a.bit_length() - df)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def clmul_mod(a: int, b: int, f: int) -> int:
    """Product of ``a`` and ``b`` in GF(2)[t]/(f)."""
    N = f.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> N) & 1:
            a ^= f
    return r


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's test: t^(2^N) = t mod f, and gcd(t^(2^(N/p)) - t, f) = 1 for primes p | N."""
    N = f.bit_length() - 1
    if N < 1:
        return False
    if N == 1:
        return True
    t = 0b10

    def frob(k):
        y = t
        for _ in range(k):
            y = clmul_mod(y, y, f)
        return y

    if frob(N) != t:
        return False
    return all(poly_gcd(f, frob(N // p) ^ t) == 1 for p in prime_factors(N))


def smallest_irreducible(N: int) -> int:
    if N in IRREDUCIBLE:
        return IRREDUCIBLE[N]
    for f in range(1 << N, 1 << (N + 1)):
        if is_irreducible(f):
            return f
    raise FieldError(f"no irreducible polynomial of degree {N}")  # pragma: no cover


class FieldCtx:
    """GF(2^N) with a fixed irreducible modulus and a distinguished subfield GF(2^m).

    Immutable after construction; every method is a pure function of its
    arguments.
    """

    def __init__(self, N: int, modulus: int | None = None, m: int | None = None):
        if N < 1:
            raise FieldError(f"extension degree must be positive, got {N}")
        if modulus is None:
            modulus = smallest_irreducible(N)
        if modulus.bit_length() - 1 != N:
            raise FieldError(f"modulus {modulus:#x} does not have degree {N}")
        if not is_irreducible(modulus):
            raise FieldError(f"modulus {modulus:#x} is reducible over GF(2)")
        if m is None:
            m = N
        if m < 1 or N % m:
            raise InvalidSubfield(f"subfield degree m={m} does not divide N={N}")
        self.N = N
        self.modulus = modulus
        self.m = m
        self.n = N // m
        self.q = 1 << m
        self.order = 1 << N
        self._exp = self._log = None
        self._linear_cache = {}
        self.generator = self._find_generator()
        if N <= TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers -------------------------------------------

    def _pow_slow(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = clmul_mod(r, x, self.modulus)
            e >>= 1
            x = clmul_mod(x, x, self.modulus)
        return r

    def _find_generator(self) -> int:
        group = self.order - 1
        if group == 1:
            return 1
        cofactors = [group // p for p in prime_factors(group)]
        for g in range(2, self.order):
            if all(self._pow_slow(g, c) != 1 for c in cofactors):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _build_tables(self):
        group = self.order - 1
        exp = [0] * (2 * group + 1)
        log = [0] * self.order
        x = 1
        for i in range(group):
            exp[i] = x
            log[x] = i
            x = clmul_mod(x, self.generator, self.modulus)
        for i in range(group, 2 * group + 1):
            exp[i] = exp[i - group]
        self._exp, self._log = exp, log

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.N, self.modulus, self.m) == (
            other.N, other.modulus, other.m)

    def __hash__(self):
        return hash((self.N, self.modulus, self.m))

    def __repr__(self):
        return f"FieldCtx({self.descriptor()!r})"

    def descriptor(self) -> str:
        """Serialize as ``gf2:N:modulus-hex[:m]`` (``m`` omitted when m = N)."""
        s = f"gf2:{self.N}:{self.modulus:x}"
        if self.m != self.N:
            s += f":{self.m}"
        return s

    @classmethod
    def from_descriptor(cls, text: str) -> "FieldCtx":
        parts = text.strip().split(":")
        if parts[0] != "gf2" or len(parts) not in (2, 3, 4):
            raise FieldError(f"bad field descriptor {text!r}")
        N = int(parts[1])
        modulus = int(parts[2], 16) if len(parts) > 2 and parts[2] else None
        m = int(parts[3]) if len(parts) > 3 else None
        return cls(N, modulus, m)

    def with_subfield(self, m: int) -> "FieldCtx":
        """Same field, different distinguished subfield degree."""
        if m == self.m:
            return self
        ctx = object.__new__(FieldCtx)
        ctx.__dict__.update(self.__dict__)
        if m < 1 or self.N % m:
            raise InvalidSubfield(f"subfield degree m={m} does not divide N={self.N}")
        ctx.m, ctx.n, ctx.q = m, self.N // m, 1 << m
        return ctx

    # -- element I/O ------------------------------------------------------

    def check(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise FieldError(f"{x:#x} is not an element of GF(2^{self.N})")
        return x

    def to_hex(self, x: int) -> str:
        return format(x, "x")

    def from_hex(self, text: str) -> int:
        return self.check(int(text, 16))

    # -- arithmetic -------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self._log is None:
            return clmul_mod(x, y, self.modulus)
        return self._exp[self._log[x] + self._log[y]]

    def sqr(self, x: int) -> int:
        return self.mul(x, x)

    def pow(self, x: int, e: int) -> int:
        """x**e with the convention pow(x, 0) = 1 for every x, including 0."""
        if e < 0:
            raise ValueError("negative exponent; use inv/inv_checked")
        if e == 0:
            return 1
        if x == 0:
            return 0
        if self._log is None:
            return self._pow_slow(x, e % (self.order - 1) or (self.order - 1))
        return self._exp[(self._log[x] * e) % (self.order - 1)]

    def inv(self, x: int) -> int:
        """Total inverse x^(2^N - 2); sends 0 to 0."""
        return self.pow(x, self.order - 2) if x else 0

    def inv_checked(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return self.inv(x)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv_checked(y))

    def frobenius(self, x: int, k: int) -> int:
        """x^(2^(k mod N))."""
        if x == 0:
            return 0
        if self._log is None:
            return self.pow(x, 1 << (k % self.N))
        return self._exp[(self._log[x] << (k % self.N)) % (self.order - 1)]

    def sqrt(self, x: int) -> int:
        return self.frobenius(x, self.N - 1)

    def _check_divisor(self, d: int):
        if d < 1 or self.N % d:
            raise InvalidSubfield(f"{d} does not divide N={self.N}")

    def trace_to(self, x: int, d: int | None = None) -> int:
        """Trace from GF(2^N) down to GF(2^d); ``d`` defaults to ``m``."""
        if d is None:
            d = self.m
        self._check_divisor(d)
        return self.relative_trace(x, self.N, d)

    def relative_trace(self, x: int, D: int, d: int) -> int:
        """Trace from the subfield GF(2^D) to GF(2^d), for d | D | N.

        ``x`` is assumed to lie in GF(2^D); the sum is x + x^(2^d) + ... over D/d terms.
        """
        chunks = self._linear_cache.get(("trace", D, d))
        if chunks is None:
            self._check_divisor(D)
            if d < 1 or D % d:
                raise InvalidSubfield(f"{d} does not divide {D}")

            def tr(x):
                s = 0
                for _ in range(D // d):
                    s ^= x
                    x = self.frobenius(x, d)
                return s

            chunks = self._chunk_tables(tr)
            self._linear_cache[("trace", D, d)] = chunks
        out = 0
        for i, table in enumerate(chunks):
            out ^= table[(x >> (8 * i)) & 0xFF]
        return out

    def _chunk_tables(self, f) -> list[list[int]]:
        """Byte-indexed lookup tables for a GF(2)-linear map ``f``."""
        tables = []
        for lo in range(0, self.N, 8):
            width = min(8, self.N - lo)
            basis = [f(1 << (lo + b)) for b in range(width)]
            table = [0] * (1 << width)
            for v in range(1, 1 << width):
                low = v & -v
                table[v] = table[v ^ low] ^ basis[low.bit_length() - 1]
            tables.append(table)
        return tables

    def is_in_subfield(self, x: int, d: int | None = None) -> bool:
        if d is None:
            d = self.m
        self._check_divisor(d)
        return self.frobenius(x, d) == x

    def require_subfield(self, x: int, d: int, what: str = "element"):
        if not self.is_in_subfield(x, d):
            raise InvalidSubfield(f"{what} {x:#x} is not in GF(2^{d})")

    # -- enumeration ------------------------------------------------------

    def elements(self, bound: int = DEFAULT_ENUM_BOUND) -> range:
        """All 2^N elements in bit-pattern order."""
        if self.N > bound:
            raise FieldTooLarge(f"N={self.N} exceeds enumeration bound {bound}")
        return range(self.order)

    def subfield_elements(self, d: int | None = None) -> list[int]:
        """Sorted elements of GF(2^d), generated by g^((2^N-1)/(2^d-1)) plus zero."""
        if d is None:
            d = self.m
        self._check_divisor(d)
        h = self.pow(self.generator, (self.order - 1) // ((1 << d) - 1))
        out = [0]
        x = 1
        for _ in range((1 << d) - 1):
            out.append(x)
            x = self.mul(x, h)
        return sorted(out)
