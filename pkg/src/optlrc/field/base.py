"""Prime fields F_p and binary fields GF(2^s).

Elements are plain ``int``: residues ``0..p-1`` for prime fields and bit
patterns ``0..2^s-1`` (bit i = coefficient of x^i) for binary fields. The
integer value doubles as the canonical enumeration order of the field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import FieldMismatchError, ParamError, ZeroInverseError

PRIME = "prime"
BINARY = "binary"

# Fixed reduction polynomials for the byte-oriented binary fields.
BINARY_POLYS = {
    4: 0x13,  # x^4 + x + 1
    8: 0x11B,  # x^8 + x^4 + x^3 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def clmul_mod(a: int, b: int, poly: int, s: int) -> int:
    """Carry-less product of two GF(2^s) bit patterns reduced by ``poly``."""
    out = 0
    top = 1 << s
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return out


def _gf2_poly_is_irreducible(poly: int) -> bool:
    """Trial division of a GF(2)[x] bitmask polynomial by all lower degrees."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            # polynomial remainder over GF(2)
            rem = poly
            cdeg = cand.bit_length() - 1
            while rem and rem.bit_length() - 1 >= cdeg:
                rem ^= cand << (rem.bit_length() - 1 - cdeg)
            if rem == 0:
                return False
    return True


@dataclass(frozen=True)
class BaseField:
    kind: str
    order: int
    reduction_poly: int = 0

    def __post_init__(self):
        if self.kind == PRIME:
            if not is_prime(self.order):
                raise ParamError(f"prime field order {self.order} is not prime")
            if self.reduction_poly:
                raise ParamError("prime fields take no reduction polynomial")
        elif self.kind == BINARY:
            s = self.order.bit_length() - 1
            if s < 1 or self.order != 1 << s:
                raise ParamError(f"binary field order {self.order} is not a power of two")
            if self.reduction_poly.bit_length() - 1 != s:
                raise ParamError(f"reduction polynomial {self.reduction_poly:#x} must have degree {s}")
            if not _gf2_poly_is_irreducible(self.reduction_poly):
                raise ParamError(f"reduction polynomial {self.reduction_poly:#x} is reducible")
            self._build_tables(s)
        else:
            raise ParamError(f"unknown field kind {self.kind!r}")

    def _build_tables(self, s):
        q = self.order
        gen = None
        factors = prime_factors(q - 1) if q > 2 else []
        for g in range(1, q):
            if all(self._raw_pow(g, (q - 1) // f, s) != 1 for f in factors):
                gen = g
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = x
            log[x] = i
            x = clmul_mod(x, gen, self.reduction_poly, s)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        object.__setattr__(self, "generator", gen)

    def _raw_pow(self, a, e, s):
        out = 1
        while e:
            if e & 1:
                out = clmul_mod(out, a, self.reduction_poly, s)
            a = clmul_mod(a, a, self.reduction_poly, s)
            e >>= 1
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def prime(cls, p: int) -> BaseField:
        return cls(PRIME, p)

    @classmethod
    def binary(cls, s: int, reduction_poly: int | None = None) -> BaseField:
        if s < 1:
            raise ParamError("binary field degree must be positive")
        if reduction_poly is None:
            reduction_poly = BINARY_POLYS.get(s)
        if reduction_poly is None:
            from .poly import find_irreducible

            coeffs = find_irreducible(cls.prime(2), s)
            reduction_poly = sum(c << i for i, c in enumerate(coeffs))
        return cls(BINARY, 1 << s, reduction_poly)

    @classmethod
    def parse(cls, text: str) -> BaseField:
        """Parse a ``prime:<p>`` or ``gf2:<s>`` descriptor."""
        kind, _, arg = text.strip().partition(":")
        try:
            value = int(arg)
        except ValueError:
            raise ParamError(f"bad field descriptor {text!r}") from None
        if kind == "prime":
            return cls.prime(value)
        if kind == "gf2":
            return cls.binary(value)
        raise ParamError(f"bad field descriptor {text!r}; expected prime:<p> or gf2:<s>")

    @property
    def descriptor(self) -> str:
        if self.kind == PRIME:
            return f"prime:{self.order}"
        return f"gf2:{self.degree}"

    def __str__(self):
        return self.descriptor

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree over the prime subfield."""
        return 1 if self.kind == PRIME else self.order.bit_length() - 1

    @property
    def characteristic(self) -> int:
        return self.order if self.kind == PRIME else 2

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        """All elements in canonical order."""
        return range(self.order)

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.order

    def check(self, x) -> int:
        if x not in self:
            raise FieldMismatchError(f"{x!r} is not an element of {self}")
        return x

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return (a + b) % self.order
        return a ^ b

    def sub(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return (a - b) % self.order
        return a ^ b

    def neg(self, a: int) -> int:
        if self.kind == PRIME:
            return -a % self.order
        return a

    def mul(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return a * b % self.order
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverseError(f"zero has no inverse in {self}")
        if self.kind == PRIME:
            return pow(a, -1, self.order)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.kind == PRIME:
            return pow(a, e, self.order)
        if a == 0:
            return 0 if e else 1
        return self._exp[self._log[a] * e % (self.order - 1)]
