"""Extension fields F_q[x]/(f) with the distinguished generator ``omega = x mod f``.

Elements are tuples of ``degree`` base-field ints, coefficient of omega^0
first. ``omega`` is not required to be primitive: every use in this package
only needs its minimal polynomial to have full degree, which holds for the
class of ``x`` whenever ``f`` is irreducible.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass

from ..errors import FieldMismatchError, ParamError, ZeroInverseError
from .base import PRIME, BaseField
from .poly import find_irreducible, is_irreducible, pinvmod

ExtElem = tuple


@dataclass(frozen=True)
class ExtField:
    base: BaseField
    modulus: tuple

    def __post_init__(self):
        f = tuple(self.modulus)
        object.__setattr__(self, "modulus", f)
        if len(f) < 2 or f[-1] != 1:
            raise ParamError("extension modulus must be monic of degree >= 1")
        if any(c not in self.base for c in f):
            raise ParamError("extension modulus has coefficients outside the base field")
        if not is_irreducible(list(f), self.base):
            raise ParamError(f"extension modulus {format_modulus(f)} is reducible over {self.base}")
        e = len(f) - 1
        red = tuple((j, self.base.neg(c)) for j, c in enumerate(f[:-1]) if c)
        object.__setattr__(self, "_red", red)
        if self.base.kind != PRIME:
            log = self.base._log
            object.__setattr__(self, "_red_log", tuple((j, log[c]) for j, c in red))
        object.__setattr__(self, "zero", (0,) * e)
        object.__setattr__(self, "one", (1,) + (0,) * (e - 1))

    @classmethod
    @functools.lru_cache(maxsize=None)
    def build(cls, base: BaseField, degree: int) -> ExtField:
        """Extension of the given degree over the first irreducible in scan order."""
        return cls(base, find_irreducible(base, degree))

    @classmethod
    def parse(cls, base_descriptor: str, modulus_text: str) -> ExtField:
        base = BaseField.parse(base_descriptor)
        try:
            coeffs = tuple(int(c) for c in modulus_text.split(","))
        except ValueError:
            raise ParamError(f"bad modulus {modulus_text!r}") from None
        return cls(base, coeffs)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self) -> int:
        return self.base.order**self.degree

    @property
    def omega(self) -> ExtElem:
        if self.degree == 1:
            return (self.base.neg(self.modulus[0]),)
        return (0, 1) + (0,) * (self.degree - 2)

    @property
    def modulus_text(self) -> str:
        return format_modulus(self.modulus)

    def __str__(self):
        return f"{self.base}[x]/({self.modulus_text})"

    # -- element handling ---------------------------------------------------

    def check(self, a) -> ExtElem:
        a = tuple(a)
        if len(a) != self.degree or any(c not in self.base for c in a):
            raise FieldMismatchError(f"{a!r} is not an element of {self}")
        return a

    def __contains__(self, a) -> bool:
        try:
            self.check(a)
        except (FieldMismatchError, TypeError):
            return False
        return True

    def from_base(self, c: int) -> ExtElem:
        return (c,) + (0,) * (self.degree - 1)

    def random_element(self, rng: random.Random) -> ExtElem:
        return tuple(rng.randrange(self.base.order) for _ in range(self.degree))

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        F = self.base
        if F.kind == PRIME:
            p = F.order
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(x ^ y for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.base
        if F.kind == PRIME:
            p = F.order
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(x ^ y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def scale(self, a, c: int):
        """Multiply by a base-field scalar."""
        mul = self.base.mul
        return tuple(mul(x, c) for x in a)

    def mul(self, a, b):
        if self.base.kind == PRIME:
            return self._mul_prime(a, b)
        return self._mul_binary(a, b)

    def _mul_prime(self, a, b):
        e = self.degree
        p = self.base.order
        prod = [0] * (2 * e - 1)
        nz = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if ai:
                for j, bj in nz:
                    prod[i + j] += ai * bj
        red = self._red
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i] % p
            if c:
                off = i - e
                for j, fj in red:
                    prod[off + j] += c * fj
        return tuple(c % p for c in prod[:e])

    def _mul_binary(self, a, b):
        e = self.degree
        exp, log = self.base._exp, self.base._log
        prod = [0] * (2 * e - 1)
        la = [(i, log[ai]) for i, ai in enumerate(a) if ai]
        for j, bj in enumerate(b):
            if bj:
                lb = log[bj]
                for i, lai in la:
                    prod[i + j] ^= exp[lai + lb]
        red = self._red_log
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i]
            if c:
                lc = log[c]
                off = i - e
                for j, lf in red:
                    prod[off + j] ^= exp[lc + lf]
        return tuple(prod[:e])

    def inv(self, a):
        if not any(a):
            raise ZeroInverseError(f"zero has no inverse in {self}")
        b = pinvmod(list(a), list(self.modulus), self.base)
        return tuple(b) + (0,) * (self.degree - len(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def mul_matrix(self, a):
        """Rows ``omega^t * a`` for t < degree: the base-field matrix M with v(b) M = v(a b)."""
        rows = [tuple(a)]
        for _ in range(self.degree - 1):
            rows.append(self.mul_by_omega(rows[-1]))
        return rows

    def mul_by_omega(self, a):
        e = self.degree
        top = a[-1]
        out = [0] + list(a[:-1])
        if top:
            for j, fj in self._red:
                out[j] = self.base.add(out[j], self.base.mul(top, fj))
        return tuple(out)

    def minimal_polynomial_degree(self, a) -> int:
        """Degree of the minimal polynomial of ``a`` over the base field."""
        from .linalg import Basis

        basis = Basis(self.base)
        power = self.one
        for d in range(self.degree + 1):
            if not basis.add(power):
                return d
            power = self.mul(power, a)
        raise AssertionError("unreachable: degree+1 powers are always dependent")


def format_modulus(coeffs) -> str:
    return ",".join(str(c) for c in coeffs)


def ext_mul(a, b, F: ExtField):
    """Validated product of two elements of ``F``."""
    return F.mul(F.check(a), F.check(b))


def ext_inv(a, F: ExtField):
    """Validated inverse; raises :class:`ZeroInverseError` for zero."""
    return F.inv(F.check(a))
