"""Integer-coefficient polynomials in omega and non-square permanents.

Matrices handled here are *patterns*: each entry is ``None`` (zero) or a
non-negative integer j standing for omega^j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import ShapeError


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients, constant first."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def from_terms(cls, terms: dict) -> IntPoly:
        if not terms:
            return cls()
        out = [0] * (max(terms) + 1)
        for exp, c in terms.items():
            out[exp] += c
        return cls(tuple(out))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: IntPoly) -> IntPoly:
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def specialize(self, field, omega):
        """Evaluate at ``omega`` in ``field``, mapping integers through the prime subfield."""
        acc = field.zero
        for c in reversed(self.coeffs):
            acc = field.add(field.mul(acc, omega), _int_to_field(field, c))
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for exp in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[exp]
            if not c:
                continue
            mono = "" if exp == 0 else ("w" if exp == 1 else f"w^{exp}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def _int_to_field(field, c: int):
    # integers live in the prime subfield: n -> n * 1
    base = getattr(field, "base", field)
    ch = base.characteristic
    value = c % ch
    if hasattr(field, "from_base"):
        return field.from_base(value)
    return value


def intpoly_permanent(pattern: Sequence[Sequence]) -> IntPoly:
    """Permanent of an r×t pattern (t <= r): sum over column-to-row injections.

    Dynamic programming over columns; the state is the set of rows already used.
    """
    r = len(pattern)
    t = len(pattern[0]) if r else 0
    if t > r:
        raise ShapeError(f"permanent needs t <= r, got a {r}x{t} pattern")
    states = {0: {0: 1}}  # used-row mask -> {omega exponent: count}
    for j in range(t):
        nxt: dict = {}
        for used, poly in states.items():
            for i in range(r):
                exp = pattern[i][j]
                if exp is None or used >> i & 1:
                    continue
                target = nxt.setdefault(used | 1 << i, {})
                for e, c in poly.items():
                    target[e + exp] = target.get(e + exp, 0) + c
        states = nxt
    total: dict = {}
    for poly in states.values():
        for e, c in poly.items():
            total[e] = total.get(e, 0) + c
    return IntPoly.from_terms(total)
