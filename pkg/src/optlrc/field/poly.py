"""Univariate polynomials over a :class:`BaseField` and irreducible search.

A polynomial is a list of base-field ints, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import functools

from ..errors import ZeroInverseError
from .base import PRIME, BaseField, prime_factors


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    return len(trim(a)) - 1


def padd(a, b, F: BaseField):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def psub(a, b, F: BaseField):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.sub(out[i], c)
    return trim(out)


def pscale(a, c, F: BaseField):
    return trim(F.mul(x, c) for x in a)


def pmul(a, b, F: BaseField):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    if F.kind == PRIME:
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        p = F.order
        return trim(c % p for c in out)
    mul = F.mul
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] ^= mul(ai, bj)
    return trim(out)


def pdivmod(a, b, F: BaseField):
    b = trim(b)
    if not b:
        raise ZeroInverseError("polynomial division by zero")
    rem = trim(a)
    n = len(b) - 1
    if len(rem) <= n:
        return [], rem
    quot = [0] * (len(rem) - n)
    lead_inv = F.inv(b[-1])
    terms = [(j, c) for j, c in enumerate(b[:-1]) if c]
    for i in range(len(rem) - 1, n - 1, -1):
        c = rem[i]
        if not c:
            continue
        c = F.mul(c, lead_inv)
        quot[i - n] = c
        rem[i] = 0
        for j, bj in terms:
            rem[i - n + j] = F.sub(rem[i - n + j], F.mul(c, bj))
    return trim(quot), trim(rem[:n])


def pmod(a, b, F: BaseField):
    return pdivmod(a, b, F)[1]


def monic(a, F: BaseField):
    a = trim(a)
    if not a:
        return a
    return pscale(a, F.inv(a[-1]), F)


def pgcd(a, b, F: BaseField):
    """Monic greatest common divisor."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, pmod(a, b, F)
    return monic(a, F)


def pinvmod(a, f, F: BaseField):
    """Inverse of ``a`` modulo ``f`` by the extended Euclidean algorithm."""
    r0, r1 = trim(f), pmod(a, f, F)
    s0, s1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, F), F)
    if len(r0) != 1:
        raise ZeroInverseError("element is not invertible modulo f")
    return pscale(s0, F.inv(r0[0]), F)


def ppowmod(a, e: int, f, F: BaseField):
    result = [1]
    base = pmod(a, f, F)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, F), f, F)
        base = pmod(pmul(base, base, F), f, F)
        e >>= 1
    return result


def evaluate(a, x: int, F: BaseField) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def frobenius_matrix(f, F: BaseField):
    """Rows ``x^(i*q) mod f`` for i < deg f, padded to length deg f.

    Since ``a^q = sum a_i x^(iq)`` for a over F_q, the map a -> a^q mod f is
    the row vector ``a`` times this matrix.
    """
    n = len(f) - 1
    h = ppowmod([0, 1], F.order, f, F)
    rows = []
    cur = [1]
    for _ in range(n):
        rows.append(cur + [0] * (n - len(cur)))
        cur = pmod(pmul(cur, h, F), f, F)
    return rows


def apply_frobenius(a, Q, F: BaseField):
    n = len(Q)
    out = [0] * n
    for ai, row in zip(a, Q):
        if ai:
            for j, c in enumerate(row):
                if c:
                    out[j] = F.add(out[j], F.mul(ai, c))
    return trim(out)


def _frobenius_orbit(f, F, steps):
    """x^(q^j) mod f for j = 0..steps."""
    Q = frobenius_matrix(f, F)
    out = [pmod([0, 1], f, F)]
    for _ in range(steps):
        out.append(apply_frobenius(out[-1], Q, F))
    return out


def is_irreducible(f, F: BaseField) -> bool:
    """Rabin's test: x^(q^n) = x mod f, and gcd(x^(q^(n/l)) - x, f) = 1 for primes l | n."""
    f = monic(f, F)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    orbit = _frobenius_orbit(f, F, n)
    x = pmod([0, 1], f, F)
    if orbit[n] != x:
        return False
    return all(pgcd(psub(orbit[n // ell], x, F), f, F) == [1] for ell in prime_factors(n))


def _frobenius(a, f, F: BaseField):
    """a^q mod f."""
    if F.kind == PRIME:
        return ppowmod(a, F.order, f, F)
    # characteristic 2: squaring is additive, so a^2 = sum a_i^2 x^(2i)
    for _ in range(F.degree):
        sq = [0] * (2 * len(a) - 1) if a else []
        for i, c in enumerate(a):
            if c:
                sq[2 * i] = F.mul(c, c)
        a = pmod(sq, f, F)
    return a


def _has_small_factor(f, F: BaseField, max_degree: int) -> bool:
    """Ben-Or steps j = 2..max_degree: gcd(x^(q^j) - x, f) != 1."""
    if max_degree < 2:
        return False
    x = [0, 1]
    h = _frobenius(x, f, F)
    for _ in range(2, max_degree + 1):
        h = _frobenius(h, f, F)
        if pgcd(psub(h, x, F), f, F) != [1]:
            return True
    return False


def _digits(index: int, count: int, q: int):
    out = []
    for _ in range(count):
        index, digit = divmod(index, q)
        out.append(digit)
    return out


@functools.lru_cache(maxsize=None)
def find_irreducible(F: BaseField, n: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree ``n``.

    Candidates ``x^n + c_{n-1} x^{n-1} + ... + c_0`` are scanned by the
    integer ``sum c_i q^i`` ascending, i.e. the constant term varies fastest.
    Returns coefficients constant term first (length ``n + 1``).

    Each block of q candidates sharing c_1..c_{n-1} is sieved at once: c_0
    gives a root exactly when it lies in ``{-g(y)}`` for the block's
    constant-free part g. Survivors go through cheap Ben-Or steps and then
    the full Rabin test, so the returned polynomial is the one Rabin's test
    would pick in a plain scan.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n == 1:
        return (0, 1)
    q = F.order
    small = min(3, n // 2)
    for high_index in range(q ** (n - 1)):
        g = [0] + _digits(high_index, n - 1, q) + [1]
        with_root = {F.neg(evaluate(g, y, F)) for y in F.elements()}
        for c0 in range(q):
            if c0 in with_root:
                continue
            f = [c0] + g[1:]
            if _has_small_factor(f, F, small):
                continue
            if is_irreducible(f, F):
                return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")
