"""Slow, obviously-correct reference computations used only by the tests."""

import itertools

from optlrc.field import Basis


def poly_mod_prime(a, b, p):
    """Remainder of a by monic-or-not b over F_p, plain long division (constant term first)."""
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_mod_field(a, b, F):
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bi))
        while a and a[-1] == 0:
            a.pop()
    return a


def has_factor(f, F):
    """Trial division of f by every monic polynomial of degree 1..deg(f)//2."""
    n = len(f) - 1
    q = F.order
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(q), repeat=d):
            if not poly_mod_field(f, list(low) + [1], F):
                return True
    return False


def min_weight(G):
    """Minimum nonzero codeword weight by enumerating every message over a prime field."""
    p = G.field.order
    k, n = G.nrows, G.ncols
    best = n + 1
    for x in itertools.product(range(p), repeat=k):
        if not any(x):
            continue
        w = sum(1 for j in range(n) if sum(x[i] * G.rows[i][j] for i in range(k)) % p)
        if 0 < w < best:
            best = w
    return best


def circuits_by_definition(G, cap):
    """Dependent sets all of whose one-smaller subsets are independent."""
    def independent(cols):
        b = Basis(G.field)
        return all(b.add(G.column(j)) for j in cols)

    out = []
    for size in range(1, cap + 1):
        for s in itertools.combinations(range(G.ncols), size):
            if not independent(s) and all(independent(t) for t in itertools.combinations(s, size - 1)):
                out.append(s)
    return out
