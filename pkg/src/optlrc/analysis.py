"""Probability that k uniformly chosen coded symbols suffice to decode.

Exact values are :class:`fractions.Fraction`. The Monte Carlo estimator uses
numpy's PCG64 generator: the seed feeds a ``SeedSequence`` that is split into
one child stream per chunk of trials, so the estimate does not depend on how
chunks are scheduled.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParamError, TooLarge
from .field import Basis, Matrix, rank_of

BRUTE_MAX_N = 14
CHUNK_TRIALS = 10_000


def _check(n, k, r, delta=2):
    if min(n, k, r) < 1 or delta < 2:
        raise ParamError("n, k, r must be positive and delta >= 2")
    if n % (r + delta - 1):
        raise ParamError(f"group size {r + delta - 1} does not divide n={n}")
    if k > n:
        raise ParamError(f"k={k} exceeds n={n}")


def pdec_exact(n: int, k: int, r: int, delta: int = 2) -> Fraction:
    """Exact probability that a uniform k-subset of the n symbols is decodable.

    For delta = 2 a k-subset fails exactly when it swallows a whole group of
    r + 1 symbols, and the failure probability follows by inclusion-exclusion
    over the groups, with sign (-1)^(j+1) on the j-group term. For delta > 2
    a subset fails when it holds more than r symbols of some group; those are
    counted with a per-group generating function.
    """
    _check(n, k, r, delta)
    total = math.comb(n, k)
    if delta == 2:
        g = r + 1
        groups = n // g
        fail = sum(
            (-1) ** (j + 1) * math.comb(groups, j) * math.comb(n - j * g, k - j * g)
            for j in range(1, groups + 1)
            if j * g <= k
        )
        return 1 - Fraction(fail, total)
    return Fraction(_count_bounded(n // (r + delta - 1), r + delta - 1, r, k), total)


def _count_bounded(groups, size, cap, k):
    # coefficient of x^k in (sum_{i<=cap} C(size, i) x^i)^groups
    per = [math.comb(size, i) for i in range(min(cap, size) + 1)]
    poly = [1]
    for _ in range(groups):
        nxt = [0] * (len(poly) + len(per) - 1)
        for a, ca in enumerate(poly):
            for b, cb in enumerate(per):
                nxt[a + b] += ca * cb
        poly = nxt
    return poly[k] if k < len(poly) else 0


def pdec_lower_bound(n: int, k: int, r: int) -> tuple[Fraction, Fraction]:
    """Union bounds (tight form, closed form), the first never below :func:`pdec_exact`.

    tight:  1 - (n / (r + 1)) * C(n - r - 1, k - r - 1) / C(n, k)
    closed: 1 - (n / (r + 1)) * (k / n)^(r + 1), never above the tight form
    """
    _check(n, k, r)
    groups = Fraction(n, r + 1)
    tight = 1 - groups * Fraction(math.comb(n - r - 1, k - r - 1) if k >= r + 1 else 0, math.comb(n, k))
    closed = 1 - groups * Fraction(k, n) ** (r + 1)
    return tight, closed


def _full_rank(columns, field, subset, k):
    basis = Basis(field)
    for j in subset:
        if not basis.add(columns[j]):
            return False
    return basis.rank == k


def pdec_brute(G: Matrix, k: int | None = None) -> Fraction:
    """Fraction of k-subsets of columns that have rank k (k defaults to the row count)."""
    n = G.ncols
    if n > BRUTE_MAX_N:
        raise TooLarge(f"exhaustive count over C({n}, k) subsets; n exceeds {BRUTE_MAX_N}")
    k = G.nrows if k is None else k
    columns = G.columns()
    good = sum(_full_rank(columns, G.field, s, k) for s in itertools.combinations(range(n), k))
    return Fraction(good, math.comb(n, k))


class _Decodability:
    """Memoized rank test on column subsets (keyed by bitmask)."""

    def __init__(self, G: Matrix, k: int):
        self.columns = G.columns()
        self.field = G.field
        self.k = k
        self.cache: dict[int, bool] = {}

    def __call__(self, subset) -> bool:
        key = sum(1 << j for j in subset)
        hit = self.cache.get(key)
        if hit is None:
            hit = self.cache[key] = _full_rank(self.columns, self.field, sorted(subset), self.k)
        return hit


def sample_subsets(n: int, k: int, trials: int, rng: np.random.Generator) -> list[tuple]:
    """``trials`` uniform k-subsets via a partial Fisher-Yates shuffle of range(n)."""
    # step i swaps position i with a uniform position in [i, n)
    offsets = rng.integers(0, n - np.arange(k), size=(trials, k))
    out = []
    for row in offsets.tolist():
        perm = list(range(n))
        for i, off in enumerate(row):
            j = i + off
            perm[i], perm[j] = perm[j], perm[i]
        out.append(tuple(perm[:k]))
    return out


def pdec_monte_carlo(G: Matrix, k: int | None = None, trials: int = 100_000, seed: int = 0, workers: int = 1) -> float:
    """Empirical decodable fraction over ``trials`` seeded uniform k-subsets."""
    if trials < 1:
        raise ParamError("trials must be >= 1")
    n = G.ncols
    k = G.nrows if k is None else k
    if not 1 <= k <= n:
        raise ParamError(f"k={k} must lie in 1..{n}")
    test = _Decodability(G, k)
    sizes = [min(CHUNK_TRIALS, trials - s) for s in range(0, trials, CHUNK_TRIALS)]
    streams = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i):
        rng = np.random.Generator(np.random.PCG64(streams[i]))
        return sum(test(s) for s in sample_subsets(n, k, sizes[i], rng))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            hits = sum(pool.map(run, range(len(sizes))))
    else:
        hits = sum(run(i) for i in range(len(sizes)))
    return hits / trials


@dataclass
class DecodabilityReport:
    n: int
    k: int
    r: int
    delta: int
    p_exact: Fraction | None = None
    p_lower_bound: tuple | None = None
    p_brute: Fraction | None = None
    p_monte_carlo: float | None = None
    trials: int = 0
    seed: int = 0

    @property
    def consistent(self) -> bool:
        if self.p_exact is not None and self.p_lower_bound is not None:
            if not self.p_lower_bound[0] <= self.p_exact <= 1:
                return False
        if self.p_exact is not None and self.p_brute is not None:
            return self.p_brute == self.p_exact
        return True

    def to_dict(self) -> dict:
        def frac(x):
            return None if x is None else {"numerator": str(x.numerator), "denominator": str(x.denominator)}

        return {
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "delta": self.delta,
            "p_exact": frac(self.p_exact),
            "p_lower_bound": None
            if self.p_lower_bound is None
            else {"tight": frac(self.p_lower_bound[0]), "closed_form": frac(self.p_lower_bound[1])},
            "p_brute": frac(self.p_brute),
            "p_monte_carlo": None
            if self.p_monte_carlo is None
            else {"estimate": self.p_monte_carlo, "trials": self.trials, "seed": self.seed},
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def decodability_report(
    G: Matrix,
    r: int,
    delta: int = 2,
    trials: int = 100_000,
    seed: int = 0,
    exact: bool = True,
) -> DecodabilityReport:
    """Gather every applicable estimate for a generator matrix.

    ``exact`` applies the closed formulas, which assume the group layout of
    the construction; pass False for arbitrary matrices.
    """
    n = G.ncols
    k = rank_of(G)
    rep = DecodabilityReport(n, k, r, delta, trials=trials, seed=seed)
    if exact:
        rep.p_exact = pdec_exact(n, k, r, delta)
        if delta == 2:
            rep.p_lower_bound = pdec_lower_bound(n, k, r)
    if n <= BRUTE_MAX_N:
        rep.p_brute = pdec_brute(G, k)
    if trials:
        rep.p_monte_carlo = pdec_monte_carlo(G, k, trials, seed)
    return rep
