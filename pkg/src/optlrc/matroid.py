"""Column matroid of a generator matrix: circuits, mu, distance and optimality.

Column indices are 0-based. Subsets are handled internally as int bitmasks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CapExceeded, ParamError, TooLarge
from .field import Basis, Matrix, rank_of

DEFAULT_BUDGET = 10**7
ORACLE_MAX_N = 20


@dataclass(frozen=True, order=True)
class Circuit:
    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        return sum(1 << j for j in self.members)

    def __iter__(self):
        return iter(self.members)


def _members(mask: int) -> tuple:
    return tuple(j for j in range(mask.bit_length()) if mask >> j & 1)


def enumerate_circuits(G: Matrix, size_cap: int | None = None, budget: int = DEFAULT_BUDGET) -> list[Circuit]:
    """All circuits of size at most ``size_cap`` (default rank + 1), by size then lexicographically.

    Sizes are scanned in increasing order. A set is a circuit exactly when it
    is dependent and contains no smaller circuit, so branches whose prefix is
    already dependent are cut. ``budget`` bounds the number of subsets visited.
    """
    n = G.ncols
    k = rank_of(G)
    cap = k + 1 if size_cap is None else min(size_cap, k + 1)
    columns = G.columns()
    found: list[int] = []
    visited = 0

    def walk(start, size, basis, mask, depth):
        nonlocal visited
        for j in range(start, n - (size - depth) + 1):
            visited += 1
            if visited > budget:
                raise CapExceeded(f"circuit enumeration exceeded {budget} subsets")
            m = mask | 1 << j
            if depth + 1 == size:
                if any(c & m == c for c in found):
                    continue
                if not basis.copy().add(columns[j]):
                    level.append(m)
                continue
            nxt = basis.copy()
            if not nxt.add(columns[j]):
                continue  # dependent prefix: every extension contains a known circuit
            walk(j + 1, size, nxt, m, depth + 1)

    for size in range(1, cap + 1):
        level: list[int] = []
        walk(0, size, Basis(G.field), 0, 0)
        found.extend(level)
    return [Circuit(_members(c)) for c in found]


# -- mu ----------------------------------------------------------------------


def _small_union(masks: Sequence[int], count: int, bound: int, budget: int):
    """A family of ``count`` circuits with non-trivial union of size < ``bound``, or None.

    Non-triviality means every member keeps a private element outside the
    union of the others; private sets only shrink as members are added, so a
    branch dies as soon as one of them empties.
    """
    visited = 0
    sizes = [bin(c).count("1") for c in masks]

    def walk(start, union, privates, chosen):
        nonlocal visited
        depth = len(chosen)
        if depth == count:
            return list(chosen) if union.bit_count() < bound else None
        # each remaining member adds at least one private element
        if union.bit_count() + (count - depth) >= bound:
            return None
        for i in range(start, len(masks)):
            visited += 1
            if visited > budget:
                raise CapExceeded(f"circuit-family search exceeded {budget} evaluations")
            c = masks[i]
            own = c & ~union
            if not own:
                continue
            new_privates = [p & ~c for p in privates]
            if not all(new_privates):
                continue
            if depth == 0 and sizes[i] >= bound:
                continue
            hit = walk(i + 1, union | c, new_privates + [own], chosen + [i])
            if hit is not None:
                return hit
        return None

    return walk(0, 0, [], [])


def _as_masks(circuits):
    return [c.mask if isinstance(c, Circuit) else int(c) for c in circuits]


def compute_mu(G: Matrix, circuits: Sequence[Circuit] | None = None, budget: int = DEFAULT_BUDGET) -> int:
    """Smallest mu such that every non-trivial union of mu circuits has at least k + mu elements."""
    k = rank_of(G)
    if circuits is None:
        circuits = enumerate_circuits(G, budget=budget)
    masks = _as_masks(circuits)
    for mu in range(1, G.ncols + 2):
        if _small_union(masks, mu, k + mu, budget) is None:
            return mu
    raise AssertionError("mu never exceeds n + 1")


def distance_via_mu(G: Matrix, circuits: Sequence[Circuit] | None = None, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum distance as n - k - mu + 2."""
    k = rank_of(G)
    if k == 0:
        raise ParamError("the zero code has no minimum distance")
    return G.ncols - k - compute_mu(G, circuits, budget) + 2


def distance_oracle(G: Matrix) -> int:
    """Minimum distance from hyperplanes: n minus the largest column set of rank below k.

    Every set of rank at most k - 1 sits inside the span of some k - 1
    independent columns, so it suffices to count, for each such basis, how
    many columns its span holds.
    """
    n = G.ncols
    if n > ORACLE_MAX_N:
        raise TooLarge(f"distance oracle scans column subsets; n={n} exceeds {ORACLE_MAX_N}")
    k = rank_of(G)
    if k == 0:
        raise ParamError("the zero code has no minimum distance")
    columns = G.columns()
    best = 0

    def walk(start, basis, depth):
        nonlocal best
        if depth == k - 1:
            best = max(best, sum(basis.contains(c) for c in columns))
            return
        for j in range(start, n):
            nxt = basis.copy()
            if nxt.add(columns[j]):
                walk(j + 1, nxt, depth + 1)

    walk(0, Basis(G.field), 0)
    return n - best


# -- optimality --------------------------------------------------------------


def generalized_distance_bound(n: int, k: int, r: int, delta: int) -> int:
    """Largest distance an (r, delta)-local code can reach."""
    return n - k - (math.ceil(k / r) - 1) * (delta - 1) + 1


@dataclass
class Verdict:
    optimal: bool
    reason: str = ""
    witness: tuple | None = None
    partition: bool = False


def verify_optimal_lrc(
    G: Matrix,
    r: int,
    delta: int = 2,
    circuits: Sequence[Circuit] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Check that the column matroid of G gives locality r (and delta) with optimal distance.

    delta = 2: every column lies in a circuit of size at most r + 1, and every
    non-trivial union of ceil(k/r) circuits has at least k + ceil(k/r)
    elements. ``partition`` reports the stronger condition that the
    non-trivial circuits all have size r + 1 and partition the columns.

    delta > 2: every column lies in a circuit of size at most r + delta - 1,
    and the exact distance meets the (r, delta) bound.
    """
    n = G.ncols
    k = rank_of(G)
    if circuits is None:
        circuits = enumerate_circuits(G, budget=budget)
    masks = _as_masks(circuits)
    local_size = r + delta - 1 if delta > 2 else r + 1
    covered = 0
    for c in masks:
        if c.bit_count() <= local_size:
            covered |= c
    partition = _is_partition(masks, n, k, r + delta - 1 if delta > 2 else r + 1)
    for j in range(n):
        if not covered >> j & 1:
            return Verdict(False, f"column {j} lies in no circuit of size <= {local_size}", (j,), partition)
    if delta == 2:
        t = math.ceil(k / r)
        hit = _small_union(masks, t, k + t, budget)
        if hit is not None:
            union = 0
            for i in hit:
                union |= masks[i]
            family = tuple(_members(masks[i]) for i in hit)
            return Verdict(False, f"{t} circuits with non-trivial union of size {union.bit_count()} < {k + t}", family, partition)
        return Verdict(True, "locality and distance conditions hold", None, partition)
    d = distance_oracle(G)
    bound = generalized_distance_bound(n, k, r, delta)
    if d != bound:
        return Verdict(False, f"distance {d} does not reach the bound {bound}", (d, bound), partition)
    return Verdict(True, f"distance {d} meets the bound", None, partition)


def _is_partition(masks, n, k, size):
    # for generalized codes the local circuits have size r+1 inside groups of r+delta-1; this
    # checks the delta = 2 shape: non-trivial circuits are disjoint, equal-sized and cover everything
    nontrivial = [c for c in masks if c.bit_count() <= k]
    if not nontrivial or any(c.bit_count() != size for c in nontrivial):
        return False
    union = 0
    for c in nontrivial:
        if union & c:
            return False
        union |= c
    return union == (1 << n) - 1


# -- report ------------------------------------------------------------------


@dataclass
class MatroidReport:
    n: int
    k: int
    circuits: list = field(default_factory=list)
    mu: int = 0
    d_formula: int = 0
    d_oracle: int | None = None
    verdict: Verdict | None = None

    @property
    def nontrivial_circuits(self) -> list:
        return [c for c in self.circuits if c.size <= self.k]

    def to_dict(self) -> dict:
        v = self.verdict
        return {
            "n": self.n,
            "k": self.k,
            "circuits": [list(c.members) for c in self.circuits],
            "nontrivial_circuits": [list(c.members) for c in self.nontrivial_circuits],
            "mu": self.mu,
            "d_formula": self.d_formula,
            "d_oracle": self.d_oracle,
            "optimal_lrc": None
            if v is None
            else {
                "optimal": v.optimal,
                "reason": v.reason,
                "witness": _jsonable(v.witness),
                "circuits_partition_columns": v.partition,
            },
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def analyze_matroid(G: Matrix, r: int, delta: int = 2, budget: int = DEFAULT_BUDGET, oracle: bool = True) -> MatroidReport:
    k = rank_of(G)
    d_oracle = distance_oracle(G) if oracle else None  # cheapest way to hit the size limit early
    circuits = enumerate_circuits(G, budget=budget)
    mu = compute_mu(G, circuits, budget)
    report = MatroidReport(G.ncols, k, circuits, mu, G.ncols - k - mu + 2, d_oracle)
    report.verdict = verify_optimal_lrc(G, r, delta, circuits, budget)
    return report

