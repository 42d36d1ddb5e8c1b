"""Encoding, local repair and global erasure decoding.

Codewords and messages are tuples of extension-field elements. Positions
that are known are passed as a mapping ``{position: symbol}``; erasures are
simply absent keys (storage-node model, no error correction).
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterable, Sequence

from .construction import GeneratorMatrix
from .errors import ParamError, RankDeficient, ShapeError, TooManyLocalErasures
from .field import Basis, Matrix, inverse, solve_square, vecmat


class AccessLog(Mapping):
    """Read-only view of available symbols that records every symbol read."""

    def __init__(self, symbols: Mapping):
        self._symbols = symbols
        self.reads: list[int] = []

    def __getitem__(self, key):
        value = self._symbols[key]
        self.reads.append(key)
        return value

    def __contains__(self, key):
        return key in self._symbols

    def __iter__(self):
        return iter(self._symbols)

    def __len__(self):
        return len(self._symbols)


def encode(gm: GeneratorMatrix, message: Sequence) -> tuple:
    """Codeword ``y = x · G``."""
    if len(message) != gm.k:
        raise ShapeError(f"message has {len(message)} symbols, expected k={gm.k}")
    return vecmat(tuple(message), gm.G)


# -- local repair ----------------------------------------------------------


def _local_survivors(gm: GeneratorMatrix, group: int, available: Mapping, erased: Iterable[int]):
    p = gm.params
    positions = p.group(group)
    erased = set(erased)
    stray = erased.difference(positions)
    if stray:
        raise ParamError(f"positions {sorted(stray)} are not in group {group}")
    alive = [j for j in positions if j not in erased and j in available]
    lost = [j for j in positions if j not in alive]
    if len(lost) > p.delta - 1 or len(alive) < p.r:
        raise TooManyLocalErasures(group, lost, p.delta - 1)
    return alive[: p.r], sorted(erased)


def repair_local(gm: GeneratorMatrix, group: int, available: Mapping, erased: Iterable[int]) -> dict:
    """Rebuild erased symbols of one repair group from r of its survivors.

    The group's symbols are ``u · A`` for an r-symbol local message u. Any r
    columns of A are invertible, so u is solved from the first r surviving
    positions and the erased positions are re-evaluated. Only those r
    symbols are read from ``available``.
    """
    survivors, erased = _local_survivors(gm, group, available, erased)
    if not erased:
        return {}
    A = gm.local_matrix
    offset = group * gm.params.group_size
    A_S = A.select_columns(j - offset for j in survivors)
    y_S = [available[j] for j in survivors]
    u = solve_square(A_S.T, y_S)
    A_E = A.select_columns(j - offset for j in erased)
    return dict(zip(erased, vecmat(u, A_E)))


def local_repair_matrix(gm: GeneratorMatrix, group: int, survivors: Sequence[int], erased: Sequence[int]) -> Matrix:
    """r × |erased| matrix T with ``y_erased = y_survivors · T``."""
    A = gm.local_matrix
    offset = group * gm.params.group_size
    A_S = A.select_columns(j - offset for j in survivors)
    A_E = A.select_columns(j - offset for j in erased)
    return inverse(A_S) @ A_E


def plan_local_repair(gm: GeneratorMatrix, group: int, available: Iterable[int], erased: Iterable[int]):
    """(survivors to read, erased positions) for a local repair, or raise."""
    present = {j: None for j in available}
    return _local_survivors(gm, group, present, erased)


# -- global decoding -------------------------------------------------------


def decode_pivots(gm: GeneratorMatrix, positions: Iterable[int]) -> tuple | None:
    """Leftmost k positions whose columns are independent, or None if rank < k."""
    basis = Basis(gm.field)
    pivots = []
    for j in sorted(positions):
        if basis.add(gm.G.column(j)):
            pivots.append(j)
            if len(pivots) == gm.k:
                return tuple(pivots)
    return None


def decode(gm: GeneratorMatrix, available: Mapping) -> tuple:
    """Recover the message from any available set of rank k."""
    for j in available:
        if not 0 <= j < gm.n:
            raise ParamError(f"position {j} out of range (0..{gm.n - 1})")
    pivots = decode_pivots(gm, available)
    if pivots is None:
        erased = sorted(set(range(gm.n)).difference(available))
        raise RankDeficient(f"available symbols do not span the message space; erased {erased}", erased)
    G_S = gm.G.select_columns(pivots)
    return solve_square(G_S.T, [available[j] for j in pivots])


def decode_matrix(gm: GeneratorMatrix, pivots: Sequence[int]) -> Matrix:
    """k × k matrix D with ``x = y_pivots · D``."""
    return inverse(gm.G.select_columns(pivots))


def decodable(gm: GeneratorMatrix, erased: Iterable[int]) -> bool:
    """True iff the columns outside ``erased`` have rank k."""
    erased = set(erased)
    return decode_pivots(gm, (j for j in range(gm.n) if j not in erased)) is not None


def repair(gm: GeneratorMatrix, available: Mapping, erased: Iterable[int]) -> dict:
    """Rebuild ``erased`` positions, locally where possible.

    Groups that lost more than delta - 1 symbols forfeit locality: the
    message is decoded globally from everything available and the missing
    symbols are re-encoded.
    """
    p = gm.params
    erased = sorted(set(erased))
    out: dict = {}
    fallback = []
    for i in sorted({p.group_of(j) for j in erased}):
        mine = [j for j in erased if p.group_of(j) == i]
        try:
            out.update(repair_local(gm, i, available, mine))
        except TooManyLocalErasures:
            fallback.extend(mine)
    if fallback:
        codeword = encode(gm, decode(gm, available))
        out.update({j: codeword[j] for j in fallback})
    return out


# -- encoding on top of existing RS stripes --------------------------------


@dataclass(frozen=True)
class StripeBundle:
    """e RS codewords over the base field, all evaluated at ``points``."""

    stripes: tuple
    points: tuple

    def __post_init__(self):
        stripes = tuple(tuple(s) for s in self.stripes)
        points = tuple(self.points)
        if any(len(s) != len(points) for s in stripes):
            raise ShapeError("every stripe must have one symbol per evaluation point")
        object.__setattr__(self, "stripes", stripes)
        object.__setattr__(self, "points", points)


def rs_stripes(gm: GeneratorMatrix, stripe_messages: Sequence[Sequence[int]]) -> StripeBundle:
    """Encode e base-field messages (k coefficients each) with the (m, k) RS code."""
    p = gm.params
    B = p.base
    if len(stripe_messages) != gm.field.degree:
        raise ShapeError(f"need {gm.field.degree} stripe messages, got {len(stripe_messages)}")
    stripes = []
    for coeffs in stripe_messages:
        if len(coeffs) != p.k:
            raise ShapeError(f"stripe message has {len(coeffs)} coefficients, expected k={p.k}")
        stripes.append(tuple(_eval_base(B, coeffs, a) for a in p.alphas))
    return StripeBundle(tuple(stripes), p.alphas)


def _eval_base(B, coeffs, a):
    acc = 0
    for c in reversed(coeffs):
        acc = B.add(B.mul(acc, a), c)
    return acc


def group_stripes(bundle: StripeBundle, field) -> list:
    """Pack the i-th symbol of every stripe into one extension element (stripe j -> omega^j)."""
    if len(bundle.stripes) != field.degree:
        raise ShapeError(f"need exactly {field.degree} stripes, got {len(bundle.stripes)}")
    return [tuple(s[i] for s in bundle.stripes) for i in range(len(bundle.points))]


def message_from_stripes(gm: GeneratorMatrix, bundle: StripeBundle) -> tuple:
    """Interpolate each stripe over the base field and fold the coefficients into k extension symbols."""
    p = gm.params
    B = p.base
    stripes = group_stripes(bundle, gm.field)  # validates the stripe count
    del stripes
    pts = bundle.points[: p.k]
    V = Matrix(B, tuple(tuple(B.pow(a, i) for i in range(p.k)) for a in pts))
    per_stripe = []
    for s in bundle.stripes:
        coeffs = solve_square(V, s[: p.k])
        if any(_eval_base(B, coeffs, a) != y for a, y in zip(bundle.points, s)):
            raise ParamError("stripe is not a codeword of the (m, k) RS code")
        per_stripe.append(coeffs)
    return tuple(tuple(c[i] for c in per_stripe) for i in range(p.k))


def encode_from_stripes(gm: GeneratorMatrix, bundle: StripeBundle) -> tuple:
    """Codeword from pre-computed RS stripes: group them, then apply only the local code."""
    if gm.is_systematic:
        raise ParamError("stripe encoding needs the non-systematic generator")
    p = gm.params
    if bundle.points != p.alphas:
        raise ParamError("stripes were evaluated at different points than the code's alphas")
    symbols = group_stripes(bundle, gm.field)
    out = []
    for i in range(p.num_groups):
        out.extend(vecmat(symbols[i * p.r : (i + 1) * p.r], gm.local_matrix))
    return tuple(out)
