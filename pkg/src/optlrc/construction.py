"""Generator matrices of the optimal LRC family.

A code with parameters (n, k, r, delta) is built in two steps: a (m, k)
Reed-Solomon code over the extension field evaluated at m distinct points of
the base field, followed by re-encoding every block of r RS symbols with a
local (r + delta - 1, r) MDS code generated by an r × g matrix ``A`` whose
entries are zero or powers of omega. In matrix form
``G = (V_1 A, V_2 A, ..., V_{m/r} A)`` with ``V_i`` the k × r Vandermonde
block on the i-th group of evaluation points.

Indices are 0-based throughout: group i covers code positions
``i*g .. i*g + g - 1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ParamError, ShapeError
from .field import BaseField, ExtField, IntPoly, Matrix, hstack, intpoly_permanent, inverse
from .field.linalg import Basis

STANDARD = "standard"
GENERAL = "general"
CUSTOM = "custom"

DEFAULT_MAX_EXT_DEGREE = 512


@dataclass(frozen=True)
class LocalCode:
    """An r × (r + delta - 1) omega-power pattern; ``None`` marks a zero entry."""

    r: int
    delta: int
    pattern: tuple
    kind: str = CUSTOM

    def __post_init__(self):
        pattern = tuple(tuple(row) for row in self.pattern)
        object.__setattr__(self, "pattern", pattern)
        g = self.r + self.delta - 1
        if len(pattern) != self.r or any(len(row) != g for row in pattern):
            raise ShapeError(f"local pattern must be {self.r}x{g}")
        for row in pattern:
            for x in row:
                if x is not None and (not isinstance(x, int) or x < 0):
                    raise ParamError(f"pattern entries must be None or exponents >= 0, got {x!r}")

    @property
    def width(self) -> int:
        return self.r + self.delta - 1

    @property
    def max_exponent(self) -> int:
        return max((x for row in self.pattern for x in row if x is not None), default=0)

    def instantiate(self, field: ExtField) -> Matrix:
        """The pattern as a matrix over ``field`` with omega = field.omega."""
        w = field.omega
        cache: dict = {}

        def entry(x):
            if x is None:
                return field.zero
            if x not in cache:
                cache[x] = field.pow(w, x)
            return cache[x]

        return Matrix(field, tuple(tuple(entry(x) for x in row) for row in self.pattern))


def build_local_code(r: int) -> LocalCode:
    """Standard (r+1, r) local code: ones on the diagonal, omega just right of it."""
    if r < 2:
        raise ParamError(f"local code needs r >= 2, got r={r}")
    pattern = [[None] * (r + 1) for _ in range(r)]
    for i in range(r):
        pattern[i][i] = 0
        pattern[i][i + 1] = 1
    return LocalCode(r, 2, tuple(map(tuple, pattern)), STANDARD)


def build_local_code_general(r: int, delta: int) -> LocalCode:
    """(r + delta - 1, r) local code with entry (i, j) = omega^((i-1) r^j), 1-indexed."""
    if r < 2 or delta < 2:
        raise ParamError(f"general local code needs r >= 2 and delta >= 2, got r={r}, delta={delta}")
    g = r + delta - 1
    pattern = tuple(tuple(i * r**j for j in range(1, g + 1)) for i in range(r))
    return LocalCode(r, delta, pattern, GENERAL)


@dataclass(frozen=True)
class MonicCertificate:
    ok: bool
    subsets_checked: int
    violation: tuple | None = None
    permanent: IntPoly | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_monic_permanents(local: LocalCode) -> MonicCertificate:
    """Check that every r × t column submatrix (1 <= t <= r) has a monic permanent.

    For the standard pattern the permanent degree must also be at most t.
    Returns the first violating column subset otherwise.
    """
    checked = 0
    for t in range(1, local.r + 1):
        for cols in itertools.combinations(range(local.width), t):
            sub = [[row[j] for j in cols] for row in local.pattern]
            perm = intpoly_permanent(sub)
            checked += 1
            if not perm.is_monic():
                return MonicCertificate(
                    False, checked, cols, perm, f"leading coefficient {perm.leading_coefficient}"
                )
            if local.kind == STANDARD and perm.degree > t:
                return MonicCertificate(False, checked, cols, perm, f"degree {perm.degree} exceeds {t}")
    return MonicCertificate(True, checked)


def _check_shape(n, k, r, delta):
    if min(n, k, r) < 1:
        raise ParamError("n, k and r must be positive")
    if delta < 2:
        raise ParamError(f"delta must be >= 2, got {delta}")
    if r == 1:
        raise ParamError(
            "r=1 is not supported: an optimal (n,k,1) LRC is obtained by replicating "
            "each symbol of an (n/2,k) MDS code twice"
        )
    if r >= k:
        raise ParamError(
            f"r={r} >= k={k} is not supported: with r=k any (n,k) MDS code is already "
            "an optimal LRC (construction requires 1 < r < k)"
        )
    g = r + delta - 1
    if n % g:
        raise ParamError(f"group size r+delta-1={g} must divide n={n}")
    m = n * r // g
    if k > m:
        raise ParamError(f"k={k} exceeds the number of Reed-Solomon symbols m={m}")


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    r: int
    delta: int
    base: BaseField
    alphas: tuple
    local: LocalCode

    def __post_init__(self):
        n, k, r, delta = self.n, self.k, self.r, self.delta
        _check_shape(n, k, r, delta)
        m = n * r // (r + delta - 1)
        if self.base.order < m:
            raise ParamError(f"base field {self.base} has {self.base.order} < m={m} elements")
        alphas = tuple(self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if len(alphas) != m:
            raise ParamError(f"need exactly m={m} evaluation points, got {len(alphas)}")
        if any(a not in self.base for a in alphas):
            raise ParamError("evaluation points must be base-field elements")
        if len(set(alphas)) != m:
            raise ParamError("evaluation points must be pairwise distinct")
        if self.local.r != r or self.local.delta != delta:
            raise ParamError("local code shape does not match (r, delta)")

    @property
    def group_size(self) -> int:
        return self.r + self.delta - 1

    @property
    def m(self) -> int:
        return self.n * self.r // self.group_size

    @property
    def num_groups(self) -> int:
        return self.n // self.group_size

    @property
    def ext_degree(self) -> int:
        return self.local.max_exponent * self.k + 1

    @property
    def k_over_r(self) -> int:
        return math.ceil(self.k / self.r)

    @property
    def mu(self) -> int:
        """mu of the constructed code: (ceil(k/r) - 1)(delta - 1) + 1."""
        return (self.k_over_r - 1) * (self.delta - 1) + 1

    @property
    def distance(self) -> int:
        """Optimal minimum distance n - k - mu + 2 met by the construction."""
        return self.n - self.k - self.mu + 2

    def group(self, i: int) -> range:
        if not 0 <= i < self.num_groups:
            raise ParamError(f"group {i} out of range (0..{self.num_groups - 1})")
        g = self.group_size
        return range(i * g, (i + 1) * g)

    def groups(self) -> list[range]:
        return [self.group(i) for i in range(self.num_groups)]

    def group_of(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise ParamError(f"position {j} out of range (0..{self.n - 1})")
        return j // self.group_size


def make_params(
    n: int,
    k: int,
    r: int,
    delta: int = 2,
    base: BaseField | str = "gf2:8",
    alphas: Sequence[int] | None = None,
    local: LocalCode | None = None,
) -> CodeParams:
    """Validate parameters and pick evaluation points.

    ``alphas`` defaults to the first m base-field elements in canonical order
    (0, 1, 2, ... for both prime and binary fields). ``local`` defaults to the
    standard pattern for delta = 2 and the general power pattern otherwise; a
    caller-supplied pattern must pass :func:`verify_monic_permanents`.
    """
    if isinstance(base, str):
        base = BaseField.parse(base)
    _check_shape(n, k, r, delta)
    if local is None:
        local = build_local_code(r) if delta == 2 else build_local_code_general(r, delta)
    elif local.kind == CUSTOM:
        cert = verify_monic_permanents(local)
        if not cert:
            raise ParamError(f"local code fails the monic permanent check at columns {cert.violation}")
    m = n * r // (r + delta - 1)
    if alphas is None:
        if base.order < m:
            raise ParamError(f"base field {base} has {base.order} < m={m} elements")
        alphas = tuple(base.elements()[:m])
    return CodeParams(n, k, r, delta, base, tuple(alphas), local)


@dataclass(frozen=True)
class GeneratorMatrix:
    params: CodeParams
    field: ExtField
    G: Matrix
    local_matrix: Matrix
    pivots: tuple | None = None

    @property
    def n(self) -> int:
        return self.G.ncols

    @property
    def k(self) -> int:
        return self.G.nrows

    @property
    def is_systematic(self) -> bool:
        return self.pivots is not None

    def block(self, i: int) -> Matrix:
        return self.G.select_columns(self.params.group(i))

    @property
    def blocks(self) -> list[Matrix]:
        return [self.block(i) for i in range(self.params.num_groups)]

    def vandermonde_block(self, i: int) -> Matrix:
        return vandermonde_block(self.params, self.field, i)


def vandermonde_block(params: CodeParams, field: ExtField, i: int) -> Matrix:
    """k × r Vandermonde block on the i-th group of evaluation points, lifted into ``field``."""
    pts = params.alphas[i * params.r : (i + 1) * params.r]
    B = params.base
    return Matrix(field, tuple(tuple(field.from_base(B.pow(a, row)) for a in pts) for row in range(params.k)))


def build_generator(
    params: CodeParams,
    modulus: Sequence[int] | None = None,
    max_degree: int = DEFAULT_MAX_EXT_DEGREE,
) -> GeneratorMatrix:
    """Assemble ``G = (V_1 A, ..., V_{m/r} A)``.

    The extension field is ``base[x]/(f)`` with f the first irreducible of
    degree ``params.ext_degree`` in scan order, unless ``modulus`` is given.
    """
    e = params.ext_degree
    if e > max_degree:
        raise ParamError(f"extension degree {e} exceeds the limit {max_degree}")
    if modulus is None:
        field = ExtField.build(params.base, e)
    else:
        field = ExtField(params.base, tuple(modulus))
        if field.degree != e:
            raise ParamError(f"modulus has degree {field.degree}, expected {e}")
    A = params.local.instantiate(field)
    blocks = [_lift_scaled(vandermonde_block(params, field, i), A) for i in range(params.num_groups)]
    G = hstack(blocks)
    return GeneratorMatrix(params, field, G, A)


def _lift_scaled(V: Matrix, A: Matrix) -> Matrix:
    # V has base-field entries embedded as constants: scale instead of full products
    F = A.field
    cols = A.columns()
    rows = []
    for vrow in V.rows:
        out = []
        for col in cols:
            acc = F.zero
            for v, a in zip(vrow, col):
                if v[0] and a != F.zero:
                    acc = F.add(acc, F.scale(a, v[0]))
            out.append(acc)
        rows.append(tuple(out))
    return Matrix(F, tuple(rows))


def to_systematic(gm: GeneratorMatrix) -> tuple[GeneratorMatrix, tuple]:
    """``G_sys = G_k^{-1} G`` for the leftmost k linearly independent columns."""
    G = gm.G
    basis = Basis(gm.field)
    pivots = []
    for j in range(G.ncols):
        if basis.add(G.column(j)):
            pivots.append(j)
            if len(pivots) == G.nrows:
                break
    assert len(pivots) == G.nrows, "generator matrix must have full row rank"
    Gk_inv = inverse(G.select_columns(pivots))
    pivots = tuple(pivots)
    return GeneratorMatrix(gm.params, gm.field, Gk_inv @ G, gm.local_matrix, pivots), pivots


# -- text dump -------------------------------------------------------------


def dump_matrix(M: Matrix) -> str:
    """Serialize a matrix over a base or extension field.

    Header lines start with ``#``; each following line is one row of
    whitespace-separated entries, extension elements written as coefficient
    tuples ``(c0,c1,...)``.
    """
    F = M.field
    lines = ["# optlrc-matrix 1"]
    if isinstance(F, ExtField):
        lines.append(f"# field {F.base.descriptor}")
        lines.append(f"# modulus {F.modulus_text}")
        fmt = lambda x: "(" + ",".join(map(str, x)) + ")"  # noqa: E731
    else:
        lines.append(f"# field {F.descriptor}")
        fmt = str
    lines.append(f"# shape {M.nrows} {M.ncols}")
    for row in M.rows:
        lines.append(" ".join(fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> Matrix:
    headers = {}
    body = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(" ")
            headers[key] = value.strip()
        else:
            body.append(line.split())
    if "field" not in headers or "shape" not in headers:
        raise ParamError("matrix dump needs '# field' and '# shape' headers")
    base = BaseField.parse(headers["field"])
    if "modulus" in headers:
        F = ExtField.parse(headers["field"], headers["modulus"])
        parse = lambda tok: F.check(int(c) for c in tok.strip("()").split(","))  # noqa: E731
    else:
        F = base
        parse = lambda tok: F.check(int(tok))  # noqa: E731
    rows, cols = (int(x) for x in headers["shape"].split())
    if len(body) != rows or any(len(r) != cols for r in body):
        raise ShapeError(f"matrix body does not match shape {rows}x{cols}")
    return Matrix(F, tuple(tuple(parse(tok) for tok in row) for row in body))
