"""Vectorized application of extension-field matrices to many stripes at once.

An extension-field matrix acts on coefficient vectors as a base-field matrix
(each entry c becomes the e×e block whose row t is ``omega^t * c``). Stripes
are rows of a 2-D integer array of base-field symbols, and the product is
computed with numpy over the base field.
"""

from __future__ import annotations

import numpy as np

from .field import BINARY, BaseField, Matrix


def expand(M: Matrix) -> np.ndarray:
    """Base-field matrix E with ``coeffs(x) @ E == coeffs(x · M)``."""
    F = M.field
    e = F.degree
    out = np.zeros((M.nrows * e, M.ncols * e), dtype=np.int64)
    for i, row in enumerate(M.rows):
        for j, c in enumerate(row):
            if any(c):
                out[i * e : (i + 1) * e, j * e : (j + 1) * e] = F.mul_matrix(c)
    return out


def symbol_dtype(base: BaseField):
    if base.kind == BINARY and base.order <= 256:
        return np.uint8
    if base.kind == BINARY and base.order <= 1 << 16:
        return np.uint16
    return np.int64


def matmul(base: BaseField, X: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``X @ B`` over the base field; X is (stripes, K), B is (K, N)."""
    X = np.asarray(X)
    B = np.asarray(B)
    if base.kind == BINARY:
        return _matmul_binary(base, X, B)
    return _matmul_prime(base.order, X, B)


def _matmul_prime(p, X, B):
    X = X.astype(np.int64) % p
    B = B.astype(np.int64) % p
    K = X.shape[1]
    # int64 accumulates K products of size < p^2 without overflow
    chunk = max(1, (2**62) // max(1, (p - 1) ** 2))
    if K <= chunk:
        return (X @ B) % p
    out = np.zeros((X.shape[0], B.shape[1]), dtype=np.int64)
    for start in range(0, K, chunk):
        out = (out + X[:, start : start + chunk] @ B[start : start + chunk]) % p
    return out


def _tables(base: BaseField):
    cached = getattr(base, "_np_tables", None)
    if cached is None:
        log = np.array(base._log, dtype=np.int64)
        exp = np.array(base._exp, dtype=np.int64)
        mul = None
        if base.order <= 256:
            q = base.order
            a = np.arange(q)
            s = log[a][:, None] + log[a][None, :]
            mul = exp[s].astype(np.uint8)
            mul[0, :] = 0
            mul[:, 0] = 0
        cached = (log, exp, mul)
        object.__setattr__(base, "_np_tables", cached)
    return cached


def _matmul_binary(base, X, B):
    dtype = symbol_dtype(base)
    log, exp, mul = _tables(base)
    X = X.astype(np.int64)
    B = B.astype(np.int64)
    out = np.zeros((X.shape[0], B.shape[1]), dtype=dtype)
    for t in range(X.shape[1]):
        brow = B[t]
        nz = np.nonzero(brow)[0]
        if nz.size == 0:
            continue
        xcol = X[:, t]
        if mul is not None:
            out[:, nz] ^= mul[xcol[:, None], brow[nz][None, :]]
        else:
            prod = exp[log[xcol][:, None] + log[brow[nz]][None, :]].astype(dtype)
            prod[xcol == 0, :] = 0
            out[:, nz] ^= prod
    return out
