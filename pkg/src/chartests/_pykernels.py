"""NumPy implementation of the hot subset-statistic kernels.

Same interface as the compiled ``_ckernels`` module; selected by
:mod:`._backend` when the extension is unavailable.  Inputs are sorted
float64 sample arrays and sorted unique float64 query arrays.

Pair codes: 0 absolute difference, 1 spacing of triples (pair ``i < j``
carries weight ``n - 1 - j``), 2 linear combination ``a x + b y`` over both
orderings, 3 Shepp statistic ``2xy / sqrt(x^2 + y^2)``, 4 ratio minimum.
Triple codes: 0 weighted sum ``x + y/2 + z/3`` over all six orderings.
"""

import numpy as np

NAME = "python"

_TRIU_CACHE = {}
_TRIU_MAX = 3000


def _triu(n):
    idx = _TRIU_CACHE.get(n)
    if idx is None:
        idx = np.triu_indices(n, 1)
        if len(_TRIU_CACHE) > 16:
            _TRIU_CACHE.clear()
        _TRIU_CACHE[n] = idx
    return idx


def _pair_blocks(n):
    if n <= _TRIU_MAX:
        yield _triu(n)
        return
    for i in range(n - 1):
        j = np.arange(i + 1, n)
        yield np.full(j.size, i), j


def _pair_block_values(x, code, a, b, i, j):
    xi, xj = x[i], x[j]
    n = x.size
    if code == 0:
        return xj - xi, None
    if code == 1:
        return xj - xi, (n - 1 - j).astype(np.int64)
    if code == 2:
        return np.concatenate((a * xi + b * xj, a * xj + b * xi)), None
    if code == 3:
        r = np.sqrt(xi * xi + xj * xj)
        with np.errstate(invalid="ignore", divide="ignore"):
            v = 2.0 * xi * xj / r
        return np.where(r > 0.0, v, 0.0), None
    if code == 4:
        return xi / xj, None
    raise ValueError(f"unknown pair code {code}")


def pair_values(x, code, a=0.0, b=0.0):
    """Materialize the values (and integer weights, or None) of a pair statistic."""
    vals, wts = [], []
    for i, j in _pair_blocks(x.size):
        v, w = _pair_block_values(x, code, a, b, i, j)
        vals.append(v)
        wts.append(w)
    v = np.concatenate(vals) if vals else np.empty(0)
    w = None if code != 1 else (np.concatenate(wts) if wts else np.empty(0, np.int64))
    return v, w


def _triple_block(x, i):
    n = x.size
    jj, kk = np.triu_indices(n - i - 1, 1)
    jj = jj + i + 1
    kk = kk + i + 1
    p, q, r = x[i], x[jj], x[kk]
    return np.concatenate((
        p + q / 2.0 + r / 3.0, p + r / 2.0 + q / 3.0,
        q + p / 2.0 + r / 3.0, q + r / 2.0 + p / 3.0,
        r + p / 2.0 + q / 3.0, r + q / 2.0 + p / 3.0,
    ))


def triple_values(x, code):
    if code != 0:
        raise ValueError(f"unknown triple code {code}")
    blocks = [_triple_block(x, i) for i in range(x.size - 2)]
    return np.concatenate(blocks) if blocks else np.empty(0)


def weighted_counts(v, w, q):
    """Counts of values strictly below / at most each query point."""
    k = q.size
    right = np.searchsorted(q, v, side="right")
    left = np.searchsorted(q, v, side="left")
    if w is None:
        lt = np.bincount(right, minlength=k + 1)
        le = np.bincount(left, minlength=k + 1)
    else:
        w = np.asarray(w, dtype=np.float64)
        lt = np.bincount(right, weights=w, minlength=k + 1).astype(np.int64)
        le = np.bincount(left, weights=w, minlength=k + 1).astype(np.int64)
    return np.cumsum(lt[:k]).astype(np.int64), np.cumsum(le[:k]).astype(np.int64)


def pair_counts(x, code, a, b, q):
    k = q.size
    lt = np.zeros(k, dtype=np.int64)
    le = np.zeros(k, dtype=np.int64)
    for i, j in _pair_blocks(x.size):
        v, w = _pair_block_values(x, code, a, b, i, j)
        c1, c2 = weighted_counts(v, w, q)
        lt += c1
        le += c2
    return lt, le


def triple_counts(x, code, q):
    if code != 0:
        raise ValueError(f"unknown triple code {code}")
    k = q.size
    lt = np.zeros(k, dtype=np.int64)
    le = np.zeros(k, dtype=np.int64)
    for i in range(x.size - 2):
        c1, c2 = weighted_counts(_triple_block(x, i), None, q)
        lt += c1
        le += c2
    return lt, le
