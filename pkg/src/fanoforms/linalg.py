"""Exact rank and kernel computations over the rationals and over prime fields."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

_MAX_FLOAT_PRIME = 1 << 17


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def random_prime(seed: int, lo: int = 10**4, hi: int = 10**5) -> int:
    """A prime drawn uniformly-ish from (lo, hi) by a seeded generator."""
    rng = np.random.default_rng(seed)
    while True:
        n = int(rng.integers(lo + 1, hi))
        if is_prime(n):
            return n


def _small_rank_mod_p(rows: list[list[int]], p: int) -> int:
    a = [[x % p for x in row] for row in rows]
    return len(_echelon_mod_p(a, p))


def _echelon_mod_p(a: list[list[int]], p: int) -> list[int]:
    """In-place row reduction of ``a`` over GF(p); returns the pivot columns."""
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def rank_mod_p(mat, p: int) -> int:
    """Rank of an integer matrix over GF(p).

    Dense two-level blocked elimination. Trailing updates are float64 matrix
    products; with ``p < 2**17`` every intermediate stays an exact integer
    below 2**53, so the trailing block is only reduced mod p when it becomes
    the next panel. Larger primes fall back to pure Python.
    """
    a = np.asarray(mat)
    if a.ndim != 2 or 0 in a.shape:
        return 0
    if p >= _MAX_FLOAT_PRIME:
        return _small_rank_mod_p([[int(x) for x in row] for row in a.tolist()], p)
    # short side as columns: fewer panels
    if a.shape[1] > a.shape[0]:
        a = a.T
    a = np.mod(a.astype(np.int64), p).astype(np.float64)
    _, pivcols = _reduce(a, p, _WIDTHS)
    return len(pivcols)


_WIDTHS = (96, 12)


def _reduce(a: np.ndarray, p: int, widths: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Blocked elimination on ``a`` (float64 holding exact integers; clobbered).

    Returns ``(pivrows, pivcols)``. Rows are never permuted: once a row has
    served as a pivot, the trailing update drives it to zero mod p.
    """
    n = a.shape[1]
    if not widths or n <= widths[-1]:
        return _reduce_base(np.mod(a, p).astype(np.int64), p)
    w = widths[0]
    pivrows: list[int] = []
    pivcols: list[int] = []
    for c in range(0, n, w):
        slab = np.mod(a[:, c:c + w], p)
        pr, pc = _reduce(slab.copy(), p, widths[1:])
        if not pc:
            continue
        if c + w < n:
            xinv = _inv_mod_p(slab[np.ix_(pr, pc)].astype(np.int64), p).astype(np.float64)
            coef = np.mod(slab[:, pc] @ xinv, p)
            u = np.mod(a[pr, c + w:], p)
            a[:, c + w:] -= coef @ u
        pivrows.extend(pr)
        pivcols.extend(c + j for j in pc)
    return pivrows, pivcols


def _reduce_base(w: np.ndarray, p: int) -> tuple[list[int], list[int]]:
    m, b = w.shape
    used = np.zeros(m, dtype=bool)
    pivrows: list[int] = []
    pivcols: list[int] = []
    for c in range(b):
        nz = np.nonzero((w[:, c] != 0) & ~used)[0]
        if nz.size == 0:
            continue
        r = int(nz[0])
        rowv = w[r] * pow(int(w[r, c]), -1, p) % p
        f = w[:, c].copy()
        f[r] = 0
        w -= np.outer(f, rowv)
        np.mod(w, p, out=w)
        used[r] = True
        pivrows.append(r)
        pivcols.append(c)
    return pivrows, pivcols


def _inv_mod_p(x: np.ndarray, p: int) -> np.ndarray:
    k = x.shape[0]
    aug = np.concatenate([x % p, np.eye(k, dtype=np.int64)], axis=1)
    for c in range(k):
        nz = np.nonzero(aug[c:, c])[0]
        if nz.size == 0:
            raise ZeroDivisionError("pivot block is singular")
        r = c + int(nz[0])
        if r != c:
            aug[[c, r]] = aug[[r, c]]
        aug[c] = aug[c] * pow(int(aug[c, c]), -1, p) % p
        f = aug[:, c].copy()
        f[c] = 0
        aug = (aug - np.outer(f, aug[c])) % p
    return aug[:, k:]


def nullspace_mod_p(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of the right kernel {v : A v = 0} over GF(p)."""
    a = [[int(x) % p for x in row] for row in rows]
    n = len(a[0]) if a else 0
    pivots = _echelon_mod_p(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-a[r][f]) % p
        basis.append(v)
    return basis


def _echelon_q(a: list[list[Fraction]]) -> list[int]:
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def rank_q(rows: Sequence[Sequence]) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination on integers."""
    a = _integer_rows(rows)
    a = [row for row in a if any(row)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, m):
            row = a[i]
            f = row[c]
            if f:
                a[i] = [(pv * x - f * y) // prev for x, y in zip(row, pr)]
            else:
                a[i] = [(pv * x) // prev for x in row]
        prev = pv
        r += 1
        if r == m:
            break
    return r


def nullspace_q(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a[0]) if a else 0
    pivots = _echelon_q(a)
    basis = []
    for f in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -a[r][f]
        basis.append(v)
    return basis


def det_q(rows: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by fraction-exact elimination."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def det_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[int(x) % p for x in row] for row in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p
