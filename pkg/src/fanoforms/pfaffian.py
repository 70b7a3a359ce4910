"""Pfaffians, skew-rank strata, kernel hulls of constant-rank pencils, and
the small closed-form degree constants."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Sequence

import numpy as np

from .linalg import nullspace_mod_p, nullspace_q, rank_mod_p, rank_q


class SkewError(ValueError):
    pass


def _norm(x, p):
    return Fraction(x) if p is None else int(x) % p


def _inv(x, p):
    return 1 / Fraction(x) if p is None else pow(int(x), -1, p)


@dataclass(frozen=True)
class SkewMatrix:
    """Antisymmetric matrix over Q (``prime`` None) or GF(prime)."""

    entries: tuple[tuple, ...]
    prime: int | None = None

    def __post_init__(self):
        p = self.prime
        rows = tuple(tuple(_norm(x, p) for x in row) for row in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SkewError("matrix is not square")
        for i in range(n):
            if rows[i][i] != 0:
                raise SkewError("diagonal must vanish")
            for j in range(i + 1, n):
                if rows[i][j] != _norm(-rows[j][i], p):
                    raise SkewError(f"entries ({i},{j}) and ({j},{i}) are not opposite")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def rank(self) -> int:
        if self.prime is None:
            return rank_q(self.entries)
        return rank_mod_p(np.array(self.entries, dtype=np.int64), self.prime)

    def kernel(self) -> list[list]:
        if self.prime is None:
            return nullspace_q(self.entries)
        return nullspace_mod_p(self.entries, self.prime)

    def principal(self, idx: Sequence[int]) -> "SkewMatrix":
        return SkewMatrix(tuple(tuple(self.entries[i][j] for j in idx) for i in idx), self.prime)

    def __add__(self, other: "SkewMatrix") -> "SkewMatrix":
        return SkewMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), self.prime)

    def scale(self, c) -> "SkewMatrix":
        return SkewMatrix(tuple(tuple(c * a for a in r) for r in self.entries), self.prime)

    def congruent(self, g: Sequence[Sequence]) -> "SkewMatrix":
        """g M g^T."""
        p = self.prime
        m = self.entries
        n = self.size
        gm = [[_norm(sum(g[i][a] * m[a][j] for a in range(n)), p) for j in range(n)] for i in range(n)]
        return SkewMatrix(tuple(tuple(_norm(sum(gm[i][a] * g[j][a] for a in range(n)), p) for j in range(n)) for i in range(n)), p)


class _PfaffianTable:
    """Pfaffians of all principal submatrices of one matrix, sharing one memo keyed by index bitmask."""

    def __init__(self, M: SkewMatrix):
        self.a, self.p, self.n = M.entries, M.prime, M.size
        self.memo: dict[int, object] = {0: _norm(1, self.p)}

    def __call__(self, mask: int):
        memo = self.memo
        if mask in memo:
            return memo[mask]
        a, p = self.a, self.p
        idx = [i for i in range(self.n) if mask >> i & 1]
        i0 = idx[0]
        rest = mask & ~(1 << i0)
        total = 0
        for pos, j in enumerate(idx[1:]):
            if a[i0][j]:
                term = a[i0][j] * self(rest & ~(1 << j))
                total = total - term if pos % 2 else total + term
        total = _norm(total, p)
        memo[mask] = total
        return total

    def minor(self, idx: Sequence[int]):
        if len(idx) % 2:
            raise SkewError("the Pfaffian needs an even size")
        return self(sum(1 << i for i in idx))


def pfaffian(M: SkewMatrix):
    """Pf(M) by expansion along the first remaining row, memoized on index subsets."""
    if M.size % 2:
        raise SkewError("the Pfaffian needs an even size")
    return _PfaffianTable(M)((1 << M.size) - 1)


def principal_pfaffians(M: SkewMatrix, size: int):
    table = _PfaffianTable(M)
    for idx in combinations(range(M.size), size):
        yield idx, table.minor(idx)


def pfaffian_rank_stratum(M: SkewMatrix, k: int) -> bool:
    """True iff every principal Pfaffian of size 2(n-k+1) vanishes, i.e. rank M <= 2n - 2k."""
    if M.size % 2:
        raise SkewError("need even size")
    n = M.size // 2
    if not 1 <= k <= n - 1:
        raise SkewError(f"k must lie in 1..{n - 1}")
    return all(v == 0 for _, v in principal_pfaffians(M, 2 * (n - k + 1)))


# ------------------------------------------------------------- pencils


@dataclass(frozen=True)
class SkewPencil:
    A: SkewMatrix
    B: SkewMatrix

    def __post_init__(self):
        if self.A.size != self.B.size or self.A.prime != self.B.prime:
            raise SkewError("pencil members must share size and field")
        if self.A.size % 2:
            raise SkewError("need even size")
        flat = [list(sum(self.A.entries, ())), list(sum(self.B.entries, ()))]
        r = rank_q(flat) if self.prime is None else rank_mod_p(np.array(flat, dtype=np.int64), self.prime)
        if r < 2:
            raise SkewError("A and B are linearly dependent")

    @property
    def prime(self):
        return self.A.prime

    def at(self, t) -> SkewMatrix:
        """A + t B, with t = None meaning the point at infinity (B)."""
        if t is None:
            return self.B
        return self.A + self.B.scale(_norm(t, self.prime))


def _interpolate(xs, ys, p):
    """Coefficients (low to high) of the polynomial through (xs, ys)."""
    n = len(xs)
    coeffs = [_norm(0, p)] * n
    for i in range(n):
        basis = [_norm(1, p)]
        denom = _norm(1, p)
        for j in range(n):
            if j == i:
                continue
            basis = [_norm(a - xs[j] * b, p) for a, b in zip([_norm(0, p)] + basis, basis + [_norm(0, p)])]
            denom = _norm(denom * (xs[i] - xs[j]), p)
        scale = _norm(ys[i] * _inv(denom, p), p)
        coeffs = [_norm(c + scale * b, p) for c, b in zip(coeffs, basis)]
    return _trim(coeffs)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, b, p):
    a = list(a)
    lead = _inv(b[-1], p)
    while len(a) >= len(b):
        f = _norm(a[-1] * lead, p)
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] = _norm(a[shift + i] - f * x, p)
        a = _trim(a)
        if not a:
            break
    return a


def poly_gcd(polys, p):
    g: list = []
    for f in polys:
        f = _trim(f)
        while f:
            g, f = f, _poly_mod(g, f, p) if g else []
        g = _trim(g)
    return g


def _sample_points(count, p):
    return [_norm(i, p) for i in range(count)]


def minor_polynomials(pencil: SkewPencil, size: int) -> list[list]:
    """Principal Pfaffians of ``size`` of A + tB, as polynomials in t of degree <= size/2."""
    pts = _sample_points(size // 2 + 1, pencil.prime)
    tables = [_PfaffianTable(pencil.at(t)) for t in pts]
    polys = []
    for idx in combinations(range(pencil.A.size), size):
        ys = [tb.minor(idx) for tb in tables]
        polys.append(_interpolate(pts, ys, pencil.prime))
    return polys


def constant_rank_certificate(pencil: SkewPencil, k: int) -> bool:
    """Every member of the pencil (t in the closure of the field and t = oo) has rank exactly 2n - 2k."""
    n = pencil.A.size // 2
    r = 2 * (n - k)
    if any(minor_polynomials(pencil, r + 2)):
        return False
    if pencil.B.rank() != r:
        return False
    g = poly_gcd(minor_polynomials(pencil, r), pencil.prime) if r else [1]
    return len(g) == 1


@dataclass
class HullResult:
    constant_rank: bool
    hull_dim: int
    sample_ranks: list[int]

    def to_json(self) -> dict:
        return {"constant_rank": self.constant_rank, "hull_dim": self.hull_dim, "sample_ranks": self.sample_ranks}


def pencil_kernel_hull(pencil: SkewPencil, k: int) -> HullResult:
    """Span of the kernels of 2n+1 members; constant_rank also needs the parametric certificate."""
    n = pencil.A.size // 2
    if not 1 <= k <= n - 1:
        raise SkewError(f"k must lie in 1..{n - 1}")
    p = pencil.prime
    target = 2 * n - 2 * k
    vectors, ranks = [], []
    for t in _sample_points(2 * n + 1, p):
        m = pencil.at(t)
        ker = m.kernel()
        ranks.append(m.size - len(ker))
        vectors.extend(ker)
    if not vectors:
        hull = 0
    elif p is None:
        hull = rank_q(vectors)
    else:
        hull = rank_mod_p(np.array(vectors, dtype=np.int64), p)
    constant = all(r == target for r in ranks) and constant_rank_certificate(pencil, k)
    return HullResult(constant, hull, ranks)


def random_skew(size: int, rng: np.random.Generator, prime: int) -> SkewMatrix:
    m = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = int(rng.integers(0, prime))
            m[i][j], m[j][i] = v, -v
    return SkewMatrix(tuple(map(tuple, m)), prime)


def random_invertible(size: int, rng: np.random.Generator, prime: int) -> list[list[int]]:
    while True:
        g = rng.integers(0, prime, size=(size, size))
        if rank_mod_p(g, prime) == size:
            return g.tolist()


def random_bounded_rank(size: int, rank: int, rng: np.random.Generator, prime: int) -> SkewMatrix:
    """Random skew matrix of rank <= ``rank``: g (block-diagonal random skew) g^T."""
    core = random_skew(rank, rng, prime).entries if rank else ()
    m = [[0] * size for _ in range(size)]
    for i in range(rank):
        for j in range(rank):
            m[i][j] = core[i][j]
    return SkewMatrix(tuple(map(tuple, m)), prime).congruent(random_invertible(size, rng, prime))


def _isotropic_member(n, k, rng, prime):
    """[[0, C], [-C^T, D]] with a zero (n+k)-block: every such form vanishes on the first n+k basis vectors."""
    u, w = n + k, n - k
    C = rng.integers(0, prime, size=(u, w))
    D = random_skew(w, rng, prime).entries if w else ()
    m = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(u):
        for j in range(w):
            m[i][u + j] = int(C[i, j])
            m[u + j][i] = -int(C[i, j])
    for i in range(w):
        for j in range(w):
            m[u + i][u + j] = D[i][j]
    return SkewMatrix(tuple(map(tuple, m)), prime)


def random_constant_rank_pencil(n: int, k: int, rng: np.random.Generator, prime: int,
                                max_tries: int = 50) -> tuple[SkewPencil, int]:
    """A pencil of rank 2n-2k forms that passes ``constant_rank_certificate``.

    Candidates share an isotropic (n+k)-space, moved by a random change of
    basis; each candidate is kept only if the certificate accepts it.
    Returns the pencil and the number of rejected candidates.
    """
    if not 1 <= k <= n - 1:
        raise SkewError(f"k must lie in 1..{n - 1}")
    for tries in range(max_tries):
        g = random_invertible(2 * n, rng, prime)
        A = _isotropic_member(n, k, rng, prime).congruent(g)
        B = _isotropic_member(n, k, rng, prime).congruent(g)
        try:
            pencil = SkewPencil(A, B)
        except SkewError:
            continue
        if constant_rank_certificate(pencil, k):
            return pencil, tries
    raise RuntimeError(f"no constant-rank pencil after {max_tries} candidates")


def hull_trials(n: int, k: int, trials: int, seed: int, prime: int) -> dict:
    rng = np.random.default_rng(seed)
    hist: Counter = Counter()
    accepted = rejected = 0
    for _ in range(trials):
        pencil, rej = random_constant_rank_pencil(n, k, rng, prime)
        rejected += rej
        res = pencil_kernel_hull(pencil, k)
        if res.constant_rank:
            accepted += 1
            hist[res.hull_dim] += 1
    return {
        "n": n, "k": k, "trials": trials, "constant_rank_accepted": accepted,
        "rejected_candidates": rejected, "hull_dims": {str(d): c for d, c in sorted(hist.items())},
        "expected_hull_dim": n + k,
        "pass": accepted == trials and set(hist) == {n + k},
    }


# ---------------------------------------------------------- constants


def catalan_degree(n: int) -> int:
    """deg Gr(2, n+1) = (2n-2)! / (n! (n-1)!)."""
    if n < 1:
        raise ValueError("n must be positive")
    return factorial(2 * n - 2) // (factorial(n) * factorial(n - 1))


def cn_constant(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    return (n * n - 3 * n + 4) // 2


def crepancy_bidegrees(n: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """(det bidegree of Lambda^2 U* boxtimes L*, canonical bidegree) by adjunction."""
    if n < 2:
        raise ValueError("n must be at least 2")
    det = (2 * n, n * (n + 1) // 2)
    ambient = (-2 * n, -n * (2 * n - 1))
    return det, (ambient[0] + det[0], ambient[1] + det[1])
