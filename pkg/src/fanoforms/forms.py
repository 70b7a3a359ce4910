"""Alternating forms in seven variables: the explicit 4-form on the Fano
scheme of a quartic sixfold, GL(7)-orbit invariants and the orbit classifier,
and the type of a line on a quartic."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .linalg import det_q, nullspace_mod_p, nullspace_q, rank_mod_p, rank_q


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) < len(seq):
        return 0
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class AltForm:
    """An element of Lambda^p of an n-dimensional space, in the basis e_I, I increasing (0-based)."""

    degree: int
    space_dim: int
    coeffs: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 1 or self.space_dim < 1:
            raise ValueError("degree and dimension must be positive")
        clean = {}
        for idx, c in self.coeffs.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {self.degree}")
            if idx and not 0 <= idx[0] <= idx[-1] < self.space_dim:
                raise ValueError(f"index tuple {idx} out of range")
            c = _frac(c)
            if c:
                clean[idx] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def from_terms(cls, degree, n, terms: Mapping[Sequence[int], object]) -> "AltForm":
        """Accepts unsorted index tuples; signs are absorbed."""
        out: dict = {}
        for idx, c in terms.items():
            s = perm_sign(idx)
            if s:
                key = tuple(sorted(idx))
                out[key] = out.get(key, Fraction(0)) + s * _frac(c)
        return cls(degree, n, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "AltForm") -> "AltForm":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return AltForm(self.degree, self.space_dim, out)

    def scale(self, c) -> "AltForm":
        c = _frac(c)
        return AltForm(self.degree, self.space_dim, {k: c * v for k, v in self.coeffs.items()})

    def evaluate(self, vectors: Sequence[Sequence]) -> Fraction:
        """sum_I f_I det(v_j[I])."""
        if len(vectors) != self.degree:
            raise ValueError(f"need {self.degree} vectors")
        total = Fraction(0)
        for idx, c in self.coeffs.items():
            total += c * det_q([[v[i] for i in idx] for v in vectors])
        return total

    def wedge(self, other: "AltForm") -> "AltForm":
        if self.space_dim != other.space_dim:
            raise ValueError("dimension mismatch")
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                s = perm_sign(i + j)
                if s:
                    key = tuple(sorted(i + j))
                    out[key] = out.get(key, Fraction(0)) + s * a * b
        return AltForm(self.degree + other.degree, self.space_dim, out)

    def contract(self, u: Sequence) -> "AltForm":
        """u -| f, contracting the first slot."""
        if self.degree == 1:
            raise ValueError("contraction of a 1-form is a scalar; use evaluate")
        out: dict = {}
        for idx, c in self.coeffs.items():
            for pos, a in enumerate(idx):
                if u[a]:
                    key = idx[:pos] + idx[pos + 1:]
                    out[key] = out.get(key, Fraction(0)) + (-1) ** pos * _frac(u[a]) * c
        return AltForm(self.degree - 1, self.space_dim, out)

    def act(self, g: Sequence[Sequence]) -> "AltForm":
        """Image under g in GL(n), acting on each tensor slot: (g f)_J = sum_I f_I det g[J, I]."""
        n = self.space_dim
        g = [[_frac(x) for x in row] for row in g]
        out = {}
        for J in combinations(range(n), self.degree):
            val = Fraction(0)
            for I, c in self.coeffs.items():
                val += c * det_q([[g[r][col] for col in I] for r in J])
            if val:
                out[J] = val
        return AltForm(self.degree, n, out)

    def hodge_dual(self) -> "AltForm":
        """Complement map Lambda^p -> Lambda^{n-p}, fixed by e_0 ^ ... ^ e_{n-1}."""
        n = self.space_dim
        out = {}
        for idx, c in self.coeffs.items():
            comp = tuple(i for i in range(n) if i not in idx)
            out[comp] = perm_sign(idx + comp) * c
        return AltForm(n - self.degree, n, out)

    def to_json(self) -> list:
        return [{"indices": [i + 1 for i in idx], "coeff": str(c)} for idx, c in self.coeffs.items()]

    @classmethod
    def from_json(cls, data, degree: int | None = None, n: int = 7) -> "AltForm":
        if isinstance(data, dict):
            n = data.get("n", n)
            degree = data.get("degree", degree)
            data = data["terms"]
        terms = {}
        for t in data:
            idx = tuple(int(i) - 1 for i in t["indices"])
            terms[idx] = terms.get(idx, 0) + Fraction(str(t["coeff"]))
        if degree is None:
            if not terms:
                raise ValueError("cannot infer the degree of an empty form")
            degree = len(next(iter(terms)))
        return cls.from_terms(degree, n, terms)

    def dumps(self) -> str:
        return json.dumps({"degree": self.degree, "n": self.space_dim, "terms": self.to_json()})


# ----------------------------------------------------------- the 4-form

BASIS = ("a0", "a1", "b0", "b1", "c1", "c2", "c3")


class TangentVector7(NamedTuple):
    a0: Fraction = Fraction(0)
    a1: Fraction = Fraction(0)
    b0: Fraction = Fraction(0)
    b1: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)


_ALPHA4_TERMS = {
    ("a0", "b0", "c2", "c3"): 1,
    ("a0", "b1", "c1", "c3"): -1,
    ("a1", "b0", "c1", "c3"): -1,
    ("a1", "b1", "c1", "c2"): 1,
}


def eval_alpha4(*xi: TangentVector7) -> Fraction:
    """Sum of four signed 4x4 determinants in the coordinates of the four tangent vectors."""
    if len(xi) != 4:
        raise ValueError("eval_alpha4 takes four tangent vectors")
    total = Fraction(0)
    for names, sign in _ALPHA4_TERMS.items():
        total += sign * det_q([[_frac(getattr(v, nm)) for nm in names] for v in xi])
    return total


def alpha4_as_form() -> AltForm:
    return AltForm.from_terms(4, 7, {tuple(BASIS.index(nm) for nm in names): s for names, s in _ALPHA4_TERMS.items()})


# ----------------------------------------------------------- invariants


def two_rank(f: AltForm) -> int:
    """Rank of (x, y) -> f(x ^ y) on Lambda^k, p = 2k."""
    if f.degree % 2:
        raise ValueError("two_rank needs an even degree")
    k = f.degree // 2
    basis = list(combinations(range(f.space_dim), k))
    mat = []
    for I in basis:
        row = []
        for J in basis:
            s = perm_sign(I + J)
            row.append(s * f.coeffs.get(tuple(sorted(I + J)), 0) if s else 0)
        mat.append(row)
    return rank_q(mat)


def lie_action(f: AltForm, a: int, b: int) -> dict:
    """E_ab . f, where E_ab sends e_b to e_a, acting as a derivation."""
    out: dict = {}
    for idx, c in f.coeffs.items():
        for pos, i in enumerate(idx):
            if i != b:
                continue
            new = idx[:pos] + (a,) + idx[pos + 1:]
            s = perm_sign(new)
            if s:
                key = tuple(sorted(new))
                out[key] = out.get(key, Fraction(0)) + s * c
    return out


def orbit_dim(f: AltForm) -> int:
    """Rank of gl(n) -> Lambda^p, X -> X.f."""
    n = f.space_dim
    basis = {idx: k for k, idx in enumerate(combinations(range(n), f.degree))}
    rows = []
    for a in range(n):
        for b in range(n):
            row = [Fraction(0)] * len(basis)
            for idx, c in lie_action(f, a, b).items():
                row[basis[idx]] += c
            rows.append(row)
    return rank_q(rows)


def _as_three_form(f: AltForm) -> AltForm:
    if f.space_dim != 7:
        raise ValueError("q_rank is defined for n = 7")
    if f.degree == 4:
        return f.hodge_dual()
    if f.degree == 3:
        return f
    raise ValueError("q_rank needs a 3-form or a 4-form")


def q_matrix(f: AltForm, volume=1) -> list[list[Fraction]]:
    """Polarized q_w(u, v) = [w ^ (u -| w) ^ (v -| w)] / volume."""
    w = _as_three_form(f)
    volume = _frac(volume)
    top = tuple(range(7))
    units = [[1 if i == a else 0 for i in range(7)] for a in range(7)]
    contr = [w.contract(u) if not w.is_zero() else AltForm(2, 7) for u in units]
    mat = [[Fraction(0)] * 7 for _ in range(7)]
    for a in range(7):
        wa = w.wedge(contr[a])
        for b in range(a, 7):
            val = wa.wedge(contr[b]).coeffs.get(top, Fraction(0)) / volume
            mat[a][b] = mat[b][a] = val
    return mat


def q_rank(f: AltForm, volume=1) -> int:
    return rank_q(q_matrix(f, volume))


@dataclass(frozen=True)
class OrbitRecord:
    name: str
    orbit_dim: int
    two_rank: int
    q_rank: int
    tabulated: bool = True  # False: recomputed triple that replaces a tabulated one

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.orbit_dim, self.two_rank, self.q_rank)

    def to_json(self) -> dict:
        return {"orbit": self.name, "d": self.orbit_dim, "r2": self.two_rank, "rank": self.q_rank,
                "tabulated": self.tabulated}


ORBIT_TABLE = (
    OrbitRecord("O9", 35, 21, 7),
    OrbitRecord("O7", 34, 18, 4),
    OrbitRecord("O5", 31, 16, 2),
    OrbitRecord("O6", 28, 16, 1),
    OrbitRecord("O3", 26, 12, 0),
    OrbitRecord("O4", 25, 12, 0),
    OrbitRecord("O8", 24, 15, 1),
    OrbitRecord("O2", 20, 10, 0),
    OrbitRecord("O1", 13, 6, 0),
    OrbitRecord("zero", 0, 0, 0),
)
assert len({r.triple for r in ORBIT_TABLE}) == len(ORBIT_TABLE)

# Two tabulated triples are never attained. The orbit of e1 ^ (e23 + e45 + e67)
# has dimension 7 + 15 - 1 = 21, not 24, and the 28-dimensional orbit has
# 2-rank 15, not 16. Both values were confirmed by a dense-tensor computation.
RECOMPUTED_TRIPLES = (
    OrbitRecord("O8", 21, 15, 1, tabulated=False),
    OrbitRecord("O6", 28, 15, 1, tabulated=False),
)


class NoOrbitMatch(RuntimeError):
    pass


def invariants(f: AltForm) -> tuple[int, int, int]:
    """(orbit_dim, two_rank, q_rank), computed on the 4-form side."""
    if f.space_dim != 7 or f.degree not in (3, 4):
        raise ValueError("invariants are defined for 3- and 4-forms in 7 variables")
    f4 = f if f.degree == 4 else f.hodge_dual()
    return orbit_dim(f4), two_rank(f4), q_rank(f4)


def classify_orbit(f: AltForm) -> OrbitRecord:
    triple = invariants(f)
    for rec in ORBIT_TABLE + RECOMPUTED_TRIPLES:
        if rec.triple == triple:
            return rec
    raise NoOrbitMatch(f"invariants {triple} match no GL(7)-orbit")


def random_form(degree: int, n: int, rng: np.random.Generator, bound: int = 5) -> AltForm:
    coeffs = {idx: int(rng.integers(-bound, bound + 1)) for idx in combinations(range(n), degree)}
    return AltForm(degree, n, coeffs)


def random_gl(n: int, rng: np.random.Generator, bound: int = 3) -> list[list[int]]:
    while True:
        g = rng.integers(-bound, bound + 1, size=(n, n)).tolist()
        if det_q(g) != 0:
            return g


# ------------------------------------------------------------ line type


class SingularLine(ValueError):
    pass


@dataclass
class LineType:
    kind: str  # "FirstType" or "SecondType"
    partials: list[list]  # six binary cubics, coefficients of s^3, s^2 t, s t^2, t^3
    span: int
    normalizer: list[list] | None = None  # 6x6 matrix A with A . partials = (s^3, s^2 t, s t^2, t^3, 0, 0)

    def to_json(self) -> dict:
        return {
            "type": self.kind,
            "span": self.span,
            "partials": [[str(c) for c in p] for p in self.partials],
            "normalizer": None if self.normalizer is None else [[str(c) for c in r] for r in self.normalizer],
        }


def _complete_basis(p, q, field_rank, nullspace):
    """Columns w_0..w_5, p, q forming a basis of the 8-dimensional space."""
    if field_rank([p, q]) != 2:
        raise ValueError("the two points must be independent")
    cols = []
    for i in range(8):
        e = [1 if j == i else 0 for j in range(8)]
        if field_rank([p, q] + cols + [e]) == len(cols) + 3:
            cols.append(e)
        if len(cols) == 6:
            break
    return cols + [list(p), list(q)]


def _restrict(poly: Mapping[tuple, object], p, q, mul, add, zero):
    """Binary form g(s, t) = poly(s p + t q), as coefficients of s^{d-j} t^j."""
    deg = sum(next(iter(poly))) if poly else 0
    out = [zero] * (deg + 1)
    for mono, c in poly.items():
        cur = [c]
        for var, e in enumerate(mono):
            for _ in range(e):
                nxt = [zero] * (len(cur) + 1)
                for j, x in enumerate(cur):
                    nxt[j] = add(nxt[j], mul(x, p[var]))
                    nxt[j + 1] = add(nxt[j + 1], mul(x, q[var]))
                cur = nxt
        for j, x in enumerate(cur):
            out[j] = add(out[j], x)
    return out


def line_type(f, p: Sequence, q: Sequence) -> LineType:
    """Classify the line through points p and q of the quartic ``f`` (a QuarticForm in 8 variables)."""
    if f.n_vars != 8 or f.degree != 4:
        raise ValueError("expected a quartic in 8 variables")
    P = f.prime
    if P is None:
        p, q = [_frac(x) for x in p], [_frac(x) for x in q]
        coeffs = {m: _frac(c) for m, c in f.coeffs.items()}
        mul, add, zero = (lambda a, b: a * b), (lambda a, b: a + b), Fraction(0)
        field_rank, nullspace = rank_q, nullspace_q
        inv = lambda a: 1 / a
    else:
        p, q = [int(x) % P for x in p], [int(x) % P for x in q]
        coeffs = {m: int(c) % P for m, c in f.coeffs.items()}
        mul, add, zero = (lambda a, b: a * b % P), (lambda a, b: (a + b) % P), 0
        field_rank = lambda rows: rank_mod_p(np.array(rows, dtype=np.int64), P)
        nullspace = lambda rows: nullspace_mod_p(rows, P)
        inv = lambda a: pow(int(a), -1, P)
    if any(x != zero for x in _restrict(coeffs, p, q, mul, add, zero)):
        raise ValueError("the line does not lie on the hypersurface")
    M = _complete_basis(p, q, field_rank, nullspace)  # columns of the coordinate change
    grads = []
    for i in range(8):
        part = {}
        for mono, c in coeffs.items():
            if mono[i]:
                new = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
                part[new] = add(part.get(new, zero), mul(c, mono[i] if P is None else mono[i] % P))
        grads.append(_restrict(part, p, q, mul, add, zero) if part else [zero] * 4)
    # d f(M y)/d y_i = sum_j M[j][i] df/dx_j
    partials = []
    for i in range(6):
        col = M[i]
        cub = [zero] * 4
        for j in range(8):
            if col[j]:
                cub = [add(a, mul(col[j], b)) for a, b in zip(cub, grads[j])]
        partials.append(cub)
    span = field_rank(partials)
    if span <= 2:
        raise SingularLine(f"restricted partials span only {span} dimensions; Y is singular along the line")
    if span == 3:
        return LineType("SecondType", partials, 3)
    # normalizer: rows 0..3 invert an independent 4x4 block, rows 4, 5 span the left kernel
    chosen = []
    for i in range(6):
        if field_rank([partials[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
    block = [partials[i] for i in chosen]  # rows: chosen partials; block^T x = e_k
    top = []
    for k in range(4):
        rhs = [1 if j == k else 0 for j in range(4)]
        sol = _solve([[block[r][c] for r in range(4)] for c in range(4)], rhs, inv, mul, add, zero, P)
        row = [zero] * 6
        for r, i in enumerate(chosen):
            row[i] = sol[r]
        top.append(row)
    kernel = nullspace([[partials[r][c] for r in range(6)] for c in range(4)])
    return LineType("FirstType", partials, 4, top + [list(v) for v in kernel])


def _solve(a, b, inv, mul, add, zero, P):
    """Solve a x = b for square invertible a over Q or GF(P)."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    neg = (lambda x: -x) if P is None else (lambda x: (-x) % P)
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != zero)
        aug[c], aug[piv] = aug[piv], aug[c]
        iv = inv(aug[c][c])
        aug[c] = [mul(x, iv) for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != zero:
                fct = aug[i][c]
                aug[i] = [add(x, neg(mul(fct, y))) for x, y in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]
