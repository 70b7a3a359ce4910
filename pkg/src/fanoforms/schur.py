"""Decompositions of the Schur-functor expressions that appear in Koszul complexes.

A :class:`SchurExpr` is a formal sum of irreducible labels. Each label is a
tuple of weights, one per bundle factor; ``ranks`` gives the rank of each
factor. A bundle on Gr(m, N) built from Q and S uses ``ranks=(N - m, m)``,
labels ``(alpha, beta)``. Labels whose weights would need more rows than the
bundle rank are dropped, since those Schur functors vanish.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb, prod
from typing import Iterable, Mapping

from .weights import WeightError, as_weight, pad, tensor_weights, transpose, weyl_dim

Label = tuple[tuple[int, ...], ...]


class DecompositionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SchurExpr:
    ranks: tuple[int, ...]
    terms: Mapping[Label, int] = field(default_factory=dict)
    dropped: int = 0  # labels discarded for exceeding the bundle rank

    def __post_init__(self):
        clean = {}
        for label, mult in self.terms.items():
            if mult < 0:
                raise DecompositionError(f"negative multiplicity {mult} for {label}")
            if mult == 0:
                continue
            if len(label) != len(self.ranks):
                raise WeightError(f"label {label} does not match ranks {self.ranks}")
            label = tuple(as_weight(pad(w, r)) for w, r in zip(label, self.ranks))
            clean[label] = clean.get(label, 0) + mult
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def single(cls, ranks, *weights, mult=1) -> "SchurExpr":
        return cls(tuple(ranks), {tuple(tuple(w) for w in weights): mult})

    @classmethod
    def trivial(cls, ranks) -> "SchurExpr":
        return cls.single(ranks, *[(0,) * r for r in ranks])

    def dim(self) -> int:
        return sum(
            mult * prod(weyl_dim(w, r) for w, r in zip(label, self.ranks))
            for label, mult in self.terms.items()
        )

    def __add__(self, other: "SchurExpr") -> "SchurExpr":
        self._check(other)
        terms = Counter(self.terms)
        terms.update(other.terms)
        return SchurExpr(self.ranks, dict(terms), self.dropped + other.dropped)

    def __sub__(self, other: "SchurExpr") -> "SchurExpr":
        self._check(other)
        terms = dict(self.terms)
        for label, mult in other.terms.items():
            left = terms.get(label, 0) - mult
            if left < 0:
                raise DecompositionError(f"subtraction leaves {left} copies of {label}")
            terms[label] = left
        return SchurExpr(self.ranks, terms, self.dropped)

    def __mul__(self, other: "SchurExpr") -> "SchurExpr":
        """Tensor product, factor by factor, via Littlewood-Richardson."""
        self._check(other)
        out: Counter = Counter()
        for l1, m1 in self.terms.items():
            for l2, m2 in other.terms.items():
                parts = [tensor_weights(w1, w2, r) for w1, w2, r in zip(l1, l2, self.ranks)]
                for combo in _product_dicts(parts):
                    label, c = combo
                    out[label] += m1 * m2 * c
        return SchurExpr(self.ranks, dict(out))

    def dual(self) -> "SchurExpr":
        return SchurExpr(
            self.ranks,
            {tuple(tuple(-x for x in reversed(w)) for w in label): m for label, m in self.terms.items()},
        )

    def _check(self, other):
        if self.ranks != other.ranks:
            raise WeightError(f"rank contexts differ: {self.ranks} vs {other.ranks}")

    def to_json(self) -> dict:
        return {
            "ranks": list(self.ranks),
            "terms": [{"label": [list(w) for w in label], "mult": m} for label, m in self.terms.items()],
            "dropped": self.dropped,
        }


def _product_dicts(parts):
    if not parts:
        yield (), 1
        return
    head, rest = parts[0], parts[1:]
    for tail, c_tail in _product_dicts(rest):
        for w, c in head.items():
            yield (w,) + tail, c * c_tail


def on_grassmannian(m: int, N: int, terms: Mapping[tuple, int]) -> SchurExpr:
    """Expression on Gr(m, N) from ``{(alpha, beta): mult}``; empty alpha/beta mean zero."""
    return SchurExpr((N - m, m), {(a or (0,) * (N - m), b or (0,) * m): k for (a, b), k in terms.items()})


# ---------------------------------------------------------------- rank two


def rank2_tensor(e1: SchurExpr, e2: SchurExpr) -> SchurExpr:
    """Clebsch-Gordan: Sigma^{a,b} (x) Sigma^{c,d} = sum_j Sigma^{a+c-j, b+d+j}."""
    for e in (e1, e2):
        if e.ranks != (2,):
            raise WeightError("rank2_tensor needs expressions over a single rank-2 bundle")
    out: Counter = Counter()
    for ((a, b),), m1 in e1.terms.items():
        for ((c, d),), m2 in e2.terms.items():
            for j in range(min(a - b, c - d) + 1):
                out[((a + c - j, b + d + j),)] += m1 * m2
    return SchurExpr((2,), dict(out))


def rank2_character(e: SchurExpr) -> list[tuple[int, int]]:
    """All torus weights of a rank-2 expression, with repetition."""
    if e.ranks != (2,):
        raise WeightError("expected a rank-2 expression")
    weights = []
    for ((a, b),), mult in e.terms.items():
        weights.extend([(a - j, b + j) for j in range(a - b + 1)] * mult)
    return weights


def rank2_from_character(weights: Iterable[tuple[int, int]]) -> SchurExpr:
    """Peel off highest weights until the character is exhausted."""
    left = Counter(weights)
    out: Counter = Counter()
    while +left:
        a, b = max((w for w, c in left.items() if c > 0), key=lambda w: (w[0] - w[1], w))
        if a < b:
            raise DecompositionError("character is not Weyl-symmetric")
        k = left[(a, b)]
        for j in range(a - b + 1):
            w = (a - j, b + j)
            left[w] -= k
            if left[w] < 0:
                raise DecompositionError(f"character is not a sum of irreducibles near {w}")
        out[((a, b),)] += k
        left = +left
    return SchurExpr((2,), dict(out))


def rank2_exterior(e: SchurExpr, i: int) -> SchurExpr:
    ws = rank2_character(e)
    if not 0 <= i <= len(ws):
        raise ValueError(f"exterior power {i} out of range for rank {len(ws)}")
    return rank2_from_character(
        (sum(w[0] for w in c), sum(w[1] for w in c)) for c in combinations(ws, i)
    )


def rank2_symmetric(e: SchurExpr, i: int) -> SchurExpr:
    if i < 0:
        raise ValueError("symmetric power must be non-negative")
    ws = rank2_character(e)
    return rank2_from_character(
        (sum(w[0] for w in c), sum(w[1] for w in c)) for c in combinations_with_replacement(ws, i)
    )


def sym_label(d: int) -> SchurExpr:
    return SchurExpr.single((2,), (d, 0))


def rank2_ext_power(d: int, i: int) -> SchurExpr:
    """Lambda^i(S^d T) for a rank-2 bundle T."""
    if not 0 <= i <= d + 1:
        raise ValueError(f"need 0 <= i <= {d + 1}")
    return rank2_exterior(sym_label(d), i)


def rank2_sym_power(d: int, i: int) -> SchurExpr:
    """S^i(S^d T) for a rank-2 bundle T."""
    return rank2_symmetric(sym_label(d), i)


# ---------------------------------------------------- Lambda^2 of a bundle U


def w_set(a: int):
    """Sequences lambda_1 >= ... >= lambda_c >= c with a = |lambda| - c(c-1)/2."""
    out = []
    c = 1
    while c * c - c * (c - 1) // 2 <= a:
        target = a + c * (c - 1) // 2

        def rec(prefix, left, cap):
            if len(prefix) == c:
                if left == 0:
                    out.append(tuple(prefix))
                return
            slots = c - len(prefix)
            for v in range(min(cap, left - (slots - 1) * c), c - 1, -1):
                rec(prefix + [v], left - v, v)

        rec([], target, target)
        c += 1
    return out


def d_of(lam: tuple[int, ...]) -> tuple[int, ...]:
    """(lambda_1..lambda_c, c^(lambda_c - c + 1), (c-1)^(lambda_{c-1} - lambda_c), ..., 1^(lambda_1 - lambda_2))."""
    c = len(lam)
    tail = [c] * (lam[c - 1] - c + 1)
    for j in range(c - 1, 0, -1):
        tail += [j] * (lam[j - 1] - lam[j])
    return tuple(lam) + tuple(tail)


@lru_cache(maxsize=None)
def ext_lambda2(a: int, rank_u: int) -> SchurExpr:
    """Lambda^a(Lambda^2 U) = sum over W(a) of Sigma^{d(lambda)} U, multiplicity free."""
    if a < 0:
        raise ValueError("a must be non-negative")
    if a == 0:
        return SchurExpr.trivial((rank_u,))
    terms, dropped = {}, 0
    for lam in w_set(a):
        d = d_of(lam)
        if len(d) > rank_u:
            dropped += 1
            continue
        terms[(d,)] = 1
    return SchurExpr((rank_u,), terms, dropped)


@lru_cache(maxsize=None)
def two_column_schur(a: int, b: int, rank_u: int) -> SchurExpr:
    """Sigma^{(a,b)'}(Lambda^2 U) from Lambda^a (x) Lambda^b = sum_j Sigma^{(a+j, b-j)'}."""
    if not a >= b >= 0:
        raise ValueError("need a >= b >= 0")
    if b == 0:
        return ext_lambda2(a, rank_u)
    total = ext_lambda2(a, rank_u) * ext_lambda2(b, rank_u)
    for j in range(1, b + 1):
        total = total - two_column_schur(a + j, b - j, rank_u)
    return total


def koszul_box_terms(t: int) -> list[tuple[tuple[int, int], tuple[int, ...]]]:
    """Summands of Lambda^t(Lambda^2 U boxtimes L) for rank-2 L: ((a, b), (a,b)' label)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return [((a, t - a), transpose((a, t - a))) for a in range(t, (t + 1) // 2 - 1, -1) if a >= t - a]


def rank2_dim_check(d: int, i: int, exterior: bool = True) -> tuple[int, int]:
    """(dimension of the decomposition, expected dimension) for Lambda^i or S^i of S^d."""
    if exterior:
        return rank2_ext_power(d, i).dim(), comb(d + 1, i)
    return rank2_sym_power(d, i).dim(), comb(d + i, i)
