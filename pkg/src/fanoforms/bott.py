"""Borel-Weil-Bott cohomology of Sigma^alpha Q (x) Sigma^beta S on Gr(m, N).

Conventions: S is the tautological subbundle of rank m, Q the quotient of rank
N - m. The weight sequence is (alpha, beta) in that order and rho is
(N, N-1, ..., 1). Positive sub-weights are negative bundles: beta = (-1, -1)
is det S* = O(1), whose H^0 is Lambda^2 of the ambient space on Gr(2, N).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .weights import WeightError, as_weight, weyl_dim


@dataclass(frozen=True)
class GrassmannianBundle:
    ambient_dim: int
    sub_rank: int
    quotient_weight: tuple[int, ...]
    sub_weight: tuple[int, ...]

    def __post_init__(self):
        N, m = self.ambient_dim, self.sub_rank
        if not 1 <= m <= N - 1:
            raise WeightError(f"need 1 <= m <= N-1, got m={m}, N={N}")
        alpha = as_weight(self.quotient_weight)
        beta = as_weight(self.sub_weight)
        if len(alpha) != N - m or len(beta) != m:
            raise WeightError(
                f"weights of lengths {len(alpha)}, {len(beta)} do not fit Gr({m},{N})"
            )
        object.__setattr__(self, "quotient_weight", alpha)
        object.__setattr__(self, "sub_weight", beta)

    @property
    def dimension(self) -> int:
        return self.sub_rank * (self.ambient_dim - self.sub_rank)


@dataclass(frozen=True)
class BottResult:
    """Either vanishing in every degree, or one group Sigma^weight V in degree q."""

    vanishing: bool
    q: int | None = None
    weight: tuple[int, ...] | None = None
    dim: int = 0

    def to_json(self) -> dict:
        if self.vanishing:
            return {"status": "vanishing", "q": None, "lambda": None, "dim": 0}
        return {"status": "cohomology", "q": self.q, "lambda": list(self.weight), "dim": self.dim}


VANISHING = BottResult(vanishing=True)


def rho(N: int) -> tuple[int, ...]:
    return tuple(range(N, 0, -1))


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] < seq[j])


def bott_cohomology(b: GrassmannianBundle) -> BottResult:
    N = b.ambient_dim
    s = tuple(x + r for x, r in zip(b.quotient_weight + b.sub_weight, rho(N)))
    if len(set(s)) < N:
        return VANISHING
    q = inversions(s)
    lam = tuple(x - r for x, r in zip(sorted(s, reverse=True), rho(N)))
    return BottResult(vanishing=False, q=q, weight=lam, dim=weyl_dim(lam, N))


def bott(m: int, N: int, alpha: Sequence[int] | None = None, beta: Sequence[int] | None = None) -> BottResult:
    """Shorthand; missing weights default to zero."""
    alpha = tuple(alpha) if alpha is not None else (0,) * (N - m)
    beta = tuple(beta) if beta is not None else (0,) * m
    return bott_cohomology(GrassmannianBundle(N, m, alpha, beta))


def expected_line_degrees(a: int, b: int) -> set[int]:
    """Closed-form nonvanishing degrees of Sigma^(a,b) S on Gr(2, 8)."""
    degrees = set()
    if 0 >= a >= b:
        degrees.add(0)
    if a >= 7 and 1 >= b:
        degrees.add(6)
    if a >= b >= 8:
        degrees.add(12)
    return degrees


def bott_line_conditions(bound: int = 15) -> dict[tuple[int, int], bool]:
    """Compare the Bott engine with the closed-form conditions for every
    ``bound >= a >= b >= -bound`` on Gr(2, 8). Maps (a, b) to pass/fail."""
    report = {}
    for a in range(-bound, bound + 1):
        for b in range(-bound, a + 1):
            res = bott(2, 8, beta=(a, b))
            got = set() if res.vanishing else {res.q}
            report[(a, b)] = got == expected_line_degrees(a, b)
    return report


def serre_dual(b: GrassmannianBundle) -> GrassmannianBundle:
    """The bundle E* (x) omega_G, where omega_G = det(S)^N (the sub-weight shifted by N)."""
    N = b.ambient_dim
    alpha = tuple(-x for x in reversed(b.quotient_weight))
    beta = tuple(N - x for x in reversed(b.sub_weight))
    return GrassmannianBundle(N, b.sub_rank, alpha, beta)
